//! Canonical labelling, automorphism generators and orbit machinery.
//!
//! The labelling is computed by refinement-guided backtracking over
//! individualizations of a target cell, pruning branches by discovered
//! automorphisms and by comparing refinement invariants against the current
//! best leaf. The canonical form is the leaf minimizing the pair
//! (invariant path, adjacency encoding); any such deterministic rule is a
//! sound choice for construction-path generation, and this one is easy to
//! state and test.

use crate::graph::{Graph, VertexSet};
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

/// Errors from partition validation and group computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("partition is not a cover of 0..{order} by disjoint nonempty cells")]
    BadPartition { order: usize },
    #[error("permutation length {got} does not match vertex count {want}")]
    BadPermutation { want: usize, got: usize },
    #[error("automorphism group order exceeds u128")]
    OrderOverflow,
    #[error("a generator maps {0} outside the given collection")]
    OrbitEscapes(VertexSet),
}

/// An ordered partition of the vertex set; cells map to consecutive
/// position ranges of the labelling, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<u16>>,
}

impl OrderedPartition {
    /// The single-cell partition.
    pub fn unit(n: usize) -> Self {
        OrderedPartition {
            cells: vec![(0..n as u16).collect()],
        }
    }

    /// Validates disjointness, coverage and nonemptiness of the given cells.
    pub fn from_cells(n: usize, cells: Vec<Vec<u16>>) -> Result<Self, CanonError> {
        let mut seen = vec![false; n];
        let mut total = 0usize;
        for cell in &cells {
            if cell.is_empty() {
                return Err(CanonError::BadPartition { order: n });
            }
            for &v in cell {
                if v as usize >= n || seen[v as usize] {
                    return Err(CanonError::BadPartition { order: n });
                }
                seen[v as usize] = true;
                total += 1;
            }
        }
        if total != n {
            return Err(CanonError::BadPartition { order: n });
        }
        Ok(OrderedPartition { cells })
    }

    /// Partition with the maximum-degree vertices separated into the last
    /// cell, so they occupy the last labelling positions.
    pub fn max_degree_last(g: &Graph) -> Self {
        let n = g.order();
        let degs = g.degrees();
        let dmax = *degs.iter().max().unwrap();
        let top: Vec<u16> = (0..n as u16).filter(|&v| degs[v as usize] == dmax).collect();
        let rest: Vec<u16> = (0..n as u16).filter(|&v| degs[v as usize] != dmax).collect();
        if rest.is_empty() {
            OrderedPartition { cells: vec![top] }
        } else {
            OrderedPartition { cells: vec![rest, top] }
        }
    }

    pub fn cells(&self) -> &[Vec<u16>] {
        &self.cells
    }
}

/// Output of [`canonical`]: the canonical labelling (vertex to position),
/// the canonical encoding of the relabelled graph, and generators of the
/// automorphism group respecting the initial partition.
#[derive(Debug, Clone)]
pub struct CanonicalResult {
    pub labeling: Vec<u16>,
    pub canon_bytes: Vec<u8>,
    pub aut_gens: Vec<Vec<u16>>,
}

/// Relabels `g` by `perm` (vertex `v` becomes `perm[v]`).
pub fn relabel(g: &Graph, perm: &[u16]) -> Graph {
    let n = g.order();
    assert_eq!(perm.len(), n);
    let mut out = Graph::empty(n);
    for (u, v) in g.edges() {
        out.set_edge(perm[u] as usize, perm[v] as usize);
    }
    out
}

/// Encodes the adjacency of `g` relabelled so that position `i` holds
/// vertex `order[i]`: two bytes of order then the upper triangle row-major,
/// most significant bit first.
fn encode_with_order(g: &Graph, order: &[u16]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(2 + (n * (n - 1) / 2).div_ceil(8));
    out.push((n >> 8) as u8);
    out.push((n & 0xff) as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc <<= 1;
            if g.has_edge(order[i] as usize, order[j] as usize) {
                acc |= 1;
            }
            filled += 1;
            if filled == 8 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (8 - filled));
    }
    out
}

#[inline(always)]
fn count_in(row: &[u64], mask: &[u64]) -> u32 {
    let mut c = 0;
    for (r, m) in row.iter().zip(mask) {
        c += (r & m).count_ones();
    }
    c
}

fn fnv1a(acc: u64, x: u64) -> u64 {
    let mut h = acc;
    for b in x.to_le_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Equitable refinement: repeatedly splits cells by neighbour counts into
/// every current cell until stable. Split fragments replace their parent in
/// place, ordered by neighbour count ascending.
pub fn refine(g: &Graph, p: &OrderedPartition) -> OrderedPartition {
    let mut cells = p.cells.clone();
    refine_cells(g, &mut cells);
    OrderedPartition { cells }
}

fn refine_cells(g: &Graph, cells: &mut Vec<Vec<u16>>) {
    let w = g.word_count();
    loop {
        // splitter masks snapshot for this round
        let splitters: Vec<Vec<u64>> = cells
            .iter()
            .map(|cell| {
                let mut m = vec![0u64; w];
                for &v in cell {
                    m[v as usize / 64] |= 1u64 << (v as usize % 64);
                }
                m
            })
            .collect();
        let mut changed = false;
        for mask in &splitters {
            let mut ci = 0;
            while ci < cells.len() {
                if cells[ci].len() > 1 {
                    let counts: Vec<u32> = cells[ci]
                        .iter()
                        .map(|&v| count_in(g.row(v as usize), mask))
                        .collect();
                    if counts.iter().any(|&c| c != counts[0]) {
                        let mut keyed: Vec<(u32, u16)> =
                            counts.into_iter().zip(cells[ci].iter().copied()).collect();
                        keyed.sort_by_key(|&(c, _)| c);
                        let mut fragments: Vec<Vec<u16>> = Vec::new();
                        for (c, v) in keyed {
                            match fragments.last_mut() {
                                Some(f) if count_of_last(g, f, mask) == c => f.push(v),
                                _ => fragments.push(vec![v]),
                            }
                        }
                        let extra = fragments.len() - 1;
                        cells.splice(ci..=ci, fragments);
                        ci += extra;
                        changed = true;
                    }
                }
                ci += 1;
            }
        }
        if !changed {
            return;
        }
    }
}

fn count_of_last(g: &Graph, fragment: &[u16], mask: &[u64]) -> u32 {
    count_in(g.row(*fragment.last().unwrap() as usize), mask)
}

struct Leaf {
    inv_path: Vec<u64>,
    enc: Vec<u8>,
    order: Vec<u16>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Vec<u16>>,
}

impl Search<'_> {
    fn leaf_order(cells: &[Vec<u16>]) -> Vec<u16> {
        cells.iter().map(|c| c[0]).collect()
    }

    /// γ = μ⁻¹∘λ for two equal encodings, i.e. γ maps each vertex to the
    /// vertex holding the same position in the other leaf.
    fn derive_automorphism(reference: &Leaf, order: &[u16]) -> Vec<u16> {
        let n = order.len();
        let mut gamma = vec![0u16; n];
        for pos in 0..n {
            gamma[order[pos] as usize] = reference.order[pos];
        }
        gamma
    }

    fn add_generator(&mut self, gamma: Vec<u16>) {
        if gamma.iter().enumerate().all(|(i, &v)| i == v as usize) {
            return;
        }
        debug_assert_eq!(relabel(self.g, &gamma), self.g.clone(), "bad automorphism");
        if !self.gens.contains(&gamma) {
            self.gens.push(gamma);
        }
    }

    fn handle_leaf(&mut self, cells: &[Vec<u16>], inv_path: &[u64]) {
        let order = Self::leaf_order(cells);
        let enc = encode_with_order(self.g, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf { inv_path: inv_path.to_vec(), enc, order };
            self.best = Some(Leaf {
                inv_path: leaf.inv_path.clone(),
                enc: leaf.enc.clone(),
                order: leaf.order.clone(),
            });
            self.first = Some(leaf);
            return;
        };
        if enc == first.enc {
            if order != first.order {
                let gamma = Self::derive_automorphism(first, &order);
                self.add_generator(gamma);
            }
            return;
        }
        let best = self.best.as_ref().unwrap();
        match (inv_path, enc.as_slice()).cmp(&(best.inv_path.as_slice(), best.enc.as_slice())) {
            Ordering::Less => {
                self.best = Some(Leaf { inv_path: inv_path.to_vec(), enc, order });
            }
            Ordering::Equal => {
                let gamma = Self::derive_automorphism(self.best.as_ref().unwrap(), &order);
                self.add_generator(gamma);
            }
            Ordering::Greater => {}
        }
    }

    /// Orbit representative map for the subgroup of known generators fixing
    /// every vertex in `fixed` pointwise.
    fn orbit_ids_fixing(&self, fixed: &[u16], n: usize) -> Vec<u16> {
        let mut id: Vec<u16> = (0..n as u16).collect();
        fn find(id: &mut [u16], x: u16) -> u16 {
            let mut r = x;
            while id[r as usize] != r {
                r = id[r as usize];
            }
            let mut c = x;
            while id[c as usize] != r {
                let next = id[c as usize];
                id[c as usize] = r;
                c = next;
            }
            r
        }
        for gen in &self.gens {
            if fixed.iter().any(|&v| gen[v as usize] != v) {
                continue;
            }
            for v in 0..n as u16 {
                let a = find(&mut id, v);
                let b = find(&mut id, gen[v as usize]);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    id[hi as usize] = lo;
                }
            }
        }
        for v in 0..n as u16 {
            find(&mut id, v);
        }
        id
    }

    fn explore(
        &mut self,
        mut cells: Vec<Vec<u16>>,
        inv_path: &mut Vec<u64>,
        path: &mut Vec<u16>,
        first_eq: bool,
        best_cmp: Ordering,
    ) {
        refine_cells(self.g, &mut cells);
        let inv = cells
            .iter()
            .fold(fnv1a(0xcbf29ce484222325, cells.len() as u64), |h, c| {
                fnv1a(h, c.len() as u64)
            });
        inv_path.push(inv);
        let depth = inv_path.len() - 1;

        // viability against the first path (automorphism anchor) and the
        // current best (canonicity): prune only when both fail
        let first_eq = first_eq
            && match &self.first {
                None => true,
                Some(f) => depth < f.inv_path.len() && f.inv_path[depth] == inv,
            };
        let best_cmp = match (best_cmp, &self.best) {
            (Ordering::Equal, Some(b)) => {
                if depth >= b.inv_path.len() {
                    Ordering::Greater
                } else {
                    inv.cmp(&b.inv_path[depth])
                }
            }
            (c, _) => c,
        };
        if !first_eq && best_cmp == Ordering::Greater {
            inv_path.pop();
            return;
        }

        match cells.iter().position(|c| c.len() > 1) {
            None => self.handle_leaf(&cells, inv_path),
            Some(_) => {
                let smallest = cells.iter().map(|c| c.len()).filter(|&l| l > 1).min().unwrap();
                let t = cells.iter().position(|c| c.len() == smallest).unwrap();
                let mut candidates = cells[t].clone();
                candidates.sort_unstable();
                let n = self.g.order();
                let mut done: Vec<u16> = Vec::new();
                for &w in &candidates {
                    if !done.is_empty() {
                        let ids = self.orbit_ids_fixing(path, n);
                        if done.iter().any(|&d| ids[d as usize] == ids[w as usize]) {
                            continue;
                        }
                    }
                    let mut child = cells.clone();
                    let rest: Vec<u16> =
                        cells[t].iter().copied().filter(|&v| v != w).collect();
                    child.splice(t..=t, [vec![w], rest]);
                    path.push(w);
                    self.explore(child, inv_path, path, first_eq, best_cmp);
                    path.pop();
                    done.push(w);
                }
            }
        }
        inv_path.pop();
    }
}

/// Canonical labelling of `g` respecting the ordered partition `p`.
///
/// For any permutation preserving the cell structure of `p`, the relabelled
/// graph yields identical `canon_bytes`. The returned generators generate
/// the full group of automorphisms preserving each cell of `p`.
pub fn canonical(g: &Graph, p: &OrderedPartition) -> CanonicalResult {
    let n = g.order();
    let mut search = Search { g, first: None, best: None, gens: Vec::new() };
    let mut inv_path = Vec::new();
    let mut path = Vec::new();
    search.explore(p.cells.clone(), &mut inv_path, &mut path, true, Ordering::Equal);
    let best = search.best.expect("search must produce a leaf");
    let mut labeling = vec![0u16; n];
    for (pos, &v) in best.order.iter().enumerate() {
        labeling[v as usize] = pos as u16;
    }
    CanonicalResult { labeling, canon_bytes: best.enc, aut_gens: search.gens }
}

/// Canonical encoding with the unit partition; the isomorphism identity
/// used for deduplication everywhere.
pub fn canon_bytes(g: &Graph) -> Vec<u8> {
    canonical(g, &OrderedPartition::unit(g.order())).canon_bytes
}

fn compose(outer: &[u16], inner: &[u16]) -> Vec<u16> {
    inner.iter().map(|&v| outer[v as usize]).collect()
}

fn invert(perm: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        inv[v as usize] = i as u16;
    }
    inv
}

/// Order of the permutation group generated by `gens`, by a stabilizer
/// chain with explicit Schreier generators.
pub fn aut_order(gens: &[Vec<u16>], n: usize) -> Result<u128, CanonError> {
    for g in gens {
        if g.len() != n {
            return Err(CanonError::BadPermutation { want: n, got: g.len() });
        }
    }
    fn rec(gens: Vec<Vec<u16>>, n: usize) -> Result<u128, CanonError> {
        let Some(b) = (0..n).find(|&p| gens.iter().any(|g| g[p] as usize != p)) else {
            return Ok(1);
        };
        let identity: Vec<u16> = (0..n as u16).collect();
        let mut transversal: HashMap<u16, Vec<u16>> = HashMap::new();
        transversal.insert(b as u16, identity);
        let mut queue = VecDeque::from([b as u16]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g[x as usize];
                if !transversal.contains_key(&y) {
                    let rep = compose(g, &transversal[&x]);
                    transversal.insert(y, rep);
                    queue.push_back(y);
                }
            }
        }
        let orbit_len = transversal.len() as u128;
        let mut stab: HashSet<Vec<u16>> = HashSet::new();
        for rx in transversal.values() {
            for g in &gens {
                let gx = compose(g, rx);
                let y = gx[b];
                let s = compose(&invert(&transversal[&y]), &gx);
                if s.iter().enumerate().any(|(i, &v)| i != v as usize) {
                    stab.insert(s);
                }
            }
        }
        let sub = rec(stab.into_iter().collect(), n)?;
        orbit_len.checked_mul(sub).ok_or(CanonError::OrderOverflow)
    }
    rec(gens.to_vec(), n)
}

/// Orbits of `0..n` under the group generated by `gens`, as cells sorted
/// ascending, listed by their least vertex.
pub fn vertex_orbits(gens: &[Vec<u16>], n: usize) -> Vec<Vec<u16>> {
    let ids = orbit_ids(gens, n);
    let mut by_rep: HashMap<u16, Vec<u16>> = HashMap::new();
    for v in 0..n as u16 {
        by_rep.entry(ids[v as usize]).or_default().push(v);
    }
    let mut cells: Vec<Vec<u16>> = by_rep.into_values().collect();
    cells.sort_by_key(|c| c[0]);
    cells
}

/// Least-vertex orbit representative for each vertex.
pub fn orbit_ids(gens: &[Vec<u16>], n: usize) -> Vec<u16> {
    let mut id: Vec<u16> = (0..n as u16).collect();
    fn find(id: &mut [u16], x: u16) -> u16 {
        let mut r = x;
        while id[r as usize] != r {
            r = id[r as usize];
        }
        let mut c = x;
        while id[c as usize] != r {
            let next = id[c as usize];
            id[c as usize] = r;
            c = next;
        }
        r
    }
    for gen in gens {
        for v in 0..n as u16 {
            let a = find(&mut id, v);
            let b = find(&mut id, gen[v as usize]);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                id[hi as usize] = lo;
            }
        }
    }
    for v in 0..n as u16 {
        find(&mut id, v);
    }
    id
}

fn apply_to_set(gen: &[u16], set: VertexSet) -> VertexSet {
    let mut out = 0u64;
    for v in set.iter() {
        out |= 1u64 << gen[v];
    }
    VertexSet(out)
}

/// One representative (the least bitmask) per orbit of the induced action
/// of the group on the given collection of subsets. The collection must be
/// a union of orbits; a generator mapping a member outside it is an error.
pub fn subset_orbit_reps(
    gens: &[Vec<u16>],
    sets: &[VertexSet],
) -> Result<Vec<VertexSet>, CanonError> {
    let mut sorted: Vec<VertexSet> = sets.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let member = |s: VertexSet| sorted.binary_search(&s).is_ok();
    let mut visited: HashSet<VertexSet> = HashSet::with_capacity(sorted.len());
    let mut reps = Vec::new();
    for &start in &sorted {
        if visited.contains(&start) {
            continue;
        }
        reps.push(start);
        let mut queue = VecDeque::from([start]);
        visited.insert(start);
        while let Some(s) = queue.pop_front() {
            for gen in gens {
                let t = apply_to_set(gen, s);
                if !visited.contains(&t) {
                    if !member(t) {
                        return Err(CanonError::OrbitEscapes(t));
                    }
                    visited.insert(t);
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn star(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn random_perm(rng: &mut StdRng, n: usize) -> Vec<u16> {
        let mut p: Vec<u16> = (0..n as u16).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn refine_splits_star_by_degree() {
        let g = star(4);
        let r = refine(&g, &OrderedPartition::unit(4));
        // leaves (degree 1) come before the centre (degree 3)
        assert_eq!(r.cells(), &[vec![1, 2, 3], vec![0]]);
    }

    #[test]
    fn refine_fixes_regular_graphs() {
        for g in [Graph::cycle(5), Graph::complete(4), Graph::empty(6)] {
            let n = g.order();
            assert_eq!(refine(&g, &OrderedPartition::unit(n)), OrderedPartition::unit(n));
        }
    }

    #[test]
    fn refine_p4_ends_and_middles() {
        let g = Graph::path(4);
        let r = refine(&g, &OrderedPartition::unit(4));
        assert_eq!(r.cells(), &[vec![0, 3], vec![1, 2]]);
        // stable under further refinement
        assert_eq!(refine(&g, &r), r);
    }

    #[test]
    fn refine_output_is_equitable() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..200 {
            let n = rng.random_range(2..=12);
            let g = random_graph(&mut rng, n, 0.4);
            let r = refine(&g, &OrderedPartition::unit(n));
            for cell in r.cells() {
                for other in r.cells() {
                    let mask = VertexSet::from_vertices(other.iter().map(|&v| v as usize));
                    let c0 = (g.row64(cell[0] as usize) & mask.0).count_ones();
                    for &v in cell {
                        assert_eq!((g.row64(v as usize) & mask.0).count_ones(), c0);
                    }
                }
            }
        }
    }

    #[test]
    fn canon_invariant_under_relabelling() {
        let mut rng = StdRng::seed_from_u64(22);
        let c5 = Graph::cycle(5);
        let reference = canon_bytes(&c5);
        for _ in 0..100 {
            let p = random_perm(&mut rng, 5);
            assert_eq!(canon_bytes(&relabel(&c5, &p)), reference);
        }
    }

    #[test]
    fn canon_invariant_random_graphs() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..1000 {
            let n = rng.random_range(1..=10);
            let density = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, density);
            let p = random_perm(&mut rng, n);
            assert_eq!(canon_bytes(&g), canon_bytes(&relabel(&g, &p)));
        }
    }

    #[test]
    fn canon_distinguishes_p4_from_star() {
        assert_ne!(canon_bytes(&Graph::path(4)), canon_bytes(&star(4)));
    }

    #[test]
    fn canon_labeling_reproduces_bytes() {
        let mut rng = StdRng::seed_from_u64(24);
        for _ in 0..200 {
            let n = rng.random_range(1..=10);
            let g = random_graph(&mut rng, n, 0.5);
            let res = canonical(&g, &OrderedPartition::unit(n));
            let relab = relabel(&g, &res.labeling);
            let identity: Vec<u16> = (0..n as u16).collect();
            assert_eq!(encode_with_order(&relab, &identity), res.canon_bytes);
        }
    }

    #[test]
    fn canon_classes_on_four_vertices() {
        // all 64 labelled graphs on 4 vertices fall into 11 classes
        let mut seen = HashSet::new();
        for mask in 0u32..64 {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            seen.insert(canon_bytes(&Graph::from_edges(4, &edges).unwrap()));
        }
        assert_eq!(seen.len(), 11);
    }

    #[test]
    fn generators_are_automorphisms() {
        let mut rng = StdRng::seed_from_u64(25);
        for _ in 0..200 {
            let n = rng.random_range(2..=10);
            let g = random_graph(&mut rng, n, 0.5);
            let res = canonical(&g, &OrderedPartition::unit(n));
            for gen in &res.aut_gens {
                assert_eq!(relabel(&g, gen), g);
            }
        }
    }

    #[test]
    fn aut_orders_of_known_graphs() {
        let cases: Vec<(Graph, u128)> = vec![
            (Graph::complete(4), 24),
            (Graph::path(4), 2),
            (Graph::cycle(5), 10),
            (star(4), 6),
            (Graph::empty(5), 120),
        ];
        for (g, want) in cases {
            let res = canonical(&g, &OrderedPartition::unit(g.order()));
            assert_eq!(aut_order(&res.aut_gens, g.order()).unwrap(), want);
        }
    }

    #[test]
    fn aut_order_matches_brute_force_small() {
        let mut rng = StdRng::seed_from_u64(26);
        for _ in 0..60 {
            let n = rng.random_range(2..=6);
            let g = random_graph(&mut rng, n, 0.5);
            let res = canonical(&g, &OrderedPartition::unit(n));
            let fast = aut_order(&res.aut_gens, n).unwrap();
            let mut brute = 0u128;
            let mut perm: Vec<u16> = (0..n as u16).collect();
            loop {
                if relabel(&g, &perm) == g {
                    brute += 1;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            assert_eq!(fast, brute, "graph {:?}", g);
        }
    }

    fn next_permutation(p: &mut [u16]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn orbits_of_star_and_transitive_graphs() {
        let res = canonical(&star(4), &OrderedPartition::unit(4));
        let orbits = vertex_orbits(&res.aut_gens, 4);
        assert_eq!(orbits, vec![vec![0], vec![1, 2, 3]]);

        let g = Graph::cycle(9).lex_product(&Graph::complete(2)).unwrap();
        let res = canonical(&g, &OrderedPartition::unit(18));
        assert_eq!(vertex_orbits(&res.aut_gens, 18).len(), 1);

        let res = canonical(&Graph::empty(6), &OrderedPartition::unit(6));
        assert_eq!(vertex_orbits(&res.aut_gens, 6).len(), 1);
    }

    #[test]
    fn subset_reps_under_swap() {
        // K2 swap generator identifies {0} and {1}
        let gens = vec![vec![1u16, 0]];
        let sets = [VertexSet(0b00), VertexSet(0b01), VertexSet(0b10)];
        let reps = subset_orbit_reps(&gens, &sets).unwrap();
        assert_eq!(reps, vec![VertexSet(0b00), VertexSet(0b01)]);
    }

    #[test]
    fn subset_reps_trivial_group() {
        let sets = [VertexSet(0b01), VertexSet(0b10), VertexSet(0b11)];
        let reps = subset_orbit_reps(&[], &sets).unwrap();
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn subset_reps_c4_singletons() {
        let g = Graph::cycle(4);
        let res = canonical(&g, &OrderedPartition::unit(4));
        let sets: Vec<VertexSet> = (0..4).map(VertexSet::single).collect();
        let reps = subset_orbit_reps(&res.aut_gens, &sets).unwrap();
        assert_eq!(reps, vec![VertexSet(0b0001)]);
    }

    #[test]
    fn subset_reps_escape_is_error() {
        let gens = vec![vec![1u16, 0]];
        let sets = [VertexSet(0b01)];
        assert_eq!(
            subset_orbit_reps(&gens, &sets),
            Err(CanonError::OrbitEscapes(VertexSet(0b10)))
        );
    }

    #[test]
    fn respects_initial_partition() {
        // fixing one end of P4 breaks the flip symmetry
        let g = Graph::path(4);
        let p = OrderedPartition::from_cells(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        let res = canonical(&g, &p);
        assert!(res.aut_gens.is_empty());
        // and the cell {0} stays in the first position
        assert_eq!(res.labeling[0], 0);
    }

    #[test]
    fn max_degree_last_places_max_degree_at_end() {
        let mut rng = StdRng::seed_from_u64(27);
        for _ in 0..200 {
            let n = rng.random_range(2..=10);
            let g = random_graph(&mut rng, n, 0.5);
            let p = OrderedPartition::max_degree_last(&g);
            let res = canonical(&g, &p);
            let dmax = g.max_degree();
            let last = res.labeling.iter().position(|&pos| pos as usize == n - 1).unwrap();
            assert_eq!(g.degree(last), dmax);
        }
    }

    #[test]
    fn max_degree_partition_is_isomorphism_invariant() {
        let mut rng = StdRng::seed_from_u64(28);
        for _ in 0..300 {
            let n = rng.random_range(2..=9);
            let g = random_graph(&mut rng, n, 0.5);
            let perm = random_perm(&mut rng, n);
            let h = relabel(&g, &perm);
            let a = canonical(&g, &OrderedPartition::max_degree_last(&g)).canon_bytes;
            let b = canonical(&h, &OrderedPartition::max_degree_last(&h)).canon_bytes;
            assert_eq!(a, b);
        }
    }
}
