//! Frontier heuristics for discovering large family members when complete
//! enumeration is out of reach: back-extension of vertex-deleted
//! subgraphs, edge perturbations including degree-preserving switches, and
//! a hill-climbing orchestration over canonically-deduplicated pools.

use crate::canon::canon_bytes;
use crate::graph::{Graph, GraphError, VertexSet};
use crate::regcheck::{extension_sets, in_req, in_rge, Mode, OracleError};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

/// Default member cap of a pool; oldest members are evicted beyond it.
pub const DEFAULT_POOL_CAP: usize = 100_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("graph fails the membership oracle for this pool")]
    NotInFamily,
    #[error("pool expects order {want}, graph has {got}")]
    WrongOrder { want: usize, got: usize },
    #[error("no applicable move")]
    NoApplicableMove,
    #[error("seed pool is empty")]
    EmptySeeds,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn passes(g: &Graph, k: usize, mode: Mode) -> bool {
    match mode {
        Mode::Exact => in_req(g, k),
        Mode::AtLeast => in_rge(g, k),
    }
}

/// A set of family members of one common order, keyed and deduplicated by
/// canonical form. Every insertion re-runs the full membership oracle.
#[derive(Debug, Clone)]
pub struct Pool {
    pub k: usize,
    pub mode: Mode,
    order: usize,
    cap: usize,
    members: BTreeMap<Vec<u8>, Graph>,
    insertion_order: VecDeque<Vec<u8>>,
    evicted: u64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PoolManifest {
    pub k: usize,
    pub mode: String,
    pub order: usize,
    pub count: usize,
    pub seed: u64,
}

impl Pool {
    pub fn new(k: usize, mode: Mode, order: usize) -> Self {
        Pool {
            k,
            mode,
            order,
            cap: DEFAULT_POOL_CAP,
            members: BTreeMap::new(),
            insertion_order: VecDeque::new(),
            evicted: 0,
        }
    }

    /// The single-vertex seed pool.
    pub fn seed_k1(k: usize, mode: Mode) -> Self {
        let mut pool = Pool::new(k, mode, 1);
        pool.insert(Graph::empty(1)).expect("K1 is in every family");
        pool
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members evicted so far under the cap.
    pub fn evicted(&self) -> u64 {
        self.evicted
    }

    /// Validates order and membership, then inserts if the isomorphism
    /// class is new. Returns whether the pool grew.
    pub fn insert(&mut self, g: Graph) -> Result<bool, SearchError> {
        if g.order() != self.order {
            return Err(SearchError::WrongOrder { want: self.order, got: g.order() });
        }
        if !passes(&g, self.k, self.mode) {
            return Err(SearchError::NotInFamily);
        }
        let key = canon_bytes(&g);
        if self.members.contains_key(&key) {
            return Ok(false);
        }
        self.members.insert(key.clone(), g);
        self.insertion_order.push_back(key);
        while self.members.len() > self.cap {
            if let Some(old) = self.insertion_order.pop_front() {
                self.members.remove(&old);
                self.evicted += 1;
            }
        }
        Ok(true)
    }

    /// Members in canonical-key order.
    pub fn iter(&self) -> impl Iterator<Item = &Graph> {
        self.members.values()
    }

    pub fn manifest(&self, seed: u64) -> PoolManifest {
        PoolManifest {
            k: self.k,
            mode: self.mode.to_string(),
            order: self.order,
            count: self.len(),
            seed,
        }
    }

    /// One graph6 line per member, in canonical-key order.
    pub fn to_g6_lines(&self) -> String {
        let mut out = String::new();
        for g in self.iter() {
            out.push_str(&crate::graph::g6_encode(g));
            out.push('\n');
        }
        out
    }
}

/// Deletes each vertex in turn (depth 1) and re-extends the remainder in
/// every admissible way, returning all order-n members found, the input
/// among them. Deeper deletions are sampled: `samples_per_level` random
/// kept-subsets per level, re-extended exhaustively.
pub fn back_extend(
    g: &Graph,
    k: usize,
    mode: Mode,
    depth: u32,
    samples_per_level: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Graph>, SearchError> {
    if !passes(g, k, mode) {
        return Err(SearchError::NotInFamily);
    }
    let n = g.order();
    let depth = (depth.max(1) as usize).min(n - 1);
    let mut found: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    found.insert(canon_bytes(g), g.clone());
    let bases: Vec<Graph> = if depth == 1 {
        (0..n).map(|v| g.delete_vertex(v)).collect::<Result<_, _>>()?
    } else {
        let keep_size = n - depth;
        (0..samples_per_level)
            .map(|_| {
                let mut keep = VertexSet::EMPTY;
                while keep.len() < keep_size {
                    keep.insert(rng.random_range(0..n));
                }
                g.induced(keep)
            })
            .collect::<Result<_, _>>()?
    };
    for base in bases {
        extend_to_order(&base, n, k, mode, &mut found)?;
    }
    Ok(found.into_values().collect())
}

fn extend_to_order(
    g: &Graph,
    target: usize,
    k: usize,
    mode: Mode,
    found: &mut BTreeMap<Vec<u8>, Graph>,
) -> Result<(), SearchError> {
    if g.order() == target {
        found.entry(canon_bytes(g)).or_insert_with(|| g.clone());
        return Ok(());
    }
    let front = extension_sets(g, None, k, mode)?;
    let mut seen_children: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for u in front.sets {
        let child = g.extend_with(u);
        seen_children.entry(canon_bytes(&child)).or_insert(child);
    }
    for child in seen_children.values() {
        extend_to_order(child, target, k, mode, found)?;
    }
    Ok(())
}

/// The perturbation move types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Insert a random non-edge.
    Add,
    /// Delete a random edge.
    Remove,
    /// Slide one endpoint of an edge to a new neighbour.
    MoveEdge,
    /// Degree-preserving 2-switch: uv, xy become ux, vy.
    Switch,
}

/// Applies one randomly chosen applicable move and returns the result only
/// if it passes the membership oracle. `Ok(None)` means the move fired but
/// produced a graph outside the family.
pub fn perturb(
    g: &Graph,
    k: usize,
    mode: Mode,
    moves: &[Move],
    rng: &mut ChaCha8Rng,
) -> Result<Option<Graph>, SearchError> {
    let n = g.order();
    let mut applicable: Vec<(Move, usize)> = Vec::new();
    let edges = g.edges();
    let non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let slides = edge_slides(g, &edges);
    let switches = edge_switches(g, &edges);
    for &m in moves {
        let count = match m {
            Move::Add => non_edges.len(),
            Move::Remove => edges.len(),
            Move::MoveEdge => slides.len(),
            Move::Switch => switches.len(),
        };
        if count > 0 {
            applicable.push((m, count));
        }
    }
    if applicable.is_empty() {
        return Err(SearchError::NoApplicableMove);
    }
    let (mv, count) = applicable[rng.random_range(0..applicable.len())];
    let pick = rng.random_range(0..count);
    let mut out = g.clone();
    match mv {
        Move::Add => {
            let (u, v) = non_edges[pick];
            out.set_edge(u, v);
        }
        Move::Remove => {
            let (u, v) = edges[pick];
            out.clear_edge(u, v);
        }
        Move::MoveEdge => {
            let (u, v, w) = slides[pick];
            out.clear_edge(u, v);
            out.set_edge(u, w);
        }
        Move::Switch => {
            let (u, v, x, y) = switches[pick];
            out.clear_edge(u, v);
            out.clear_edge(x, y);
            out.set_edge(u, x);
            out.set_edge(v, y);
        }
    }
    Ok(passes(&out, k, mode).then_some(out))
}

fn edge_slides(g: &Graph, edges: &[(usize, usize)]) -> Vec<(usize, usize, usize)> {
    let n = g.order();
    let mut out = Vec::new();
    for &(a, b) in edges {
        for (u, v) in [(a, b), (b, a)] {
            for w in 0..n {
                if w != u && w != v && !g.has_edge(u, w) {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}

fn edge_switches(g: &Graph, edges: &[(usize, usize)]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in edges.iter().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            for (u, v, x, y) in [(a, b, c, d), (a, b, d, c)] {
                if !g.has_edge(u, x) && !g.has_edge(v, y) {
                    out.push((u, v, x, y));
                }
            }
        }
    }
    out
}

/// True iff no one-vertex extension of `g` stays in the family.
pub fn certify_unextendable(g: &Graph, k: usize, mode: Mode) -> Result<bool, SearchError> {
    Ok(extension_sets(g, None, k, mode)?.sets.is_empty())
}

/// Hill search: repeatedly lift the pool one order by exhaustive extension
/// of its members; when stuck, enrich the pool by back-extension and
/// perturbation and retry. The budget counts candidate-graph evaluations;
/// the pool at the maximum order reached is returned.
pub fn hill_search(
    k: usize,
    mode: Mode,
    seeds: Pool,
    budget: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Pool, SearchError> {
    if seeds.is_empty() {
        return Err(SearchError::EmptySeeds);
    }
    if budget == 0 {
        return Ok(seeds);
    }
    let mut spent = 0u64;
    let mut current = seeds;
    loop {
        // extension phase
        let mut next = Pool::new(k, mode, current.order() + 1).with_cap(current.cap);
        'ext: for g in current.iter() {
            let front = extension_sets(g, None, k, mode)?;
            for u in front.sets {
                spent += 1;
                if spent > budget {
                    break 'ext;
                }
                let _ = next.insert(g.extend_with(u));
            }
        }
        if !next.is_empty() {
            current = next;
            if spent > budget {
                return Ok(current);
            }
            continue;
        }
        if spent > budget {
            return Ok(current);
        }
        // enrichment phase on the stuck order
        let before = current.len();
        let members: Vec<Graph> = current.iter().cloned().collect();
        for g in &members {
            if spent > budget {
                return Ok(current);
            }
            if current.order() >= 2 {
                for h in back_extend(g, k, mode, 1, 0, rng)? {
                    spent += 1;
                    let _ = current.insert(h);
                    if spent > budget {
                        return Ok(current);
                    }
                }
            }
            for _ in 0..8 {
                spent += 1;
                match perturb(g, k, mode, &[Move::Add, Move::Remove, Move::MoveEdge, Move::Switch], rng) {
                    Ok(Some(h)) => {
                        let _ = current.insert(h);
                    }
                    Ok(None) => {}
                    Err(SearchError::NoApplicableMove) => break,
                    Err(e) => return Err(e),
                }
                if spent > budget {
                    return Ok(current);
                }
            }
        }
        if current.len() == before {
            // enrichment found nothing new: a fixed point
            return Ok(current);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genpath::{generate_level, GenOptions};
    use rand::SeedableRng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn back_extend_recovers_input() {
        let p3 = Graph::path(3);
        let out = back_extend(&p3, 3, Mode::Exact, 1, 0, &mut rng(1)).unwrap();
        let key = canon_bytes(&p3);
        assert!(out.iter().any(|g| canon_bytes(g) == key));
    }

    #[test]
    fn back_extend_stays_in_family_and_closes() {
        let (_, level6) = generate_level(4, Mode::Exact, 6, &GenOptions::default()).unwrap();
        assert_eq!(level6.len(), 12);
        let mut union: BTreeMap<Vec<u8>, ()> = BTreeMap::new();
        for g in &level6 {
            for h in back_extend(g, 4, Mode::Exact, 1, 0, &mut rng(2)).unwrap() {
                assert!(in_req(&h, 4));
                assert_eq!(h.order(), 6);
                union.insert(canon_bytes(&h), ());
            }
        }
        // the full level is closed under back-extension
        assert_eq!(union.len(), 12);
    }

    #[test]
    fn back_extend_c5_finds_non_isomorphic_mates() {
        let out = back_extend(&Graph::cycle(5), 4, Mode::Exact, 1, 0, &mut rng(3)).unwrap();
        assert!(out.len() >= 2);
    }

    #[test]
    fn back_extend_depth2_sampled() {
        let (_, level6) = generate_level(4, Mode::Exact, 6, &GenOptions::default()).unwrap();
        let g = &level6[0];
        let out = back_extend(g, 4, Mode::Exact, 2, 4, &mut rng(4)).unwrap();
        for h in &out {
            assert_eq!(h.order(), 6);
            assert!(in_req(h, 4));
        }
        assert!(out.iter().any(|h| canon_bytes(h) == canon_bytes(g)));
    }

    #[test]
    fn switch_of_c6_example_is_isomorphic() {
        // removing 01 and 34, adding 03 and 14, gives a relabelled 6-cycle
        let mut g = Graph::cycle(6);
        g.clear_edge(0, 1);
        g.clear_edge(3, 4);
        g.set_edge(0, 3);
        g.set_edge(1, 4);
        assert_eq!(canon_bytes(&g), canon_bytes(&Graph::cycle(6)));
    }

    #[test]
    fn switch_preserves_degree_multiset() {
        let mut r = rng(5);
        let mut done = 0;
        while done < 1000 {
            let n = 8;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if r.random_bool(0.5) {
                        g.set_edge(u, v);
                    }
                }
            }
            // k above n: every graph passes, isolating the move mechanics
            match perturb(&g, n + 1, Mode::Exact, &[Move::Switch], &mut r) {
                Ok(Some(h)) => {
                    let mut a = g.degrees();
                    let mut b = h.degrees();
                    a.sort_unstable();
                    b.sort_unstable();
                    assert_eq!(a, b);
                    done += 1;
                }
                Ok(None) => unreachable!("oracle passes for k > n"),
                Err(SearchError::NoApplicableMove) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn add_on_complete_graph_has_no_move() {
        let g = Graph::complete(5);
        assert!(matches!(
            perturb(&g, 6, Mode::Exact, &[Move::Add], &mut rng(6)),
            Err(SearchError::NoApplicableMove)
        ));
    }

    #[test]
    fn certify_terminal_levels() {
        let (_, rge4_top) = generate_level(4, Mode::AtLeast, 6, &GenOptions::default()).unwrap();
        assert_eq!(rge4_top.len(), 10);
        for g in &rge4_top {
            assert!(certify_unextendable(g, 4, Mode::AtLeast).unwrap());
        }
        let (_, req4_top) = generate_level(4, Mode::Exact, 7, &GenOptions::default()).unwrap();
        assert_eq!(req4_top.len(), 2);
        for g in &req4_top {
            assert!(certify_unextendable(g, 4, Mode::Exact).unwrap());
        }
        assert!(!certify_unextendable(&Graph::empty(1), 3, Mode::Exact).unwrap());
    }

    #[test]
    fn hill_search_reaches_the_extremal_order() {
        let seeds = Pool::seed_k1(4, Mode::Exact);
        let pool = hill_search(4, Mode::Exact, seeds, 1_000_000, &mut rng(7)).unwrap();
        assert_eq!(pool.order(), 7);
        assert!(pool.len() <= 2 && !pool.is_empty());
        for g in pool.iter() {
            assert!(in_req(g, 4));
        }
    }

    #[test]
    fn hill_search_zero_budget_returns_seeds() {
        let seeds = Pool::seed_k1(4, Mode::Exact);
        let pool = hill_search(4, Mode::Exact, seeds, 0, &mut rng(8)).unwrap();
        assert_eq!(pool.order(), 1);
        assert_eq!(pool.len(), 1);
    }

    #[test]
    fn hill_search_small_budget_outputs_pass_oracle() {
        let seeds = Pool::seed_k1(5, Mode::AtLeast);
        let pool = hill_search(5, Mode::AtLeast, seeds, 500, &mut rng(9)).unwrap();
        assert!(!pool.is_empty());
        for g in pool.iter() {
            assert!(in_rge(g, 5));
        }
    }

    #[test]
    fn pool_validates_and_dedupes() {
        let mut pool = Pool::new(4, Mode::Exact, 5);
        assert!(pool.insert(Graph::cycle(5)).unwrap());
        assert!(!pool.insert(Graph::cycle(5)).unwrap());
        assert!(matches!(
            pool.insert(Graph::complete(4)),
            Err(SearchError::WrongOrder { .. })
        ));
        // K5 contains itself as an order-5 regular subgraph but is fine
        // for exact k=4; C4 + isolated vertex has an order-4 witness
        let c4_plus = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(pool.insert(c4_plus), Err(SearchError::NotInFamily)));
        assert_eq!(pool.len(), 1);
    }

    #[test]
    fn pool_cap_evicts_oldest() {
        let mut pool = Pool::new(9, Mode::Exact, 5).with_cap(2);
        pool.insert(Graph::cycle(5)).unwrap();
        pool.insert(Graph::complete(5)).unwrap();
        pool.insert(Graph::path(5)).unwrap();
        assert_eq!(pool.len(), 2);
        assert_eq!(pool.evicted(), 1);
    }

    #[test]
    fn manifest_roundtrip() {
        let pool = Pool::seed_k1(5, Mode::AtLeast);
        let m = pool.manifest(42);
        let json = serde_json::to_string(&m).unwrap();
        let back: PoolManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert_eq!(pool.to_g6_lines(), "@\n");
    }
}
