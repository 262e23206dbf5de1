//! Builders and verifiers for the explicit lower-bound constructions:
//! disjoint unions of cycle-clique lexicographic products avoiding an
//! induced regular subgraph of prime order, and the clique-cluster graphs
//! for composite orders qp and 4p.

use crate::graph::{Graph, GraphError, VertexSet};
use crate::regcheck::{find_induced_regular_budgeted, Mode, OracleError};
use std::collections::BTreeMap;
use thiserror::Error;

/// Default cap on visited partial subsets during verification.
pub const DEFAULT_VERIFY_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} below the family minimum {min}")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("need q < p, got q={q} p={p}")]
    QNotBelowP { q: u64, p: u64 },
    #[error("no special construction for p={0}, only 7 and 11")]
    UnsupportedSpecial(u64),
    #[error("construction has {order} vertices, beyond the supported {max}")]
    OrderExceedsMax { order: u64, max: usize },
    #[error("verification infeasible within budget ({visited} nodes visited)")]
    Infeasible { visited: u64 },
    #[error("census window is 4 <= r <= 9, 1 <= s <= 3; got r={r} s={s}")]
    OutsideWindow { r: usize, s: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// One disjoint component `copies x C_r[K_s]` of a product-family graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductComponent {
    pub cycle: usize,
    pub clique: usize,
    pub copies: usize,
}

impl ProductComponent {
    pub fn order(&self) -> u64 {
        (self.cycle * self.clique * self.copies) as u64
    }
}

/// Component inventory of the order-p avoiding graph, by residue of p
/// modulo 12, without materializing it. Valid for any prime p >= 5, even
/// when the full graph exceeds the buildable order.
pub fn gp_components(p: u64) -> Result<Vec<ProductComponent>, ConstructError> {
    if !is_prime(p) {
        return Err(ConstructError::NotPrime(p));
    }
    if p < 5 {
        return Err(ConstructError::PrimeTooSmall { p, min: 5 });
    }
    let t = (p / 12) as usize;
    let comps = match p % 12 {
        1 => vec![ProductComponent { cycle: 9, clique: 6 * t, copies: 3 * t }],
        5 => vec![ProductComponent { cycle: 9, clique: 6 * t + 2, copies: 3 * t + 1 }],
        7 => vec![
            ProductComponent { cycle: 5, clique: 6 * t + 3, copies: 1 },
            ProductComponent { cycle: 9, clique: 6 * t + 3, copies: 3 * t + 1 },
        ],
        11 => vec![
            ProductComponent { cycle: 4, clique: 6 * t + 5, copies: 1 },
            ProductComponent { cycle: 9, clique: 6 * t + 5, copies: 3 * t + 2 },
        ],
        _ => unreachable!("prime >= 5 is odd and not divisible by 3"),
    };
    Ok(comps)
}

/// Order of the graph from [`gp_components`] in closed form.
pub fn gp_order(p: u64) -> Result<u64, ConstructError> {
    gp_components(p)?;
    Ok(match p % 12 {
        1 | 5 => 9 * (p - 1) * (p - 1) / 8,
        7 => (p - 1) * (9 * p - 7) / 8,
        _ => (p - 1) * (9 * p - 11) / 8,
    })
}

/// Lower bound on the least order forcing an induced regular subgraph of
/// order p, witnessed by [`build_gp`].
pub fn gp_bound(p: u64) -> Result<u64, ConstructError> {
    Ok(gp_order(p)? + 1)
}

fn assemble(components: &[ProductComponent]) -> Result<Graph, ConstructError> {
    let order: u64 = components.iter().map(|c| c.order()).sum();
    if order as usize > crate::graph::MAX_ORDER {
        return Err(ConstructError::OrderExceedsMax {
            order,
            max: crate::graph::MAX_ORDER,
        });
    }
    let mut parts = Vec::new();
    for c in components {
        let block = Graph::cycle(c.cycle).lex_product(&Graph::complete(c.clique))?;
        for _ in 0..c.copies {
            parts.push(block.clone());
        }
    }
    Ok(Graph::disjoint_union(&parts)?)
}

/// The union of cycle-clique products with no induced regular subgraph of
/// order p, for prime p >= 5.
pub fn build_gp(p: u64) -> Result<Graph, ConstructError> {
    assemble(&gp_components(p)?)
}

/// The denser ad-hoc solutions known for p = 7 (three copies of C5[K3],
/// 45 vertices) and p = 11 (2 C7[K5] + C9[K5], 115 vertices).
pub fn build_special(p: u64) -> Result<Graph, ConstructError> {
    match p {
        7 => assemble(&[ProductComponent { cycle: 5, clique: 3, copies: 3 }]),
        11 => assemble(&[
            ProductComponent { cycle: 7, clique: 5, copies: 2 },
            ProductComponent { cycle: 9, clique: 5, copies: 1 },
        ]),
        other => Err(ConstructError::UnsupportedSpecial(other)),
    }
}

pub fn special_bound(p: u64) -> Result<u64, ConstructError> {
    Ok(match p {
        7 => 46,
        11 => 116,
        other => return Err(ConstructError::UnsupportedSpecial(other)),
    })
}

/// Lower bound witnessed by [`build_qp`]:
/// `p^2 + 2q^2 p - 4qp + 2 + (p-1) min(q-1, p-q)`.
pub fn qp_bound(q: u64, p: u64) -> Result<u64, ConstructError> {
    check_qp(q, p)?;
    let t = (q - 1).min(p - q);
    Ok(p * p + 2 * q * q * p - 4 * q * p + 2 + (p - 1) * t)
}

fn check_qp(q: u64, p: u64) -> Result<(), ConstructError> {
    if !is_prime(q) {
        return Err(ConstructError::NotPrime(q));
    }
    if !is_prime(p) {
        return Err(ConstructError::NotPrime(p));
    }
    if q >= p {
        return Err(ConstructError::QNotBelowP { q, p });
    }
    Ok(())
}

/// Clique-cluster graph with no induced regular subgraph of order qp, for
/// primes q < p: cliques B_1..B_{q-1} of order qp-1, A_1..A_{p-q} and
/// X_1..X_t of order p-1 (t = min(q-1, p-q)), Y_1..Y_{qp-p} of order q-1;
/// each B_i (i <= t) splits into C_i (order qp-p) and D_i, and X_i is
/// fully joined to C_i and A_i.
pub fn build_qp(q: u64, p: u64) -> Result<Graph, ConstructError> {
    check_qp(q, p)?;
    let order = qp_bound(q, p)? - 1;
    if order as usize > crate::graph::MAX_ORDER {
        return Err(ConstructError::OrderExceedsMax { order, max: crate::graph::MAX_ORDER });
    }
    let (q, p) = (q as usize, p as usize);
    let t = (q - 1).min(p - q);
    let mut g = Graph::empty(order as usize);
    let mut base = 0usize;
    let mut clique_at = |g: &mut Graph, size: usize| {
        let start = base;
        for u in start..start + size {
            for v in (u + 1)..start + size {
                g.set_edge(u, v);
            }
        }
        base += size;
        start
    };
    let b_starts: Vec<usize> = (0..q - 1).map(|_| clique_at(&mut g, q * p - 1)).collect();
    let a_starts: Vec<usize> = (0..p - q).map(|_| clique_at(&mut g, p - 1)).collect();
    let x_starts: Vec<usize> = (0..t).map(|_| clique_at(&mut g, p - 1)).collect();
    for _ in 0..q * p - p {
        clique_at(&mut g, q - 1);
    }
    debug_assert_eq!(base, order as usize);
    for i in 0..t {
        // C_i is the first qp-p vertices of B_i
        for x in x_starts[i]..x_starts[i] + (p - 1) {
            for c in b_starts[i]..b_starts[i] + (q * p - p) {
                g.set_edge(x, c);
            }
            for a in a_starts[i]..a_starts[i] + (p - 1) {
                g.set_edge(x, a);
            }
        }
    }
    Ok(g)
}

/// Lower bound witnessed by [`build_4p`]: `p^2 + 11p - 1`.
pub fn fourp_bound(p: u64) -> Result<u64, ConstructError> {
    check_4p(p)?;
    Ok(p * p + 11 * p - 1)
}

fn check_4p(p: u64) -> Result<(), ConstructError> {
    if !is_prime(p) {
        return Err(ConstructError::NotPrime(p));
    }
    if p < 7 {
        return Err(ConstructError::PrimeTooSmall { p, min: 7 });
    }
    Ok(())
}

/// Clique-cluster graph with no induced regular subgraph of order 4p, for
/// prime p >= 7: cliques A (4p-1), B_1, B_2 (2p-1), C_1..C_{p-4} (p-1),
/// D_1..D_p (3), X_1..X_3 (p-1) and 2p isolated vertices; X_1 is joined to
/// 3p vertices of A and all of C_1, X_2 to p vertices of B_1 and all of
/// C_2, X_3 to p vertices of B_2 and all of C_3. Joined subsets are taken
/// lowest-indexed; any choice is isomorphic.
pub fn build_4p(p: u64) -> Result<Graph, ConstructError> {
    check_4p(p)?;
    let order = fourp_bound(p)? - 1;
    if order as usize > crate::graph::MAX_ORDER {
        return Err(ConstructError::OrderExceedsMax { order, max: crate::graph::MAX_ORDER });
    }
    let p = p as usize;
    let mut g = Graph::empty(order as usize);
    let mut base = 0usize;
    let mut clique_at = |g: &mut Graph, size: usize| {
        let start = base;
        for u in start..start + size {
            for v in (u + 1)..start + size {
                g.set_edge(u, v);
            }
        }
        base += size;
        start
    };
    let a = clique_at(&mut g, 4 * p - 1);
    let b1 = clique_at(&mut g, 2 * p - 1);
    let b2 = clique_at(&mut g, 2 * p - 1);
    let c_starts: Vec<usize> = (0..p - 4).map(|_| clique_at(&mut g, p - 1)).collect();
    for _ in 0..p {
        clique_at(&mut g, 3);
    }
    let x_starts: Vec<usize> = (0..3).map(|_| clique_at(&mut g, p - 1)).collect();
    base += 2 * p; // isolated vertices
    debug_assert_eq!(base, order as usize);
    let joins = [(a, 3 * p, c_starts[0]), (b1, p, c_starts[1]), (b2, p, c_starts[2])];
    for (i, &(block, take, c)) in joins.iter().enumerate() {
        for x in x_starts[i]..x_starts[i] + (p - 1) {
            for v in block..block + take {
                g.set_edge(x, v);
            }
            for v in c..c + (p - 1) {
                g.set_edge(x, v);
            }
        }
    }
    Ok(g)
}

/// Census of the connected induced regular subgraphs of C_r[K_s].
///
/// Every entry must be a clique of order d+1 (0 <= d <= 2s-1) or a
/// non-clique of order r(d+1)/3 with r(d+1) divisible by 3 and
/// 2 <= d <= 3s-1; anything else lands in `counterexamples`.
#[derive(Debug, Clone)]
pub struct CycleCliqueCensus {
    pub r: usize,
    pub s: usize,
    /// (order, degree, is_clique) -> number of vertex subsets.
    pub census: BTreeMap<(usize, usize, bool), u64>,
    pub counterexamples: Vec<VertexSet>,
    pub subgraphs_seen: u64,
}

/// Exhaustively enumerates the connected induced regular subgraphs of
/// C_r[K_s] over the feasibility window 4 <= r <= 9, 1 <= s <= 3, and
/// classifies each one.
pub fn cycle_clique_census(r: usize, s: usize) -> Result<CycleCliqueCensus, ConstructError> {
    if !(4..=9).contains(&r) || !(1..=3).contains(&s) {
        return Err(ConstructError::OutsideWindow { r, s });
    }
    let g = Graph::cycle(r).lex_product(&Graph::complete(s))?;
    let n = g.order();
    let rows: Vec<u64> = (0..n).map(|v| g.row64(v)).collect();
    let mut out = CycleCliqueCensus {
        r,
        s,
        census: BTreeMap::new(),
        counterexamples: Vec::new(),
        subgraphs_seen: 0,
    };
    // each connected subset is enumerated once: rooted at its least vertex,
    // grown through the frontier with candidates banned after branching
    let mut degrees = vec![0u32; n];
    for root in 0..n {
        // root = least vertex of the subset, so only larger ones may join
        let allowed = VertexSet::full(n).0 & !((1u64 << root) - 1);
        degrees[root] = 0;
        grow(
            &rows,
            &mut out,
            &mut degrees,
            1u64 << root,
            rows[root] & allowed,
            allowed,
        );
    }
    Ok(out)
}

fn grow(
    rows: &[u64],
    out: &mut CycleCliqueCensus,
    degrees: &mut [u32],
    chosen: u64,
    frontier: u64,
    allowed: u64,
) {
    out.subgraphs_seen += 1;
    record_if_regular(out, chosen, degrees);
    // degree windows: abandon when no common final degree is attainable
    let reachable = allowed & !chosen;
    let mut lo = 0u32;
    let mut hi = u32::MAX;
    let mut m = chosen;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        lo = lo.max(degrees[v]);
        hi = hi.min(degrees[v] + (rows[v] & reachable).count_ones());
        if lo > hi {
            return;
        }
    }
    let mut banned = 0u64;
    let mut f = frontier;
    while f != 0 {
        let v = f.trailing_zeros() as usize;
        f &= f - 1;
        let bit = 1u64 << v;
        let next_allowed = allowed & !banned;
        degrees[v] = (rows[v] & chosen).count_ones();
        let mut nb = rows[v] & chosen;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            degrees[u] += 1;
        }
        let next_frontier = ((frontier & !banned) | (rows[v] & next_allowed)) & !(chosen | bit);
        grow(rows, out, degrees, chosen | bit, next_frontier, next_allowed);
        let mut nb = rows[v] & chosen;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            degrees[u] -= 1;
        }
        banned |= bit;
    }
}

fn record_if_regular(out: &mut CycleCliqueCensus, chosen: u64, degrees: &[u32]) {
    let first = chosen.trailing_zeros() as usize;
    let d = degrees[first];
    let mut m = chosen & (chosen - 1);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if degrees[v] != d {
            return;
        }
        m &= m - 1;
    }
    let order = chosen.count_ones() as usize;
    let d = d as usize;
    let is_clique = order == d + 1;
    let (r, s) = (out.r, out.s);
    let fits = if is_clique {
        d < 2 * s
    } else {
        d >= 2 && d < 3 * s && (r * (d + 1)).is_multiple_of(3) && order == r * (d + 1) / 3
    };
    *out.census.entry((order, d, is_clique)).or_insert(0) += 1;
    if !fits && out.counterexamples.len() < 16 {
        out.counterexamples.push(VertexSet(chosen));
    }
}

/// Checks that `g` has no induced regular subgraph of order exactly `k`,
/// within a budget of visited partial subsets. Exceeding the budget (or an
/// order beyond the subset engine) is an explicit infeasibility, distinct
/// from `false`.
pub fn verify_no_regular(g: &Graph, k: usize, budget: u64) -> Result<bool, ConstructError> {
    match find_induced_regular_budgeted(g, k, Mode::Exact, budget) {
        Ok(found) => Ok(found.is_none()),
        Err(OracleError::BudgetExceeded { visited }) => Err(ConstructError::Infeasible { visited }),
        Err(OracleError::OrderAbove64(_)) => Err(ConstructError::Infeasible { visited: 0 }),
        Err(e) => panic!("unexpected oracle failure: {e}"),
    }
}

/// Exact independence number by branch and bound with a greedy
/// clique-cover bound. Requires order at most 64.
pub fn independence_number(g: &Graph) -> Result<usize, ConstructError> {
    let n = g.order();
    if n > 64 {
        return Err(ConstructError::Infeasible { visited: 0 });
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row64(v)).collect();
    let mut best = 0usize;
    mis_branch(&rows, VertexSet::full(n).0, 0, &mut best);
    Ok(best)
}

fn clique_cover_bound(rows: &[u64], mut cands: u64) -> usize {
    let mut cliques = 0;
    while cands != 0 {
        let v = cands.trailing_zeros() as usize;
        let mut clique = 1u64 << v;
        let mut pool = rows[v] & cands;
        while pool != 0 {
            let u = pool.trailing_zeros() as usize;
            clique |= 1u64 << u;
            pool &= rows[u];
        }
        cands &= !clique;
        cliques += 1;
    }
    cliques
}

fn mis_branch(rows: &[u64], cands: u64, size: usize, best: &mut usize) {
    if cands == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + clique_cover_bound(rows, cands) <= *best {
        return;
    }
    // branch on a candidate of maximum degree within the candidate set
    let mut pick = cands.trailing_zeros() as usize;
    let mut pick_deg = 0;
    let mut m = cands;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = (rows[v] & cands).count_ones();
        if d >= pick_deg {
            pick_deg = d;
            pick = v;
        }
    }
    mis_branch(rows, cands & !(rows[pick] | (1u64 << pick)), size + 1, best);
    mis_branch(rows, cands & !(1u64 << pick), size, best);
}
