//! Membership oracles for induced regular subgraphs and the incremental
//! blocking-pair / extension-front machinery driving generation.
//!
//! The subset search maintains, for every chosen vertex, the window of
//! degrees it can still attain; a partial selection is abandoned as soon as
//! the windows have empty intersection. Subsets are explored in ascending
//! vertex order, so all results are deterministic.

use crate::graph::{Graph, VertexSet};
use std::fmt;
use thiserror::Error;

/// Which family is meant: no induced regular subgraph of order exactly k,
/// or of order at least k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    AtLeast,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::AtLeast => write!(f, "atleast"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "atleast" | "at_least" | "at-least" => Ok(Mode::AtLeast),
            other => Err(format!("unknown mode {other:?}, expected exact|atleast")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("subgraph order k must be at least 1")]
    ZeroK,
    #[error("oracle requires order <= 64, graph has {0} vertices")]
    OrderAbove64(usize),
    #[error("search budget exhausted after {visited} nodes")]
    BudgetExceeded { visited: u64 },
    #[error("extension front level {prev} does not precede graph order {order}")]
    InconsistentLevel { prev: u32, order: usize },
}

/// The common degree of a regular graph, or `None` if degrees differ.
pub fn regular_degree(g: &Graph) -> Option<usize> {
    let d = g.degree(0);
    (1..g.order()).all(|v| g.degree(v) == d).then_some(d)
}

struct RegSearch<'a> {
    g: &'a Graph,
    k: usize,
    exact: bool,
    budget: u64,
    visited: u64,
}

impl RegSearch<'_> {
    /// DFS over vertex subsets extending `chosen` with candidates from
    /// `cands[idx..]`; `suffix[i]` masks `cands[i..]`.
    fn dfs(
        &mut self,
        chosen: u64,
        size: usize,
        idx: usize,
        cands: &[u8],
        suffix: &[u64],
    ) -> Result<Option<u64>, OracleError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(OracleError::BudgetExceeded { visited: self.visited });
        }
        if size >= self.k && self.is_regular(chosen) {
            return Ok(Some(chosen));
        }
        if self.exact && size == self.k {
            return Ok(None);
        }
        if size + (cands.len() - idx) < self.k {
            return Ok(None);
        }
        if size > 0 && !self.windows_feasible(chosen, suffix[idx]) {
            return Ok(None);
        }
        for i in idx..cands.len() {
            let v = cands[i] as usize;
            if let Some(hit) =
                self.dfs(chosen | (1u64 << v), size + 1, i + 1, cands, suffix)?
            {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }

    fn is_regular(&self, chosen: u64) -> bool {
        let mut m = chosen;
        let first = m.trailing_zeros() as usize;
        let d = (self.g.row64(first) & chosen).count_ones();
        m &= m - 1;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if (self.g.row64(v) & chosen).count_ones() != d {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    fn windows_feasible(&self, chosen: u64, remaining: u64) -> bool {
        let cap = if self.exact {
            self.k - chosen.count_ones() as usize
        } else {
            64
        };
        let mut lo = 0u32;
        let mut hi = u32::MAX;
        let mut m = chosen;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (self.g.row64(v) & chosen).count_ones();
            let headroom = (self.g.row64(v) & remaining).count_ones().min(cap as u32);
            lo = lo.max(d);
            hi = hi.min(d + headroom);
            if lo > hi {
                return false;
            }
        }
        true
    }
}

/// Searches for a vertex set whose induced subgraph is regular, of order
/// exactly `k` or at least `k` depending on mode, containing all of
/// `required`. Bounded by `budget` visited search nodes.
pub(crate) fn find_regular_with_required(
    g: &Graph,
    k: usize,
    mode: Mode,
    required: VertexSet,
    budget: u64,
) -> Result<Option<VertexSet>, OracleError> {
    let n = g.order();
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    if n > 64 {
        return Err(OracleError::OrderAbove64(n));
    }
    if mode == Mode::Exact && required.len() > k {
        return Ok(None);
    }
    let cands: Vec<u8> = (0..n as u8).filter(|&v| !required.contains(v as usize)).collect();
    let mut suffix = vec![0u64; cands.len() + 1];
    for i in (0..cands.len()).rev() {
        suffix[i] = suffix[i + 1] | (1u64 << cands[i]);
    }
    let mut search = RegSearch {
        g,
        k,
        exact: mode == Mode::Exact,
        budget,
        visited: 0,
    };
    Ok(search
        .dfs(required.0, required.len(), 0, &cands, &suffix)?
        .map(VertexSet))
}

/// A witness vertex set inducing a regular subgraph of order `k` (exact
/// mode) or at least `k` (at-least mode), or `None` if no such set exists.
pub fn find_induced_regular(
    g: &Graph,
    k: usize,
    mode: Mode,
) -> Result<Option<VertexSet>, OracleError> {
    find_regular_with_required(g, k, mode, VertexSet::EMPTY, u64::MAX)
}

/// Budgeted variant of [`find_induced_regular`]; exceeding the budget is an
/// explicit error, distinct from a definite answer.
pub fn find_induced_regular_budgeted(
    g: &Graph,
    k: usize,
    mode: Mode,
    budget: u64,
) -> Result<Option<VertexSet>, OracleError> {
    find_regular_with_required(g, k, mode, VertexSet::EMPTY, budget)
}

/// Membership of `g` in the family with no induced regular subgraph of
/// order exactly `k`. Panics on k = 0 or order above 64.
pub fn in_req(g: &Graph, k: usize) -> bool {
    membership(g, k, Mode::Exact)
}

/// Membership of `g` in the family with no induced regular subgraph of
/// order at least `k`.
pub fn in_rge(g: &Graph, k: usize) -> bool {
    membership(g, k, Mode::AtLeast)
}

fn membership(g: &Graph, k: usize, mode: Mode) -> bool {
    membership_budgeted(g, k, mode, u64::MAX).expect("unbudgeted oracle")
}

/// Budgeted membership test, for callers facing untrusted input sizes.
pub fn membership_budgeted(
    g: &Graph,
    k: usize,
    mode: Mode,
    budget: u64,
) -> Result<bool, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    let n = g.order();
    // a single vertex is 0-regular; any pair induces a regular graph
    if k <= 2 {
        return Ok(n < k);
    }
    if k > n {
        return Ok(true);
    }
    Ok(find_regular_with_required(g, k, mode, VertexSet::EMPTY, budget)?.is_none())
}

/// A pair (U1, U2) forbidding the next vertex from being joined to exactly
/// U2 within U1: doing so would complete a regular induced subgraph of
/// order k through the new vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockingPair {
    pub u1: VertexSet,
    pub u2: VertexSet,
}

impl BlockingPair {
    /// True iff joining the new vertex to exactly `u` violates this pair.
    #[inline(always)]
    pub fn blocks(&self, u: VertexSet) -> bool {
        u.0 & self.u1.0 == self.u2.0
    }
}

/// All pairs (U1, U2) with |U1| = k-1 such that joining a new vertex to
/// exactly U2 inside U1 completes a k-order regular induced subgraph:
/// U1 independent with U2 empty, U1 a clique with U2 = U1, or U1 with
/// exactly two induced degrees d and d+1 where U2 is the degree-d set of
/// size d+1. With `touching`, only pairs whose U1 contains that vertex are
/// produced (the new pairs when the touched vertex was added last).
pub fn blocking_pairs(g: &Graph, k: usize, touching: Option<usize>) -> Vec<BlockingPair> {
    let n = g.order();
    assert!(n <= 64, "blocking pairs require order <= 64");
    let mut out = Vec::new();
    if k < 2 || k - 1 > n {
        return out;
    }
    let size = k - 1;
    let pool: Vec<usize> = match touching {
        Some(t) => (0..n).filter(|&v| v != t).collect(),
        None => (0..n).collect(),
    };
    let fixed = touching.map_or(0u64, |t| 1u64 << t);
    let picks = size - fixed.count_ones() as usize;
    if picks > pool.len() {
        return out;
    }
    let mut indices: Vec<usize> = (0..picks).collect();
    loop {
        let mut u1 = fixed;
        for &i in &indices {
            u1 |= 1u64 << pool[i];
        }
        classify_into(g, VertexSet(u1), size, &mut out);
        // next combination in lexicographic order
        let mut pos = picks;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if indices[pos] + (picks - pos) < pool.len() {
                indices[pos] += 1;
                for j in pos + 1..picks {
                    indices[j] = indices[j - 1] + 1;
                }
                break;
            }
        }
        if picks == 0 {
            return out;
        }
    }
}

fn classify_into(g: &Graph, u1: VertexSet, size: usize, out: &mut Vec<BlockingPair>) {
    let mut deg_min = u32::MAX;
    let mut deg_max = 0u32;
    let mut min_set = 0u64;
    let mut min_count = 0u32;
    for v in u1.iter() {
        let d = (g.row64(v) & u1.0).count_ones();
        if d < deg_min {
            deg_min = d;
            min_set = 0;
            min_count = 0;
        }
        if d == deg_min {
            min_set |= 1u64 << v;
            min_count += 1;
        }
        deg_max = deg_max.max(d);
    }
    if deg_min == deg_max {
        // for a single vertex both completions are regular
        if deg_min == 0 {
            out.push(BlockingPair { u1, u2: VertexSet::EMPTY });
        }
        if deg_min as usize == size - 1 {
            out.push(BlockingPair { u1, u2: u1 });
        }
    } else if deg_max == deg_min + 1 && min_count == deg_min + 1 {
        // two degrees d and d+1: joining to the degree-d set makes
        // everything (d+1)-regular, matching the new vertex's degree
        let only_two = u1
            .iter()
            .all(|v| matches!((g.row64(v) & u1.0).count_ones(), d if d == deg_min || d == deg_max));
        if only_two {
            out.push(BlockingPair { u1, u2: VertexSet(min_set) });
        }
    }
}

/// The extension front: all subsets U of V(G) whose one-vertex extension
/// G:U stays in the family at the next order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFront {
    pub sets: Vec<VertexSet>,
    pub level: u32,
}

/// Computes the extension front of `g`. With `prev` (the front of `g`
/// minus its last vertex), only candidates from the subset recurrence are
/// screened, and only violations through the last vertex are checked. From
/// scratch, all subsets are screened against the full pair list (exact
/// mode) or the order->=k oracle through the new vertex (at-least mode).
///
/// `g` itself must belong to the family when `prev` is given; from scratch
/// this is re-checked and a non-member gets an empty front.
pub fn extension_sets(
    g: &Graph,
    prev: Option<&ExtensionFront>,
    k: usize,
    mode: Mode,
) -> Result<ExtensionFront, OracleError> {
    let n = g.order();
    if n > 63 {
        return Err(OracleError::OrderAbove64(n));
    }
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    let sets = match prev {
        Some(front) => {
            if front.level as usize != n - 1 {
                return Err(OracleError::InconsistentLevel { prev: front.level, order: n });
            }
            let last = n - 1;
            let candidates = front
                .sets
                .iter()
                .map(|s| s.0)
                .chain(front.sets.iter().map(|s| s.0 | (1u64 << last)))
                .map(VertexSet);
            match mode {
                Mode::Exact => {
                    let pairs = blocking_pairs(g, k, Some(last));
                    candidates
                        .filter(|&u| pairs.iter().all(|p| !p.blocks(u)))
                        .collect()
                }
                Mode::AtLeast => {
                    let within = VertexSet::from_vertices([last, n]);
                    filter_by_oracle(g, candidates, k, within)?
                }
            }
        }
        None => {
            let member = match mode {
                Mode::Exact => in_req(g, k),
                Mode::AtLeast => in_rge(g, k),
            };
            if !member {
                Vec::new()
            } else {
                let candidates = (0u64..1u64 << n).map(VertexSet);
                match mode {
                    Mode::Exact => {
                        let pairs = blocking_pairs(g, k, None);
                        candidates
                            .filter(|&u| pairs.iter().all(|p| !p.blocks(u)))
                            .collect()
                    }
                    Mode::AtLeast => filter_by_oracle(g, candidates, k, VertexSet::single(n))?,
                }
            }
        }
    };
    Ok(ExtensionFront { sets, level: n as u32 })
}

fn filter_by_oracle(
    g: &Graph,
    candidates: impl Iterator<Item = VertexSet>,
    k: usize,
    required: VertexSet,
) -> Result<Vec<VertexSet>, OracleError> {
    let mut out = Vec::new();
    for u in candidates {
        let child = g.extend_with(u);
        if find_regular_with_required(&child, k, Mode::AtLeast, required, u64::MAX)?.is_none() {
            out.push(u);
        }
    }
    Ok(out)
}

/// Builds `G:U` and returns it only if the incremental membership test
/// passes: no forbidden subgraph through the new vertex. Assumes `g`
/// already belongs to the family.
pub fn add_and_check(g: &Graph, u: VertexSet, k: usize, mode: Mode) -> Option<Graph> {
    let child = g.extend_with(u);
    let new = g.order();
    let clean = find_regular_with_required(&child, k, mode, VertexSet::single(new), u64::MAX)
        .expect("unbudgeted oracle")
        .is_none();
    clean.then_some(child)
}
