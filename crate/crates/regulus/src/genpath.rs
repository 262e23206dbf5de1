//! Isomorph-free generation of the families R=k(n) and R>=k(n) by the
//! canonical construction path method.
//!
//! Starting from the one-vertex graph, each family member is extended one
//! vertex at a time through its extension front. Candidate extension sets
//! are reduced to one representative per automorphism orbit, and a child is
//! accepted only when the added vertex lies in the same orbit as the vertex
//! a canonical labelling places last. That guarantees exactly one
//! representative per isomorphism class at every order.
//!
//! Two optional speed-ups, on by default and tested to leave counts
//! unchanged: extensions are restricted so the new vertex has maximum
//! degree (with canonical forms computed relative to the max-degree cell),
//! and children with more than half the possible edges are obtained by
//! complementing generated ones instead of by extension.

use crate::canon::{canonical, orbit_ids, subset_orbit_reps, CanonError, OrderedPartition};
use crate::graph::{Graph, VertexSet};
use crate::regcheck::{extension_sets, ExtensionFront, Mode, OracleError};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("generation requires k >= 3, got {0}")]
    SmallK(usize),
    #[error("generation requires n_max between 1 and 64, got {0}")]
    BadNMax(usize),
    #[error("emit level {level} outside 1..={n_max}")]
    BadEmitLevel { level: u32, n_max: usize },
    #[error("extension front is not closed under the automorphism group: {0}")]
    FrontInconsistent(CanonError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Generation switches. Defaults enable both optimizations, one worker,
/// deterministic output and no budget.
#[derive(Debug, Clone)]
pub struct GenOptions {
    pub max_degree_last: bool,
    pub complement_closure: bool,
    pub emit_level: Option<u32>,
    pub workers: usize,
    pub deterministic: bool,
    pub node_budget: Option<u64>,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            max_degree_last: true,
            complement_closure: true,
            emit_level: None,
            workers: 1,
            deterministic: true,
            node_budget: None,
        }
    }
}

/// Per-order counts of a generation run, with completeness flags and an
/// edge-count histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsTable {
    pub k: usize,
    pub mode: Mode,
    rows: BTreeMap<u32, LevelRow>,
    edge_hist: BTreeMap<(u32, u32), u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LevelRow {
    pub count: u64,
    pub complete: bool,
}

impl CountsTable {
    fn new(k: usize, mode: Mode, n_max: usize) -> Self {
        let rows = (1..=n_max as u32)
            .map(|n| (n, LevelRow { count: 0, complete: true }))
            .collect();
        CountsTable { k, mode, rows, edge_hist: BTreeMap::new() }
    }

    pub fn count(&self, n: usize) -> Option<u64> {
        self.rows.get(&(n as u32)).map(|r| r.count)
    }

    pub fn is_complete(&self, n: usize) -> bool {
        self.rows.get(&(n as u32)).is_some_and(|r| r.complete)
    }

    pub fn all_complete(&self) -> bool {
        self.rows.values().all(|r| r.complete)
    }

    /// Counts for n = 1..=n_max in order.
    pub fn counts(&self) -> Vec<u64> {
        self.rows.values().map(|r| r.count).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = (u32, LevelRow)> + '_ {
        self.rows.iter().map(|(&n, &r)| (n, r))
    }

    /// Number of generated graphs of order `n` with exactly `e` edges.
    pub fn edge_count_at(&self, n: usize, e: usize) -> u64 {
        self.edge_hist.get(&(n as u32, e as u32)).copied().unwrap_or(0)
    }

    /// Tab-separated rows "n<TAB>count", incomplete rows flagged.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (&n, row) in &self.rows {
            out.push_str(&format!("{n}\t{}", row.count));
            if !row.complete {
                out.push_str("\tincomplete");
            }
            out.push('\n');
        }
        out
    }

    fn add(&mut self, n: usize, e: usize, copies: u64, total_edges: usize) {
        let row = self.rows.get_mut(&(n as u32)).unwrap();
        row.count += copies;
        *self.edge_hist.entry((n as u32, e as u32)).or_insert(0) += 1;
        if copies == 2 {
            *self.edge_hist.entry((n as u32, (total_edges - e) as u32)).or_insert(0) += 1;
        }
    }

    fn mark_incomplete_from(&mut self, level: u32) {
        for (&n, row) in self.rows.iter_mut() {
            if n >= level {
                row.complete = false;
            }
        }
    }

    fn merge(&mut self, other: &CountsTable) {
        for (&n, row) in &other.rows {
            let mine = self.rows.entry(n).or_default();
            mine.count += row.count;
            mine.complete &= row.complete;
        }
        for (&key, &c) in &other.edge_hist {
            *self.edge_hist.entry(key).or_insert(0) += c;
        }
    }
}

/// Decides whether `child` (equal to `parent` plus one vertex joined to
/// some extension set) is the canonical construction step for its
/// isomorphism class: the added vertex must share an automorphism orbit
/// with the canonically-last vertex. With `max_degree_last` set, children
/// whose new vertex lacks maximum degree are rejected outright, and the
/// emit-level fast path accepts a unique max-degree new vertex without
/// canonising.
pub fn accept(parent: &Graph, child: &Graph, _k: usize, _mode: Mode, opts: &GenOptions) -> bool {
    assert_eq!(child.order(), parent.order() + 1, "child must extend parent");
    let fast_ok = opts.emit_level == Some(child.order() as u32);
    accept_child(child, opts.max_degree_last, fast_ok).is_some()
}

/// `Some(aut_gens)` when accepted (empty on the fast path), `None` when
/// rejected. The new vertex is the highest-indexed one.
fn accept_child(child: &Graph, max_degree_last: bool, fast_ok: bool) -> Option<Vec<Vec<u16>>> {
    let m = child.order();
    let newv = m - 1;
    let partition = if max_degree_last {
        let degs = child.degrees();
        let dmax = *degs.iter().max().unwrap();
        if degs[newv] != dmax {
            return None;
        }
        if fast_ok && degs.iter().filter(|&&d| d == dmax).count() == 1 {
            return Some(Vec::new());
        }
        OrderedPartition::max_degree_last(child)
    } else {
        OrderedPartition::unit(m)
    };
    let res = canonical(child, &partition);
    let canon_last = res
        .labeling
        .iter()
        .position(|&pos| pos as usize == m - 1)
        .unwrap();
    let ids = orbit_ids(&res.aut_gens, m);
    (ids[newv] == ids[canon_last]).then_some(res.aut_gens)
}

/// Receives emitted graphs with their order.
pub type EmitSink<'a> = &'a mut dyn FnMut(u32, &Graph);

struct Node {
    graph: Graph,
    front: ExtensionFront,
    gens: Vec<Vec<u16>>,
}

struct Gen<'a> {
    k: usize,
    mode: Mode,
    n_max: usize,
    opts: GenOptions,
    counts: CountsTable,
    emitted: Vec<Graph>,
    visited: u64,
    budget: u64,
    stopped: bool,
    // when set, accepted nodes at this level become tasks instead of
    // being extended in place
    split_level: Option<usize>,
    tasks: Vec<Node>,
    sink: Option<EmitSink<'a>>,
}

impl Gen<'_> {
    fn emit(&mut self, level: usize, g: &Graph) {
        if self.opts.emit_level == Some(level as u32) {
            if let Some(sink) = self.sink.as_mut() {
                sink(level as u32, g);
            } else {
                self.emitted.push(g.clone());
            }
        }
    }

    /// Records an accepted child and, under complement closure, its
    /// complement twin. Returns the twin when it must also be extended.
    fn record(&mut self, level: usize, g: &Graph) -> Option<Graph> {
        let total = level * (level - 1) / 2;
        let e = g.edge_count();
        self.emit(level, g);
        if self.opts.complement_closure && 2 * e < total {
            self.counts.add(level, e, 2, total);
            let twin = g.complement();
            self.emit(level, &twin);
            Some(twin)
        } else {
            self.counts.add(level, e, 1, total);
            None
        }
    }

    fn extend_node(&mut self, node: &Node) -> Result<(), GenError> {
        if self.stopped {
            return Ok(());
        }
        let g = &node.graph;
        let n = g.order();
        let m = n + 1;
        let candidates: Vec<VertexSet> = if self.opts.max_degree_last {
            let degs = g.degrees();
            node.front
                .sets
                .iter()
                .copied()
                .filter(|u| new_vertex_has_max_degree(&degs, *u))
                .collect()
        } else {
            node.front.sets.clone()
        };
        let reps = if node.gens.is_empty() {
            candidates
        } else {
            subset_orbit_reps(&node.gens, &candidates).map_err(GenError::FrontInconsistent)?
        };
        for u in reps {
            self.visited += 1;
            if self.visited > self.budget {
                self.stopped = true;
                return Ok(());
            }
            let child = g.extend_with(u);
            if self.opts.complement_closure && 2 * child.edge_count() > m * (m - 1) / 2 {
                continue;
            }
            let fast_ok = m == self.n_max;
            let Some(child_gens) = accept_child(&child, self.opts.max_degree_last, fast_ok)
            else {
                continue;
            };
            let twin = self.record(m, &child);
            if m < self.n_max {
                let child_front = extension_sets(&child, Some(&node.front), self.k, self.mode)?;
                let twin_node = twin.and_then(|t| {
                    // no extension needed past half the next order's edges
                    let e2 = 2 * t.edge_count();
                    (e2 <= m * (m + 1) / 2).then(|| Node {
                        front: complement_front(&child_front, m),
                        graph: t,
                        gens: child_gens.clone(),
                    })
                });
                let child_node = Node { graph: child, front: child_front, gens: child_gens };
                self.descend(child_node)?;
                if let Some(tn) = twin_node {
                    self.descend(tn)?;
                }
            }
            if self.stopped {
                return Ok(());
            }
        }
        Ok(())
    }

    fn descend(&mut self, node: Node) -> Result<(), GenError> {
        if self.split_level == Some(node.graph.order()) {
            self.tasks.push(node);
            Ok(())
        } else {
            self.extend_node(&node)
        }
    }
}

fn new_vertex_has_max_degree(degs: &[usize], u: VertexSet) -> bool {
    let deg_new = u.len();
    degs.iter()
        .enumerate()
        .all(|(v, &d)| d + usize::from(u.contains(v)) <= deg_new)
}

/// The front of a complement: complements of the front sets, re-sorted.
fn complement_front(front: &ExtensionFront, order: usize) -> ExtensionFront {
    let full = VertexSet::full(order).0;
    let mut sets: Vec<VertexSet> =
        front.sets.iter().map(|u| VertexSet(full & !u.0)).collect();
    sets.sort_unstable();
    ExtensionFront { sets, level: front.level }
}

/// Generates one representative per isomorphism class in the family for
/// every order up to `n_max`, returning the counts table. Graphs of the
/// emit level are passed to `sink` (deterministic order with one worker or
/// `deterministic`).
pub fn generate(
    k: usize,
    mode: Mode,
    n_max: usize,
    opts: &GenOptions,
    mut sink: Option<EmitSink>,
) -> Result<CountsTable, GenError> {
    if k < 3 {
        return Err(GenError::SmallK(k));
    }
    if !(1..=64).contains(&n_max) {
        return Err(GenError::BadNMax(n_max));
    }
    if let Some(level) = opts.emit_level {
        if level == 0 || level as usize > n_max {
            return Err(GenError::BadEmitLevel { level, n_max });
        }
    }
    let workers = opts.workers.max(1);
    let parallel = workers > 1 && n_max > 3;
    let split_level = parallel.then(|| n_max.saturating_sub(2).clamp(2, 6));

    let root = Graph::empty(1);
    let mut gen = Gen {
        k,
        mode,
        n_max,
        opts: opts.clone(),
        counts: CountsTable::new(k, mode, n_max),
        emitted: Vec::new(),
        visited: 0,
        budget: opts.node_budget.unwrap_or(u64::MAX),
        stopped: false,
        split_level,
        tasks: Vec::new(),
        sink: None,
    };
    gen.record(1, &root);
    if n_max > 1 {
        let front = extension_sets(&root, None, k, mode)?;
        gen.extend_node(&Node { graph: root, front, gens: Vec::new() })?;
    }

    let mut counts = gen.counts;
    let mut emitted = gen.emitted;
    let stopped = if gen.tasks.is_empty() {
        gen.stopped
    } else {
        // distribute collected subtrees; counts merge by addition
        let tasks = std::mem::take(&mut gen.tasks);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        let remaining = gen.budget.saturating_sub(gen.visited);
        let per_task_budget = if remaining == u64::MAX {
            u64::MAX
        } else {
            remaining / tasks.len().max(1) as u64
        };
        let results: Vec<(CountsTable, Vec<Graph>, bool)> = pool.install(|| {
            tasks
                .par_iter()
                .map(|node| {
                    let mut sub = Gen {
                        k,
                        mode,
                        n_max,
                        opts: opts.clone(),
                        counts: CountsTable::new(k, mode, n_max),
                        emitted: Vec::new(),
                        visited: 0,
                        budget: per_task_budget,
                        stopped: false,
                        split_level: None,
                        tasks: Vec::new(),
                        sink: None,
                    };
                    let r = sub.extend_node(node);
                    debug_assert!(r.is_ok());
                    (sub.counts, sub.emitted, sub.stopped || r.is_err())
                })
                .collect()
        });
        let mut any_stopped = gen.stopped;
        for (sub_counts, sub_emitted, sub_stopped) in results {
            counts.merge(&sub_counts);
            emitted.extend(sub_emitted);
            any_stopped |= sub_stopped;
        }
        any_stopped
    };

    if stopped {
        counts.mark_incomplete_from(2);
    }
    if let Some(sink) = sink.as_mut() {
        if let Some(level) = opts.emit_level {
            for g in &emitted {
                sink(level, g);
            }
        }
    }
    Ok(counts)
}

/// Convenience wrapper collecting the graphs of one level.
pub fn generate_level(
    k: usize,
    mode: Mode,
    level: usize,
    opts: &GenOptions,
) -> Result<(CountsTable, Vec<Graph>), GenError> {
    let mut opts = opts.clone();
    opts.emit_level = Some(level as u32);
    let mut collected = Vec::new();
    let mut sink = |_: u32, g: &Graph| collected.push(g.clone());
    let counts = generate(k, mode, level, &opts, Some(&mut sink))?;
    Ok((counts, collected))
}

/// The paper-style cross check: a fully generated level must be closed
/// under complementation as a multiset of isomorphism classes.
pub fn verify_complement_closed(graphs: &[Graph]) -> bool {
    let mut direct: Vec<Vec<u8>> = graphs.iter().map(crate::canon::canon_bytes).collect();
    let mut complemented: Vec<Vec<u8>> = graphs
        .iter()
        .map(|g| crate::canon::canon_bytes(&g.complement()))
        .collect();
    direct.sort();
    complemented.sort();
    direct == complemented
}

/// How many of the given graphs are isomorphic to their own complement.
pub fn count_self_complementary(graphs: &[Graph]) -> usize {
    graphs
        .iter()
        .filter(|g| crate::canon::canon_bytes(g) == crate::canon::canon_bytes(&g.complement()))
        .count()
}
