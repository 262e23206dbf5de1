//! Shared fixtures: the published count columns, an implementation-
//! independent brute-force enumerator of isomorphism classes, and flat
//! subset scans used as oracles against the pruned search paths.

#![allow(dead_code)]

use regulus::canon::canon_bytes;
use regulus::regcheck::{in_req, in_rge, regular_degree};
use regulus::{Graph, Mode, VertexSet};
use std::collections::HashSet;

/// Counts of graphs with no induced regular subgraph of order exactly k,
/// for n = 1, 2, ... as far as reproduced here.
pub const REQ4: [u64; 7] = [1, 2, 4, 7, 12, 12, 2];
pub const REQ5: [u64; 10] = [1, 2, 4, 11, 31, 136, 792, 7185, 94893, 1714430];
pub const REQ6: [u64; 9] = [1, 2, 4, 11, 34, 148, 964, 10472, 191776];
pub const REQ7: [u64; 9] = [1, 2, 4, 11, 34, 156, 1038, 12246, 269646];

/// Counts with no induced regular subgraph of order at least k.
pub const RGE4: [u64; 6] = [1, 2, 4, 7, 11, 10];
pub const RGE5: [u64; 10] = [1, 2, 4, 11, 31, 130, 728, 6027, 66308, 818276];
pub const RGE6: [u64; 9] = [1, 2, 4, 11, 34, 148, 960, 10390, 188560];
pub const RGE7: [u64; 9] = [1, 2, 4, 11, 34, 156, 1038, 12226, 268920];

/// All isomorphism classes of order n, by exhaustive adjacency-matrix
/// enumeration and canonical deduplication. Independent of the generator.
pub fn all_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if seen.insert(canon_bytes(&g)) {
            out.push(g);
        }
    }
    out
}

pub fn is_member(g: &Graph, k: usize, mode: Mode) -> bool {
    match mode {
        Mode::Exact => in_req(g, k),
        Mode::AtLeast => in_rge(g, k),
    }
}

/// Flat scan over every vertex subset, no pruning: is there an induced
/// regular subgraph of order exactly k (or at least k)?
pub fn flat_scan_has_regular(g: &Graph, k: usize, mode: Mode) -> bool {
    let n = g.order();
    (1u64..1 << n).any(|mask| {
        let size = mask.count_ones() as usize;
        let hit = match mode {
            Mode::Exact => size == k,
            Mode::AtLeast => size >= k,
        };
        hit && regular_degree(&g.induced(VertexSet(mask)).unwrap()).is_some()
    })
}

pub fn sorted_canon_keys(graphs: &[Graph]) -> Vec<Vec<u8>> {
    let mut keys: Vec<Vec<u8>> = graphs.iter().map(canon_bytes).collect();
    keys.sort();
    keys
}
