//! Fixed-order simple graphs stored as per-vertex bit rows, plus the
//! product/union builders and graph6 interchange.
//!
//! Orders up to [`MAX_ORDER`] are supported through multi-word rows. All
//! subset-level machinery ([`VertexSet`], induced subgraphs, vertex
//! extension) addresses vertices through a single 64-bit mask and is
//! therefore restricted to orders at most 64; the big orders only occur in
//! explicit constructions where whole-graph operations suffice.

use std::fmt;
use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 512;

const WORD_BITS: usize = 64;

/// Errors from graph builders and subset operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for order {order}")]
    EndpointOutOfRange { vertex: usize, order: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("graph order must be between 1 and {MAX_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex subset has bits at or above order {0}")]
    SubsetOutOfRange(usize),
    #[error("operation requires order <= 64, graph has {0} vertices")]
    OrderAbove64(usize),
}

/// A subset of vertices of a graph of order at most 64, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn single(v: usize) -> Self {
        debug_assert!(v < 64);
        VertexSet(1u64 << v)
    }

    /// Mask with the `n` lowest bits set.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut m = 0u64;
        for v in vs {
            debug_assert!(v < 64);
            m |= 1u64 << v;
        }
        VertexSet(m)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.0 |= 1u64 << v;
    }

    /// Iterates the member vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            // 1-based in all human-facing output
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

/// A simple undirected graph on vertices `0..n`, adjacency stored as `n`
/// bit rows of `ceil(n/64)` words each.
///
/// Invariants: the adjacency relation is symmetric, loop-free, and no bits
/// at positions `>= n` are set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u16,
    words: u8,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "order {n} out of range");
        let words = n.div_ceil(WORD_BITS);
        Graph {
            n: n as u16,
            words: words as u8,
            bits: vec![0u64; n * words],
        }
    }

    /// Builds a graph from an explicit edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::BadOrder(n));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::EndpointOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::EndpointOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Path P_n on vertices 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        g
    }

    /// Cycle C_n (requires n >= 3).
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.set_edge(n - 1, 0);
        g
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub(crate) fn word_count(&self) -> usize {
        self.words as usize
    }

    /// The bit row of vertex `v`.
    pub fn row(&self, v: usize) -> &[u64] {
        let w = self.words as usize;
        &self.bits[v * w..(v + 1) * w]
    }

    /// Single-word row accessor for graphs of order at most 64.
    #[inline(always)]
    pub fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.words == 1);
        self.bits[v]
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let w = self.words as usize;
        (self.bits[u * w + v / WORD_BITS] >> (v % WORD_BITS)) & 1 == 1
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order() && v < self.order());
        let w = self.words as usize;
        self.bits[u * w + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
        self.bits[v * w + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order() && v < self.order());
        let w = self.words as usize;
        self.bits[u * w + v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
        self.bits[v * w + u / WORD_BITS] &= !(1u64 << (u % WORD_BITS));
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edge-complement; an involution.
    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `set`, vertices relabelled by ascending member
    /// order. Requires order at most 64 and a nonempty subset.
    pub fn induced(&self, set: VertexSet) -> Result<Graph, GraphError> {
        let n = self.order();
        if n > 64 {
            return Err(GraphError::OrderAbove64(n));
        }
        if set.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        if !set.is_subset_of(VertexSet::full(n)) {
            return Err(GraphError::SubsetOutOfRange(n));
        }
        let members: Vec<usize> = set.iter().collect();
        let mut g = Graph::empty(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// The graph `G:U`: appends a new vertex joined to exactly `set`.
    /// Requires order at most 63 so the result stays within one word.
    pub fn extend_with(&self, set: VertexSet) -> Graph {
        let n = self.order();
        assert!(n < 64, "cannot extend a graph of order {n} past 64");
        assert!(
            set.is_subset_of(VertexSet::full(n)),
            "extension set out of range"
        );
        let mut g = Graph::empty(n + 1);
        for v in 0..n {
            g.bits[v] = self.bits[v];
        }
        g.bits[n] = set.0;
        for v in set.iter() {
            g.bits[v] |= 1u64 << n;
        }
        g
    }

    /// Deletes vertex `v`, relabelling the remainder by ascending order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        let n = self.order();
        if n > 64 {
            return Err(GraphError::OrderAbove64(n));
        }
        if n == 1 {
            return Err(GraphError::EmptySubset);
        }
        let mut keep = VertexSet::full(n);
        keep.0 &= !(1u64 << v);
        self.induced(keep)
    }

    /// Lexicographic product `G[H]`: vertex `(u, v)` maps to index
    /// `u * |V(H)| + v`; `(u1,v1) ~ (u2,v2)` iff `u1 ~ u2` in G, or
    /// `u1 = u2` and `v1 ~ v2` in H.
    pub fn lex_product(&self, h: &Graph) -> Result<Graph, GraphError> {
        let gn = self.order();
        let hn = h.order();
        let n = gn * hn;
        if n > MAX_ORDER {
            return Err(GraphError::BadOrder(n));
        }
        let mut out = Graph::empty(n);
        for u1 in 0..gn {
            for u2 in u1..gn {
                if u1 == u2 {
                    for (a, b) in h.edges() {
                        out.set_edge(u1 * hn + a, u1 * hn + b);
                    }
                } else if self.has_edge(u1, u2) {
                    for a in 0..hn {
                        for b in 0..hn {
                            out.set_edge(u1 * hn + a, u2 * hn + b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Disjoint union with block-diagonal adjacency.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Graph, GraphError> {
        assert!(!parts.is_empty(), "disjoint union of no graphs");
        let n: usize = parts.iter().map(|g| g.order()).sum();
        if n > MAX_ORDER {
            return Err(GraphError::BadOrder(n));
        }
        let mut out = Graph::empty(n);
        let mut base = 0;
        for g in parts {
            for (u, v) in g.edges() {
                out.set_edge(base + u, base + v);
            }
            base += g.order();
        }
        Ok(out)
    }

    /// `copies` disjoint copies of `self`.
    pub fn repeated(&self, copies: usize) -> Result<Graph, GraphError> {
        let parts: Vec<Graph> = std::iter::repeat_with(|| self.clone()).take(copies).collect();
        Graph::disjoint_union(&parts)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {})", self.n, g6_encode(self))
    }
}

// ============================================================================
// graph6 interchange
// ============================================================================

/// Errors from graph6 decoding.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum G6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#x} at position {pos} outside the printable graph6 range")]
    BadByte { pos: usize, byte: u8 },
    #[error("graph6 line has {got} bytes, expected {expected} for order {order}")]
    BadLength { order: usize, expected: usize, got: usize },
    #[error("graph6 order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("graph6 order 0 not supported")]
    OrderZero,
}

/// Encodes a graph in standard header-free graph6.
pub fn g6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // 18-bit order form
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(group + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Decodes a single header-free graph6 line. A leading `>>graph6<<` marker
/// is tolerated.
pub fn g6_decode(text: &str) -> Result<Graph, G6Error> {
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(G6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(G6Error::BadByte { pos, byte: b });
        }
    }
    let (n, header_len) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 36-bit order form: always beyond MAX_ORDER
            return Err(G6Error::OrderTooLarge(usize::MAX));
        }
        if bytes.len() < 4 {
            return Err(G6Error::BadLength { order: 0, expected: 4, got: bytes.len() });
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n == 0 {
        return Err(G6Error::OrderZero);
    }
    if n > MAX_ORDER {
        return Err(G6Error::OrderTooLarge(n));
    }
    let nbits = n * (n - 1) / 2;
    let expected = header_len + nbits.div_ceil(6);
    if bytes.len() != expected {
        return Err(G6Error::BadLength { order: n, expected, got: bytes.len() });
    }
    let mut g = Graph::empty(n);
    let mut bit_index = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[header_len + bit_index / 6] - 63;
            let bit = (byte >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                g.set_edge(i, j);
            }
            bit_index += 1;
        }
    }
    Ok(g)
}
