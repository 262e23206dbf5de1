//! regulus: a combinatorial search toolkit for Ramsey-type numbers of
//! regular induced subgraphs.
//!
//! The library computes and verifies the families R=k(n) and R>=k(n) of
//! graphs with no induced regular subgraph of order exactly k (resp. at
//! least k), via isomorph-free canonical-construction-path generation. It
//! also builds the explicit extremal constructions that give quadratic
//! lower bounds for special orders, and numerically validates the
//! probabilistic machinery behind the general quadratic lower bound.
//!
//! Entry points by capability:
//! - [`graph`]: bit-row graphs, products, unions, graph6 interchange.
//! - [`canon`]: canonical labelling, automorphism generators, orbits.
//! - [`regcheck`]: membership oracles and incremental extension machinery.
//! - [`genpath`]: the isomorph-free generator and count tables.
//! - [`constructions`]: explicit extremal graphs and their verifiers.
//! - [`randmodel`]: heterogeneous random graphs and bound checks.
//! - [`search`]: frontier heuristics (back-extension, perturbation).

pub mod canon;
pub mod constructions;
pub mod genpath;
pub mod graph;
pub mod randmodel;
pub mod regcheck;
pub mod search;

pub use graph::{Graph, VertexSet};
pub use regcheck::Mode;
