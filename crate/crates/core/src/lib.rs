//! Reduction toolkit for clique complexes, signed graphs, and bipartite
//! tests under sparse-oracle access, with independent brute-force and
//! exact-arithmetic cross-checks for every spectral claim.
//!
//! The pipeline mirrors three constructions: clique complex to signed-graph
//! oracle, negative subdivision (balance to bipartiteness), and the
//! marked-to-traditional access gadget. Each stage is available both as an
//! explicit graph transformation and as an implicit oracle transformation,
//! and the two paths are checked against each other.

pub mod complex;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod reductions;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
