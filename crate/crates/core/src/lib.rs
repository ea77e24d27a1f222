//! Cycle lengths modulo k in cubic graphs.
//!
//! Graph substrate and connectivity, an exhaustive cycle oracle, monotone
//! subsequence extraction, paths through prescribed edges, necklace
//! certificates with residue realization, path pairs, θ-decompositions and
//! the cross-ladder counterexample family.

pub mod blocks;
pub mod chords;
pub mod connectivity;
pub mod counterexamples;
pub mod error;
pub mod families;
pub mod flow;
pub mod frontier;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod monotone;
pub mod necklaces;
pub mod oracle;
pub mod path_pairs;
pub mod theta_decomp;

pub use error::{Error, Result};
pub use graph::Graph;
