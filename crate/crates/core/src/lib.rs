//! Approximation algorithms for TSP on complete graphs that are close to
//! metric, parameterized by the number of vertices in violating triangles
//! (`p`) or the size of a minimum violating set (`q`).

pub mod alg_p;
pub mod alg_q;
pub mod analysis;
pub mod bench;
pub mod caps;
pub mod chains;
pub mod error;
pub mod generate;
pub mod graph;
pub mod metric;
pub mod prims;
pub mod report;
pub mod shortcut;
pub mod truth;
pub mod solution;
pub mod weight;

#[cfg(test)]
mod testutil;

pub use analysis::{bad_vertices_p, min_violating_set, PartitionKind, VertexPartition};
pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{TriangleViolation, WeightedGraph};
pub use prims::Tour;
pub use report::{Algorithm, SolveReport};
pub use solution::Solution;
pub use weight::Weight;

/// The instance type used by the CLI and harness.
pub type Graph = WeightedGraph<u64>;
