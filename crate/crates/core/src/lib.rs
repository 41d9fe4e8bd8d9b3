//! Gallai colorings, Gallai partitions, monochromatic subgraph detection,
//! extremal constructions, closed-form bounds and exhaustive search for
//! small Ramsey and Gallai-Ramsey numbers of bipartite targets.

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod corpus;
pub mod detect;
pub mod format;
pub mod graph;
pub mod job;
pub mod partition;
pub mod reduction;
pub mod search;

pub use coloring::{pentagon, Color, EdgeColoring, TargetGraph};
pub use partition::{find_gallai_partition, validate_partition, GallaiPartition};
pub use search::{exists_avoiding_coloring, Certificate, Outcome, SearchProblem};
