//! Mechanical construction and certification of the reduction chain
//! 3-Dimensional Matching → Multicolored Resolving Set → Metric Dimension
//! on graphs of constant treewidth.
//!
//! - [`graph`]: labeled graphs, BFS, resolving-set checks, exact small oracles.
//! - [`tdm`]: 3DM instances, generator and exact solver.
//! - [`mrs`]: the multicolored resolving set graph and its verifiers.
//! - [`md`]: the metric dimension graph with forced set and forced vertex gadgets.
//! - [`certify`]: YES/NO certificates and lemma-level exhaustive checks.
//! - [`width`]: node-search simulation and path decompositions.

pub mod certify;
pub mod error;
pub mod graph;
pub mod md;
pub mod mrs;
pub mod names;
pub mod report;
pub mod sidecar;
pub mod tdm;
pub mod width;

pub use error::{GraphError, ReductionError, SearchError, TdmError, TdmParseError};
pub use graph::{LabeledGraph, VertexId, VertexLabel};
pub use report::Report;
pub use tdm::ThreeDMInstance;
