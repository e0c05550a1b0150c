use thiserror::Error;

use crate::graph::{LabelParseError, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0}-{1} already exists")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0}-{1} does not exist")]
    MissingEdge(VertexId, VertexId),
    #[error("label {0} is already in use")]
    DuplicateLabel(String),
    #[error("path id {0} is already registered")]
    DuplicatePath(String),
    #[error("gadget id {0} is already registered")]
    DuplicateGadget(String),
    #[error("path {0} must have positive length")]
    ZeroLengthPath(String),
    #[error("a vertex pair needs two distinct vertices, got {0} twice")]
    SamePair(VertexId),
    #[error("too many {what}: {got} (limit {max})")]
    Capacity {
        what: &'static str,
        got: usize,
        max: usize,
    },
    #[error("graph integrity: {0}")]
    Integrity(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Label(#[from] LabelParseError),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct TdmParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdmError {
    #[error("planted generation needs m >= n (n={n}, m={m})")]
    PlantedTooFewTuples { n: usize, m: usize },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("the construction needs n >= 1 and m >= 1")]
    EmptyInstance,
    #[error("construction integrity violated: {0}")]
    Integrity(String),
    #[error("{what} exceeds the guard ({got} > {max})")]
    Capacity {
        what: &'static str,
        got: u64,
        max: u64,
    },
    #[error("invalid 3DM cover: {0}")]
    InvalidCover(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("step {step}: {msg}")]
    IllegalMove { step: usize, msg: String },
    #[error("strategy is not smooth: vertex {vertex} placed again at step {step}")]
    NotSmooth { vertex: VertexId, step: usize },
    #[error("strategy is not monotone: recontamination at step {step}")]
    NotMonotone { step: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
