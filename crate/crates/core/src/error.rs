use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("source and target are the same vertex {0}")]
    SameVertex(VertexId),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("search budget of {limit} states exhausted")]
    BudgetExceeded { limit: u64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is too small: {0}")]
    TooSmall(String),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid chunk {chunk} for a wall of size {size}")]
    InvalidChunk { chunk: usize, size: usize },
    #[error("too few marked vertices: have {have}, need {need}")]
    TooFewMarks { have: usize, need: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dangling reference: {0}")]
    DanglingReference(String),
}

pub type Result<T> = std::result::Result<T, Error>;
