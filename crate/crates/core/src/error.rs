use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("{0} labels supplied for a graph of order {1}")]
    LabelCount(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph carries no grid labels")]
    MissingGridLabels,
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A constructive step that a theorem guarantees to succeed did not.
    /// Never expected in practice; surfaced with full state for inspection.
    #[error("theorem-refutation alarm: {0}")]
    RefutationAlarm(String),
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("enumeration bound exceeded: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
