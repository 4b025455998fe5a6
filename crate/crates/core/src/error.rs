use thiserror::Error;

/// Errors raised by graph construction and invariant evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("edge {edge} has non-positive length {length}")]
    NonPositiveLength { edge: usize, length: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("polarization at vertex {0:?} is negative")]
    NegativePolarization(String),

    #[error("polarization has {got} entries for {expected} vertices")]
    PolarizationLength { expected: usize, got: usize },

    #[error("canonical divisor is not effective at vertex {0:?}")]
    NotEffective(String),

    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("vertex set is not optimal: {0}")]
    NotOptimal(String),

    #[error("{method} is not applicable: {reason}")]
    Precondition { method: String, reason: String },

    #[error("{invariant}: {first} gives {first_value} but {second} gives {second_value}")]
    Disagreement { invariant: String, first: String, first_value: String, second: String, second_value: String },

    #[error("matrix is singular")]
    Singular,

    #[error("graph has {edges} edges, above the enumeration cap of {cap}")]
    TooLarge { edges: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn precondition(method: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Precondition { method: method.into(), reason: reason.into() }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::EmptyGraph => "empty_graph",
            Error::DuplicateVertex(_) => "duplicate_vertex",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::NonPositiveLength { .. } => "non_positive_length",
            Error::Disconnected => "disconnected",
            Error::NegativePolarization(_) => "negative_polarization",
            Error::PolarizationLength { .. } => "polarization_length",
            Error::NotEffective(_) => "not_effective",
            Error::EdgeOutOfRange(_) => "edge_out_of_range",
            Error::VertexOutOfRange(_) => "vertex_out_of_range",
            Error::NotOptimal(_) => "not_optimal",
            Error::Precondition { .. } => "precondition",
            Error::Disagreement { .. } => "disagreement",
            Error::Singular => "singular",
            Error::TooLarge { .. } => "too_large",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
