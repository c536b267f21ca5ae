use thiserror::Error;

use crate::hypergraph::Violation;

#[derive(Debug, Error)]
pub enum Error {
    /// Every component of the input vector is below the zero tolerance.
    #[error("zero vector: every component is below 1e-12 in magnitude")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite angle: {0}")]
    NonFiniteAngle(f64),

    #[error("not an orthonormal basis: {0}")]
    InvalidBasis(String),

    #[error("vectors are not orthogonal (|<u|v>| = {0:.3e})")]
    NotOrthogonal(f64),

    #[error("unknown atom: {0:?}")]
    UnknownAtom(String),

    #[error("source and target are the same atom: {0:?}")]
    IdenticalTerminals(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("invalid hypergraph ({} violation(s)): {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidHypergraph(Vec<Violation>),

    #[error("shared atom {0:?} carries non-collinear vector labels")]
    LabelConflict(String),

    #[error("atom {0:?} has no vector label")]
    MissingLabel(String),

    #[error("context {context} has {size} atoms but the labels live in dimension {dim}")]
    ContextSizeMismatch {
        context: usize,
        size: usize,
        dim: usize,
    },

    #[error("block length {m} exceeds stream length {n}")]
    BlockTooLong { m: usize, n: usize },

    #[error("stream too short for a normality test: {0} bits (need at least 4)")]
    StreamTooShort(usize),

    #[error("unsupported base {0} (expected 2 or 10)")]
    UnsupportedBase(u32),

    #[error("empty stream")]
    EmptyStream,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
