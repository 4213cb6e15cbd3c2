use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input document or value is malformed.
    InvalidInput,
    /// The input is well formed but describes something this crate does not handle.
    Unsupported,
    /// A mathematical precondition of the requested operation does not hold.
    Precondition,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational {input:?} at byte {position}: {message}")]
    ParseRational {
        input: String,
        position: usize,
        message: &'static str,
    },

    #[error("invalid document: {0}")]
    Document(String),

    #[error("component {index}: {reason}")]
    InvalidComponent { index: usize, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero vector is not a projective point")]
    ZeroVector,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix must be square of size {expected}, found {rows}x{cols}")]
    NotSquare { expected: usize, rows: usize, cols: usize },

    #[error("configuration is empty")]
    EmptyConfiguration,

    #[error("component {index}: mixed component kinds or dimensions are not supported ({reason})")]
    MixedComponents { index: usize, reason: String },

    #[error("operation requires a configuration of points")]
    NotPoints,

    #[error("one-parameter subgroup weights must sum to zero (sum is {sum})")]
    UnnormalizedWeights { sum: i64 },

    #[error("weight vector has length {found}, ambient needs {expected}")]
    WeightLength { expected: usize, found: usize },

    #[error("component dimension {d} is not below n - 1 = {}", *n as i64 - 1)]
    CodimensionTooSmall { d: usize, n: usize },

    #[error("components {first} and {second} intersect")]
    OverlappingComponents { first: usize, second: usize },

    #[error("subspace does not violate the stability inequality: {count}*{n_plus_1} <= {dim_plus_1}*{total}")]
    NotViolating {
        count: u64,
        n_plus_1: usize,
        dim_plus_1: usize,
        total: u64,
    },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ParseRational { .. }
            | Error::Document(_)
            | Error::InvalidComponent { .. }
            | Error::DimensionMismatch { .. }
            | Error::ZeroVector
            | Error::NotSquare { .. }
            | Error::WeightLength { .. }
            | Error::EmptyConfiguration => ErrorClass::InvalidInput,
            Error::MixedComponents { .. } | Error::NotPoints => ErrorClass::Unsupported,
            Error::SingularMatrix
            | Error::UnnormalizedWeights { .. }
            | Error::CodimensionTooSmall { .. }
            | Error::OverlappingComponents { .. }
            | Error::NotViolating { .. } => ErrorClass::Precondition,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
