use thiserror::Error;

/// Errors raised anywhere in the clustering pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("at least {required} points are required, got {actual}")]
    TooFewPoints { required: usize, actual: usize },

    #[error("column `{column}` has zero variance")]
    ZeroVariance { column: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("sub-neighborhood size {requested} exceeds neighborhood size {available}")]
    OutOfRange { requested: usize, available: usize },

    #[error("point {index} was already consumed at this depth")]
    StaleIndex { index: usize },

    #[error("dendrograms cover different leaf sets")]
    LeafMismatch,

    #[error("parse error at row {row}, column {column}: {reason}")]
    Parse {
        row: usize,
        column: usize,
        reason: String,
    },

    #[error("malformed trace document: {0}")]
    Schema(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
