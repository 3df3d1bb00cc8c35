use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no rows")]
    EmptyInput,

    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bandwidth must be positive and finite, got {0}")]
    NonPositiveBandwidth(f64),

    /// The increment `h^-(M+1)` (or the product it feeds) overflowed.
    #[error("non-finite bandwidth update at h = {h}")]
    NonFiniteUpdate { h: f64 },

    #[error("bandwidth selection failed at step {step} (h = {h})")]
    SelectionFailure { step: u64, h: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
