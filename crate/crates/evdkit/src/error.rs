use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside a family's parameter space.
    #[error("invalid distribution spec: {0}")]
    InvalidSpec(String),

    /// Argument outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative routine exhausted its iteration budget.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// Too few observations for the requested operation.
    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// Data degenerate for the requested operation (e.g. all values equal).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// Malformed input file.
    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse {
        row: usize,
        col: String,
        msg: String,
    },

    /// A structural invariant of an input data set is violated.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
