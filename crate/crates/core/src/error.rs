use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |A - A*| = {0:.3e})")]
    NonHermitian(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A numerical decision fell inside the indeterminate band between
    /// the SAT and UNSAT thresholds. Never silently rounded.
    #[error("indeterminate verdict: {0}")]
    Indeterminate(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
