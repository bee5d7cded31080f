use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Inputs that must share an alphabet, horizon or length do not.
    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    /// A precondition on a single argument was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A derived quantity would exceed a supported bound (alphabet width,
    /// enumeration size, exact-arithmetic cap).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An operation that needs both a set and its complement to be nonempty
    /// received an empty or full set.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Not enough data points to produce the requested estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A construction's feasibility condition failed for the given parameters.
    #[error("construction infeasible: {0}")]
    Infeasible(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
