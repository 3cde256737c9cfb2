//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain a routine supports
    /// (e.g. a point off the upper half-plane, an abscissa left of the
    /// convergence boundary, a modulus without a primitive root).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative scheme (continued fraction, quadrature refinement, …)
    /// failed to converge within its iteration or node budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A truncated sum could not meet the requested tolerance within the
    /// configured cutoff.
    #[error("truncation budget exceeded: {0}")]
    Budget(String),

    /// The cusp-form coefficient table is shorter than a computation needs.
    #[error("coefficient table too short: need a(n) up to n = {needed}, table holds n <= {available}")]
    CoefficientsExhausted { needed: usize, available: usize },

    /// Malformed external data (e.g. a coefficient CSV that fails validation).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
