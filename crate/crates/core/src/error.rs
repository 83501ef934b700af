//! Crate-wide error type.

/// Errors produced by construction and evaluation routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid usage (mismatched models, sizes, parameters).
    #[error("usage error: {0}")]
    Usage(String),

    /// A hyperbolic measure exceeded the divergence cap.
    #[error("hyperbolic measure diverges: {0}")]
    DivergentMeasure(String),

    /// Iterative eigensolver failed to reach its residual target.
    #[error("eigensolver did not converge: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    /// Norm-ratio calibration found a non-constant ratio.
    #[error("calibration failure: ratio spread {spread:.3e} exceeds limit {limit:.3e}")]
    Calibration { spread: f64, limit: f64 },

    /// Failure while parsing an external artifact (config, domain, signal).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
