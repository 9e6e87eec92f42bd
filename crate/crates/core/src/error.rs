use thiserror::Error;

use crate::units::Dimension;

/// Errors shared by every module in the crate.
///
/// Numeric payloads are carried as f64 regardless of the scalar type so the
/// error type stays object-safe and displayable.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),

    #[error("probability must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: f64 },

    #[error("{what}: {detail}")]
    InvalidInput { what: &'static str, detail: String },

    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: Dimension,
        right: Dimension,
    },

    #[error("dimension {0} is not in the unit-conversion table")]
    UnsupportedDimension(Dimension),

    #[error("root finding stalled after {iterations} iterations; last bracket [{lo}, {hi}], residual {residual}")]
    RootNonConvergence {
        iterations: usize,
        lo: f64,
        hi: f64,
        residual: f64,
    },

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidInput {
            what,
            detail: detail.into(),
        }
    }
}
