//! Error taxonomy shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation has no defined result for this configuration.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// The grid is too narrow to hold the requested state.
    #[error("grid truncates the state: lost probability mass {lost_mass:.3e}")]
    Truncation { lost_mass: f64 },

    /// The grid is too coarse for the requested operation.
    #[error("insufficient resolution: {0}")]
    Resolution(String),

    /// The free-particle kernel has no finite limit at t = 0.
    #[error("propagator kernel is singular at t = 0")]
    SingularKernel,

    /// A bracketed search converged onto a bracket edge.
    #[error("minimizer reached the bracket edge at sigma^2 = {edge:.6e}; the optimum lies outside the scan range")]
    BracketFailure { edge: f64 },

    /// A constrained fit left residuals above tolerance.
    #[error("model mismatch: fit residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ModelMismatch { residual: f64, tolerance: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn resolution(msg: impl Into<String>) -> Self {
        Error::Resolution(msg.into())
    }
}
