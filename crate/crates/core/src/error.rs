use alloc::string::String;

use crate::state::Basis;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cutoff {cutoff} is too small, need at least {required}")]
    CutoffTooSmall { cutoff: usize, required: usize },

    #[error("truncation insufficient: amplitude {tail:e} at the cutoff exceeds {limit:e}")]
    TruncationInsufficient { tail: f64, limit: f64 },

    #[error("basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch { left: Basis, right: Basis },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("eigenpair {index} has residual {residual:e}, above {limit:e}")]
    Residual { index: usize, residual: f64, limit: f64 },

    #[error("time step {dt} too large, must be below {limit}")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("need at least {required} samples, got {found}")]
    InsufficientSamples { found: usize, required: usize },

    #[error("density matrix lost positivity at t = {t}: minimum eigenvalue {min_eigenvalue:e}")]
    PositivityViolation { t: f64, min_eigenvalue: f64 },

    #[error("probability leaked past the Fock cutoff at t = {t}: {leaked:e}")]
    TruncationLeakage { t: f64, leaked: f64 },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
