use thiserror::Error;

/// Errors produced by the spectral, approximation and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PtError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The inputs lie outside the region where an expansion or formula applies.
    #[error("outside domain: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance: estimated error {estimate:e} > {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("root not bracketed in [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error("eigenvalue iteration failed: {0}")]
    Convergence(String),

    #[error("grid of {requested} points exceeds the configured maximum of {max}")]
    Resource { requested: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, PtError>;

pub(crate) fn invalid(msg: impl Into<String>) -> PtError {
    PtError::InvalidParameter(msg.into())
}
