use thiserror::Error;

/// Errors raised by the model operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DopplerError {
    /// Input outside the validity domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// Iteration failed to converge or a root could not be bracketed.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// Bad input data (files, samples, malformed parameters).
    #[error("input error: {0}")]
    Input(String),
    /// Medium moves against the wave at or above the wave speed.
    #[error("propagation blocked: effective wave speed is zero")]
    PropagationBlocked,
    /// Observer recedes at or above the wave speed.
    #[error("wave never reaches the observer")]
    NeverReceived,
    /// Source moves at or above the wave speed; use the Mach cone analysis.
    #[error("supersonic source (M = {mach}); no steady Doppler frequency")]
    Supersonic { mach: f64 },
}

pub type Result<T> = std::result::Result<T, DopplerError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(DopplerError::Domain(msg.into()))
}

pub(crate) fn numeric<T>(msg: impl Into<String>) -> Result<T> {
    Err(DopplerError::Numeric(msg.into()))
}

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be finite, got {x}"))
    }
}

pub(crate) fn ensure_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        domain(format!("{name} must be positive, got {x}"))
    }
}
