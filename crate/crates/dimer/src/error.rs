use thiserror::Error;

/// Errors produced by the dimer library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter was non-finite, out of range, or otherwise malformed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A value outside the mathematical domain of the operation (e.g. T <= 0).
    #[error("domain error: {0}")]
    Domain(String),
    /// A matrix that is not a valid density matrix within tolerance.
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// Numerical failure (eigensolver non-convergence, overflow).
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {value} is not finite"
        )))
    }
}

pub(crate) fn ensure_temperature(t: f64) -> Result<()> {
    if t.is_nan() {
        return Err(Error::InvalidParameter("temperature is NaN".into()));
    }
    if t <= 0.0 {
        return Err(Error::Domain(format!(
            "temperature must be positive, got {t}"
        )));
    }
    if !t.is_finite() {
        return Err(Error::InvalidParameter("temperature is infinite".into()));
    }
    Ok(())
}
