use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter sits on a pole (for example a Pochhammer denominator at a non-positive integer).
    #[error("pole: {0}")]
    Pole(String),

    /// The quantity diverges at the requested point.
    #[error("singularity: {0}")]
    Singularity(String),

    /// The largest coefficient is shared by several factors, so the
    /// charge-neutrality condition has no distinguished order.
    #[error("indeterminate maximum: coefficients {0:?} tie for the largest value")]
    IndeterminateMaximum(Vec<usize>),

    /// The request is valid but outside the region where the method applies.
    #[error("out of domain for {method}: {reason}")]
    OutOfDomain { method: &'static str, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("fit failed: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {x}")))
    }
}
