use thiserror::Error;

/// Error type shared by the whole workbench.
///
/// Numeric payloads are reported at f64 so the messages do not depend on the
/// scalar type the caller instantiated.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: symmetrization correction {correction:.3e} exceeds {allowed:.3e}")]
    NotHermitian { correction: f64, allowed: f64 },

    #[error("eigendecomposition failed: {context} (residual {residual:.3e})")]
    EigenFailure { context: String, residual: f64 },

    #[error("eigenvalue {value:.9e} lies outside [{lo:.6e}, {hi:.6e}] beyond the clamping tolerance")]
    SpectrumViolation { value: f64, lo: f64, hi: f64 },

    #[error("matrix is not positive semidefinite: lambda_min = {lambda_min:.6e}")]
    NotPositiveSemidefinite { lambda_min: f64 },

    #[error("matrix is not a contraction: spectral norm = {norm:.9}")]
    NotAContraction { norm: f64 },

    #[error("singular matrix in {context}: lambda_min = {lambda_min:.6e}")]
    Singular { context: String, lambda_min: f64 },

    #[error("{value} is outside the domain [{lo}, {hi}]")]
    DomainViolation { value: f64, lo: f64, hi: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid usage: {0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Whether this error reports a failed theorem hypothesis rather than a
    /// broken computation. Trial runners count these as skips, not failures.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self, Error::HypothesisViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
