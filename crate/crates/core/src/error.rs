use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported algebra dimension {0} (expected 1, 2, 4 or 8)")]
    InvalidBeta(u32),

    #[error("algebra mismatch: beta {left} vs beta {right}")]
    TagMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("octonion (beta = 8) matrices are only supported as scalars or isotropic row vectors: {0}")]
    OctonionRestriction(String),

    #[error("matrix is not Hermitian (max coefficient deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("density diverges at the boundary of the positive definite cone")]
    DivergentDensity,

    #[error("spectrum values must be positive and strictly descending: {0}")]
    Ordering(String),

    #[error("quadrature did not converge: estimate {estimate}, error {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("representation pair mismatch in quaternion spectrum (gap {0:e})")]
    Pairing(f64),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that stem from the caller's configuration rather than from a
    /// computation going wrong at run time.
    pub fn is_config(&self) -> bool {
        !matches!(
            self,
            Error::NotPositiveDefinite { .. }
                | Error::Quadrature { .. }
                | Error::Pairing(_)
                | Error::DivergentDensity
                | Error::Ordering(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
