use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum GafError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric failure: {what} (achieved {achieved:e})")]
    NumericFailure { what: String, achieved: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPsd { eigenvalue: f64 },

    #[error("ill-conditioned Gram matrix: det = {det:e}")]
    IllConditioned { det: f64 },

    #[error("size {n} exceeds the limit {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("degenerate kernel: K(z,z) = {value:e}")]
    DegenerateKernel { value: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GafError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(GafError::InvalidArgument(msg.into()))
}
