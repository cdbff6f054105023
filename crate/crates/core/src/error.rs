use thiserror::Error;

/// Errors produced by the library and surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("alpha out of range (0, 1]: {0}")]
    Domain(f64),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects ratios outside `(0, 1]`.
pub fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
        Ok(alpha)
    } else {
        Err(Error::Domain(alpha))
    }
}
