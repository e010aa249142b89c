use thiserror::Error;

/// Errors raised by the walk simulator, the limit-density evaluator and the
/// command-line layer.
#[derive(Debug, Error)]
pub enum WalkError {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two values that must agree in dimension or spin do not.
    #[error("usage error: {0}")]
    Usage(String),

    /// The limit density does not exist as a continuous density for this
    /// parameter set (beta = 0 or beta = pi).
    #[error("degenerate spec: {0}")]
    Degenerate(String),

    /// An input (qudit vector, file) could not be accepted.
    #[error("input error: {0}")]
    Input(String),

    /// A numerical self-check failed.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, WalkError>;

impl WalkError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        WalkError::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        WalkError::Usage(msg.into())
    }
}
