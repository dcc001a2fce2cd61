use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("unsupported size {n}x{m} (oracle limit is {limit}x{limit})")]
    UnsupportedSize { n: usize, m: usize, limit: usize },

    #[error("equilibrium solver failed: {0}")]
    SolverFailure(String),

    #[error("support reduction is empty (|B| = {support_x}, |N| = {support_y})")]
    EmptyReduction { support_x: usize, support_y: usize },

    #[error("game is degenerate")]
    Degenerate,

    #[error("step size too large: exponent overflow at iteration {iter}")]
    StepSizeTooLarge { iter: usize },

    #[error("invalid solver config: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
