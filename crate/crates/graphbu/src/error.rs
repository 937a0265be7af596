use thiserror::Error;

/// Crate-wide error type.
///
/// The variants split along the CLI exit-code contract: input problems
/// (`Parse`, `InvalidGraph`, `InvalidInvolution`, `InvalidInput`) map to
/// exit code 2, while `Internal` flags a broken invariant that should be
/// unreachable for well-formed inputs and maps to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal verification error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
