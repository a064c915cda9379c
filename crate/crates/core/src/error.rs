use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Rankings or profiles that do not describe the same candidate universe,
    /// or sequences that are not permutations.
    #[error("structural error: {0}")]
    Structural(String),

    /// Malformed input text. `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An exponential-time routine was asked to run past its configured limit.
    #[error("{what} needs {actual} candidates but the limit is {limit}")]
    Resource {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// Input that could not be read at all.
    #[error("{0}")]
    Io(String),

    /// Invalid parameter values (theta, lambda, r, ...).
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Structural(_) | Error::Io(_) => 2,
            Error::Resource { .. } => 3,
            Error::Invalid(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
