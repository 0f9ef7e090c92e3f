use thiserror::Error;

/// Errors shared across the whole solver suite.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance does not have the shape the called solver supports.
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),

    /// A proposed control solution violates a structural constraint.
    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    /// A work budget (subset count, node count or wall clock) was exceeded.
    /// Distinct from a "no" answer: the search was cut short.
    #[error("resource exhausted: {0}")]
    ResourceExhausted(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedInstance(msg.into())
    }

    pub fn invalid_solution(msg: impl Into<String>) -> Self {
        Error::InvalidSolution(msg.into())
    }

    pub fn exhausted(msg: impl Into<String>) -> Self {
        Error::ResourceExhausted(msg.into())
    }

    pub fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}
