use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial rings do not match: {0}")]
    RingMismatch(String),

    #[error("too many variables: {0} (at most {max} supported)", max = crate::groebner::MAX_VARS)]
    TooManyVariables(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("iteration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
