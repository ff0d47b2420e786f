use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto a stable
/// exit code (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters or flag combinations.
    #[error("usage: {0}")]
    Usage(String),

    /// A value that does not fit the declared group (digit out of range,
    /// wrong dimension, index past m^n).
    #[error("invalid value: {0}")]
    Validation(String),

    /// A construction could not produce what it promised.
    #[error("construction failed: {0}")]
    Construction(String),

    /// A code-size lookup missed and greedy fallback was disabled.
    #[error("no table entry for C({length}, {distance}) in table '{table}'")]
    Lookup {
        table: &'static str,
        length: u32,
        distance: u32,
    },

    /// Malformed input file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// 2 for usage and input problems, 3 for construction failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Construction(_) | Error::Lookup { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
