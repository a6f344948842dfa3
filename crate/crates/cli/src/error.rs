use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] freecone::Error),
}

impl CliError {
    /// 1 for bad input, 3 for a size bound, 4 for an internal inconsistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                freecone::Error::GroundSetTooLarge { .. } | freecone::Error::TooManyElements(_),
            ) => 3,
            _ => 1,
        }
    }
}
