use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while parsing experiment configuration, executing a seed
/// batch, or persisting artifacts.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// A config document line is not of the form `key = value`.
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    /// A key outside the config vocabulary.
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    /// A known key that the selected algorithm does not accept.
    #[error("key `{key}` does not apply to algorithm `{algorithm}`")]
    InapplicableKey {
        key: String,
        algorithm: &'static str,
    },
    /// A value that failed to parse or fell outside its documented range.
    #[error("invalid value `{value}` for `{key}`: expected {expected}")]
    InvalidValue {
        key: &'static str,
        value: String,
        expected: String,
    },
    /// A required key that was never supplied.
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    /// Cross-field or document-level validation failure.
    #[error("{0}")]
    Invalid(String),
    /// A trace CSV that does not match the expected shape.
    #[error("trace line {line}: {reason}")]
    TraceFormat { line: usize, reason: String },
    /// The engine failed while executing one seed of the batch.
    #[error("seed {seed}: {source}")]
    Run { seed: u64, source: sfs_core::Error },
    /// Reading or writing a run artifact failed.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl HarnessError {
    /// Process exit code for this error class: 1 for anything the user can
    /// fix in the config or flags, 2 for failures at run time.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Run { .. } | HarnessError::Io { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
