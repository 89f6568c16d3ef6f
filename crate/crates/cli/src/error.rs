use std::path::PathBuf;

use commcrit::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{id}: invalid permutation: {message}")]
    InvalidPermutation { id: String, message: String },
    #[error("{id}: expected order {expected}, computed {actual}")]
    OrderMismatch { id: String, expected: u64, actual: u64 },
    #[error("{id}: tag `{tag}` does not hold for the group")]
    TagMismatch { id: String, tag: String },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{id}: {source}")]
    Group {
        id: String,
        #[source]
        source: GroupError,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn group(id: &str, source: GroupError) -> Self {
        CliError::Group {
            id: id.to_string(),
            source,
        }
    }

    /// Process exit status for this error: load and usage problems are 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Group { .. } => 1,
            _ => 2,
        }
    }
}
