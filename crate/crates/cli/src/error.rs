use std::path::PathBuf;

use thiserror::Error;
use treeaut::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: CoreError },

    #[error("{0}")]
    Input(CoreError),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Format { .. } | CliError::Input(_) => 4,
            CliError::Invariant(_) => 5,
        }
    }
}

/// Errors caused by the user's data map to exit 4; anything else escaping the
/// library is a broken invariant.
impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Format { .. }
            | CoreError::TermSyntax { .. }
            | CoreError::UnknownSymbol { .. }
            | CoreError::ArityMismatch { .. }
            | CoreError::DuplicateSymbol { .. }
            | CoreError::DuplicateState(_)
            | CoreError::UnknownState(_)
            | CoreError::EmptyTargets => CliError::Input(e),
            other => CliError::Invariant(other.to_string()),
        }
    }
}
