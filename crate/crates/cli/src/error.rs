//! Error-to-exit-code mapping: 2 for unusable flag values, 1 for violated
//! model invariants or failed checks, 3 for filesystem trouble. (Flag
//! *syntax* errors exit 2 as well, via the parser itself.)

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The flags parsed but their values make no sense together.
    #[error("usage: {0}")]
    Usage(String),
    /// A model invariant or verification failed at runtime.
    #[error("{0}")]
    Invariant(String),
    /// Reading or writing an artifact failed.
    #[error("i/o on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) => 1,
            CliError::Io { .. } => 3,
        }
    }
}
