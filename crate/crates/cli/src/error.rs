use std::path::PathBuf;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for invalid input, 3 for a failed certificate, 4 for solver failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Io { .. } => 2,
            CliError::Certification(_) => 3,
            CliError::NonConvergence(_) => 4,
        }
    }
}

impl From<icewave_core::Error> for CliError {
    fn from(e: icewave_core::Error) -> Self {
        use icewave_core::Error as E;
        match e {
            E::NonConvergence { .. } | E::Singular(_) => CliError::NonConvergence(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
