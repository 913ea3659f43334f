use std::path::Path;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] sgf_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// Flag combinations clap cannot express; reported like clap's own errors.
    #[error("{0}")]
    Usage(String),
    #[error("{0} of {1} criteria failed")]
    VerificationFailed(usize, usize),
}

impl CliError {
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), message: err.to_string() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.kind(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
            CliError::VerificationFailed(..) => "VerificationFailed",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// One-line JSON document for stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;
