use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dce_core::Error),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

/// Machine-readable error record written to stderr.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_row: Option<usize>,
}

fn core_kind(e: &dce_core::Error) -> &'static str {
    use dce_core::Error::*;
    match e {
        Argument(_) => "argument",
        InvalidState(_) => "invalid_state",
        Domain(_) => "domain",
        Degenerate(_) => "degenerate",
        Shape(_) => "shape",
        Bracketing { .. } => "bracketing",
        Convergence { .. } => "convergence",
        PartialSweep { source, .. } => core_kind(source),
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 5,
            CliError::Core(e) => match core_kind(e) {
                "argument" => 2,
                "bracketing" | "convergence" => 4,
                _ => 3,
            },
        }
    }

    pub fn record(&self) -> ErrorRecord {
        let (kind, failed_row) = match self {
            CliError::Usage(_) => ("argument", None),
            CliError::Io { .. } => ("io", None),
            CliError::Core(e @ dce_core::Error::PartialSweep { index, .. }) => {
                (core_kind(e), Some(*index))
            }
            CliError::Core(e) => (core_kind(e), None),
        };
        ErrorRecord {
            kind,
            message: self.to_string(),
            exit_code: self.exit_code(),
            failed_row,
        }
    }
}
