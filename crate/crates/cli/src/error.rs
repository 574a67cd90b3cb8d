use thiserror::Error;

/// Errors reported by the command-line tool. Each variant prints with its own prefix.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size limit: {0}")]
    SizeLimit(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// A check ran and failed; the report has already been produced.
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<gschow::Error> for CliError {
    fn from(e: gschow::Error) -> CliError {
        match e {
            gschow::Error::Parse { .. } => CliError::Parse(e.to_string()),
            gschow::Error::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Json(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
