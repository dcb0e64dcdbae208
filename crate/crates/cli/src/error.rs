use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or out-of-range configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] platoon_access::Error),

    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(section: &str, err: platoon_access::Error) -> Self {
        match err {
            platoon_access::Error::InvalidParameter { field, reason } => {
                CliError::Config(format!("{section}.{field}: {reason}"))
            }
            other => CliError::Config(format!("{section}: {other}")),
        }
    }

    /// 2 for configuration problems, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
