use thiserror::Error;

/// Failure of a CLI command, carrying the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] denclue::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// 2 usage, 3 bad data, 4 numeric failure, 1 anything else (I/O).
    pub fn exit_code(&self) -> i32 {
        use denclue::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::InvalidConfig(_) | E::NonPositiveBandwidth(_) => 2,
                E::EmptyInput
                | E::RaggedRows { .. }
                | E::NonFinite { .. }
                | E::DimensionMismatch { .. }
                | E::InvalidParams(_)
                | E::Parse { .. } => 3,
                E::NonFiniteUpdate { .. } | E::SelectionFailure { .. } => 4,
                E::Io(_) => 1,
            },
            CliError::Io { .. } | CliError::Json(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
