use thiserror::Error;

/// Everything that makes a command exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{field}: {message}")]
    Input { field: String, message: String },
    #[error("{field}: {source}")]
    Core {
        field: String,
        source: infocalc_core::Error,
    },
}

impl CliError {
    pub fn field(field: impl Into<String>, source: infocalc_core::Error) -> Self {
        CliError::Core {
            field: field.into(),
            source,
        }
    }

    pub fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Input {
            field: field.into(),
            message: message.into(),
        }
    }
}
