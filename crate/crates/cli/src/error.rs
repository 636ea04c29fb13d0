use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input. The message starts with the offending field.
    #[error("{field}: {message}")]
    Usage { field: String, message: String },
    #[error("unknown figure `{0}` (expected fig1-left, fig1-mid, fig1-right or fig2)")]
    UnknownFigure(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn usage(field: &str, message: impl std::fmt::Display) -> Self {
        CliError::Usage { field: field.to_string(), message: message.to_string() }
    }

    pub fn io(path: impl std::fmt::Display, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_string(), source }
    }
}
