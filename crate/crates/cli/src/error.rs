use bohmlab_core::BohmError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("config syntax: {0}")]
    Syntax(String),

    #[error("missing required key `{0}`")]
    MissingKey(String),

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("{key}: {message}")]
    InvalidValue { key: String, message: String },

    #[error("subcommand `{subcommand}` cannot run a `{scenario}` configuration")]
    ScenarioMismatch { subcommand: String, scenario: String },

    #[error("unknown series `{0}`")]
    UnknownSeries(String),

    #[error(transparent)]
    Core(#[from] BohmError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Syntax(_) => "config_syntax",
            CliError::MissingKey(_) => "missing_key",
            CliError::UnknownKey(_) => "unknown_key",
            CliError::InvalidValue { .. } => "invalid_value",
            CliError::ScenarioMismatch { .. } => "scenario_mismatch",
            CliError::UnknownSeries(_) => "unknown_series",
            CliError::Core(e) => e.kind(),
        }
    }

    /// Dotted config key the error refers to, when there is one.
    pub fn key(&self) -> Option<String> {
        match self {
            CliError::MissingKey(k) | CliError::UnknownKey(k) => Some(k.clone()),
            CliError::InvalidValue { key, .. } => Some(key.clone()),
            CliError::Core(BohmError::InvalidConfig(msg)) => {
                msg.split_once(':').map(|(k, _)| k.trim().to_string()).filter(|k| !k.contains(' '))
            }
            _ => None,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord { error: self.kind().to_string(), key: self.key(), message: self.to_string() }
    }
}

/// Contents of `error.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ErrorRecord {
    pub error: String,
    pub key: Option<String>,
    pub message: String,
}
