use std::path::PathBuf;

use mts_spectrum::logic::LogicError;
use mts_spectrum::lts::ParseError;
use mts_spectrum::oracle::OracleError;
use mts_spectrum::quantitative::TraceMetricError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: ParseError },
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Model { .. } => 1,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<TraceMetricError> for CliError {
    fn from(e: TraceMetricError) -> Self {
        match e {
            TraceMetricError::BruteTooLarge(_) => CliError::Budget(e.to_string()),
            TraceMetricError::MissingCell { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LogicError> for CliError {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::Budget { .. } | LogicError::TooLarge(_) => CliError::Budget(e.to_string()),
            LogicError::Trace(t) => t.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Budget(e.to_string())
    }
}
