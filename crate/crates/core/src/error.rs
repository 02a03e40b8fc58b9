use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidShape(String),

    #[error("invalid plant parameters: {0}")]
    InvalidParams(String),

    #[error("pusher velocity separates from the contact (normal component {normal_speed:.3e})")]
    SeparatingContact { normal_speed: f64 },

    #[error("invalid control: {0}")]
    InvalidControl(String),

    #[error("gaussian process needs at least one training sample")]
    EmptyTrainingSet,

    #[error("training inputs and targets disagree: {0}")]
    DimensionMismatch(String),

    #[error("kernel matrix is not positive definite (condition estimate {condition_estimate:.3e})")]
    Factorization { condition_estimate: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed {what}: {message}")]
    Parse { what: &'static str, message: String },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
