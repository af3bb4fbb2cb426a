use thiserror::Error;

/// Errors produced by scenario generation, the solver and the run layers.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("scenario generation failed after {attempts} rejected draws")]
    GenerationFailure { attempts: u64 },

    #[error("station {station} has no enabled link")]
    NoEnabledLink { station: u32 },

    #[error("flow cannot be placed on a link with zero data rate")]
    ZeroRateLink,

    #[error("config error: {0}")]
    Config(String),

    #[error("experiment failed: {0}")]
    Experiment(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("could not parse {path}: {detail}")]
    Parse { path: String, detail: String },
}

pub type Result<T> = std::result::Result<T, SimError>;
