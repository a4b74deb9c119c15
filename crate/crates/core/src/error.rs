use thiserror::Error;

/// Errors produced by search construction, configuration, and execution.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid bounds: {reason}")]
    InvalidBounds { reason: String },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("objective returned a non-finite value ({value})")]
    NonFiniteFitness { value: f64 },

    #[error("point fitness has not been evaluated")]
    UnevaluatedFitness,

    #[error("population of {actual} is below the minimum of {minimum}")]
    PopulationTooSmall { minimum: usize, actual: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown benchmark `{name}`")]
    UnknownBenchmark { name: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
