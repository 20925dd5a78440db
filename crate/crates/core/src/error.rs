use thiserror::Error;

/// Errors produced while building orbits or scoring them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EcdError {
    #[error("axis {axis}: value {value} outside [{lo}, {hi}]")]
    OutOfRange {
        axis: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("orbit too short: need {needed} points, got {got}")]
    OrbitTooShort { needed: usize, got: usize },

    #[error("inconsistent distributions: {0}")]
    Inconsistent(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} outside its domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("orbit diverged at step {step}")]
    Diverged { step: usize },

    #[error("map step {step} failed: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<EcdError>,
    },

    #[error("logistic equivalence violated at index {index} (deviation {deviation:e})")]
    EquivalenceViolation { index: usize, deviation: f64 },
}

pub type Result<T, E = EcdError> = std::result::Result<T, E>;
