use thiserror::Error;

/// Maps failures to process exit codes: bad inputs vs. numeric/runtime trouble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("budget {budget} below the algorithm minimum of {required} evaluations")]
    BudgetTooSmall { budget: usize, required: usize },

    #[error("objective returned non-finite value {value} at theta {theta:?}")]
    NonFiniteObjective { theta: Vec<f64>, value: f64 },

    #[error("invalid bounds: {message}")]
    InvalidBounds { message: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("step called after the episode finished; reset first")]
    StepAfterDone,

    #[error("context {s} outside [{lo}, {hi}] m")]
    ContextOutOfRange { s: f64, lo: f64, hi: f64 },

    #[error("invalid policy model: {message}")]
    InvalidModel { message: String },

    #[error("reward non-finite ({value}) at context {context}")]
    NonFiniteReward { context: f64, value: f64 },

    #[error("search covariance repair failed: {message}")]
    CovarianceRepair { message: String },

    #[error("dataset column `{name}` not found")]
    MissingColumn { name: String },

    #[error("need at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },

    #[error("malformed input: {message}")]
    Parse { message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetTooSmall { .. }
            | Error::InvalidBounds { .. }
            | Error::DimensionMismatch { .. }
            | Error::ContextOutOfRange { .. }
            | Error::InvalidModel { .. }
            | Error::MissingColumn { .. }
            | Error::TooFewRows { .. }
            | Error::Parse { .. } => ErrorKind::Validation,
            Error::NonFiniteObjective { .. }
            | Error::StepAfterDone
            | Error::NonFiniteReward { .. }
            | Error::CovarianceRepair { .. }
            | Error::Io { .. } => ErrorKind::Numeric,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
