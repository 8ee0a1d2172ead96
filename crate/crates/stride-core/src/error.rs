use thiserror::Error;

/// Coarse classification used by callers that need to map failures to
/// process exit codes: bad inputs vs. numeric/runtime trouble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {message}")]
    InvalidParam {
        field: &'static str,
        message: String,
    },

    #[error("gait command exceeds limit on {axis}: |{value}| > {limit}")]
    CommandLimit {
        axis: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("singularity guard violated: g + z_acc = {value} <= {eps}{}", match .index { Some(i) => format!(" at sample {i}"), None => String::new() })]
    SingularityGuard {
        index: Option<usize>,
        value: f64,
        eps: f64,
    },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("tridiagonal solve failed: zero or non-finite pivot at index {pivot}")]
    SolverFailed { pivot: usize },

    #[error("leg cannot reach at sample {index}: horizontal distance {distance:.4} m >= max leg extension {max_reach:.4} m")]
    LegOverextended {
        index: usize,
        distance: f64,
        max_reach: f64,
    },

    #[error("target out of reach: required {required:.4} m, reachable range [{min_reach:.4}, {max_reach:.4}] m")]
    Unreachable {
        required: f64,
        min_reach: f64,
        max_reach: f64,
    },

    #[error("swing phase {value} outside [0, 1]")]
    PhaseOutOfRange { value: f64 },

    #[error("time {t:.4} s outside plan duration [0, {duration:.4}] s")]
    TimeOutOfRange { t: f64, duration: f64 },

    #[error("degenerate support polygon: {message}")]
    DegeneratePolygon { message: String },

    #[error("joint `{joint}` = {value:.4} rad outside limits [{lo:.4}, {hi:.4}]")]
    JointLimit {
        joint: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("{stage} stage failed: {source}")]
    PipelineStage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

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
            Error::InvalidParam { .. }
            | Error::CommandLimit { .. }
            | Error::TooFewSamples { .. }
            | Error::PhaseOutOfRange { .. }
            | Error::TimeOutOfRange { .. }
            | Error::DegeneratePolygon { .. }
            | Error::Parse { .. } => ErrorKind::Validation,
            Error::SingularityGuard { .. }
            | Error::SolverFailed { .. }
            | Error::LegOverextended { .. }
            | Error::Unreachable { .. }
            | Error::JointLimit { .. }
            | Error::Io { .. } => ErrorKind::Numeric,
            Error::PipelineStage { source, .. } => source.kind(),
        }
    }

    pub(crate) fn at_stage(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::PipelineStage {
            stage,
            source: Box::new(source),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
