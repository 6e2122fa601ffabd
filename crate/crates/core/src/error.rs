use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph is not connected: `{0}` cannot reach `{1}`")]
    Disconnected(String, String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("mass mismatch: {0} vs {1}")]
    MassMismatch(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0} needs float mode")]
    RequiresFloat(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("state space too large: {size} states exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("solver did not converge: {0}")]
    NoConvergence(String),
    #[error("spectral check failed: {0}")]
    SpectralViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}
