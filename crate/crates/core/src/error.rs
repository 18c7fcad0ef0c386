use thiserror::Error;

use crate::interval::IntervalError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("refinement diverged: {0}")]
    Diverged(String),
    #[error("invalid config: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
