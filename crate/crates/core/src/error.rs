use thiserror::Error;

use crate::inner::NearMiss;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {index} out of range for {what} of size {size}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("subset is on the {found} side, expected {expected}")]
    SideMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("graph has loops; strip them first (loop counts per vertex: {0:?})")]
    LoopsPresent(Vec<u64>),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("{what} guard exceeded: {actual} > {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("inner search exhausted after {attempts} attempts ({near_miss})")]
    SearchExhausted {
        attempts: usize,
        near_miss: Box<NearMiss>,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
