use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("identifier 0x{0:X} exceeds the 11-bit range (max 0x7FF)")]
    IdOutOfRange(u32),

    #[error("payload of {0} bytes exceeds the 8-byte CAN data field")]
    PayloadTooLong(usize),

    #[error("arbitration requires at least one contender")]
    NoContenders,

    #[error("probability {0} outside [0, 1]")]
    ProbabilityDomain(f64),

    #[error("cannot compute bit statistics over an empty window")]
    EmptyWindow,

    #[error("window {0} must be positive")]
    BadWindowPolicy(&'static str),

    #[error("scenario has no ECUs")]
    EmptyScenario,

    #[error("invalid scenario: {0}")]
    BadScenario(String),

    #[error("invalid attack scenario: {0}")]
    BadAttack(String),

    #[error("source {0:?} never attempted a transmission")]
    NoAttempts(String),

    #[error("template needs at least 2 measurements to estimate a range, got {0}")]
    TooFewMeasurements(usize),

    #[error("window policy does not match the template ({0})")]
    PolicyMismatch(String),

    #[error("no injected messages to score")]
    NoInjections,

    #[error("constraints can only be derived from an alerted verdict")]
    NotAlerted,

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("cannot infer {k} identifiers with rank {n}")]
    RankTooSmall { k: usize, n: usize },

    #[error("hit rate over an empty trial list")]
    NoTrials,

    #[error("empty attack window (f*T0 = 0)")]
    EmptyAttackWindow,

    #[error("{path}:{line}: {msg}")]
    LogParse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn log_parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::LogParse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
