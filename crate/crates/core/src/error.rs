use std::fmt;

use thiserror::Error;

/// Why a graph failed the almost-tree (path-query reconstructable) check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    NotRooted,
    CycleCreated,
    TransitiveExtraEdge,
    MoreThanOneExtraEdge,
}

impl Rejection {
    pub fn as_str(self) -> &'static str {
        match self {
            Rejection::NotRooted => "not-rooted",
            Rejection::CycleCreated => "cycle-created",
            Rejection::TransitiveExtraEdge => "transitive-extra-edge",
            Rejection::MoreThanOneExtraEdge => "more-than-one-extra-edge",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("generation infeasible: {0}")]
    GenerationInfeasible(String),
    #[error("promise violation: {0}")]
    PromiseViolation(String),
    #[error("rejected: {reason} ({detail})")]
    Rejected { reason: Rejection, detail: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn promise(msg: impl Into<String>) -> Self {
        Error::PromiseViolation(msg.into())
    }

    pub(crate) fn rejected(reason: Rejection, detail: impl Into<String>) -> Self {
        Error::Rejected {
            reason,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
