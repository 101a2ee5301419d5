use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Why a local monodromy was rejected by the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RejectReason {
    NotQuasiUnipotent,
    MixedCase,
    ExcludedByPolarization,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RejectReason::NotQuasiUnipotent => "NotQuasiUnipotent",
            RejectReason::MixedCase => "MixedCase",
            RejectReason::ExcludedByPolarization => "ExcludedByPolarization",
        };
        f.write_str(s)
    }
}

/// A classification verdict that is not an allowed monodromy type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("{reason}: {detail}")]
pub struct ClassificationError {
    pub reason: RejectReason,
    pub detail: String,
}

impl ClassificationError {
    pub fn new(reason: RejectReason, detail: impl Into<String>) -> Self {
        Self {
            reason,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error(transparent)]
    Classification(#[from] ClassificationError),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("h0 of a degree-{degree} line bundle on a genus-{genus} curve is not determined by its degree")]
    IndeterminateFromDegree { degree: i64, genus: u32 },

    #[error("unknown degree: {0}")]
    UnknownDegrees(String),

    #[error("table schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("at point {label:?}: {source}")]
    AtPoint {
        label: String,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code used by the CLI's structured errors.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::Dimension(_) => "Dimension",
            Error::Singular => "Singular",
            Error::NotUnipotent => "NotUnipotent",
            Error::NotNilpotent => "NotNilpotent",
            Error::Classification(c) => match c.reason {
                RejectReason::NotQuasiUnipotent => "NotQuasiUnipotent",
                RejectReason::MixedCase => "MixedCase",
                RejectReason::ExcludedByPolarization => "ExcludedByPolarization",
            },
            Error::Precondition(_) => "Precondition",
            Error::InconsistentInput(_) => "InconsistentInput",
            Error::IndeterminateFromDegree { .. } => "IndeterminateFromDegree",
            Error::UnknownDegrees(_) => "UnknownDegrees",
            Error::Schema { .. } => "Schema",
            Error::AtPoint { source, .. } => source.code(),
            Error::Io { .. } => "Io",
            Error::Json(_) => "Json",
        }
    }

    /// Strips point annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPoint { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
