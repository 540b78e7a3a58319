use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by context algebra, clustering, oracles and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown {axis} id {id} (axis has {size} elements)")]
    UnknownId {
        axis: &'static str,
        id: u32,
        size: usize,
    },

    #[error("unknown {axis} label {label:?}")]
    UnknownLabel { axis: &'static str, label: String },

    #[error(
        "element set over a universe of {found} does not fit the {axis} axis of size {expected}"
    )]
    UniverseMismatch {
        axis: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{0} is not in the incidence relation")]
    NotIncident(String),

    #[error("density is undefined for an empty {0} set")]
    EmptySet(&'static str),

    #[error("invalid axis index {0}, expected 1, 2 or 3")]
    InvalidAxis(usize),

    #[error("invalid plane {0:?}, expected GM, GB or MB")]
    InvalidPlane(String),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("density threshold {0} is outside [0, 1]")]
    InvalidThreshold(String),

    #[error(
        "{what} has {size} elements, above the brute-force cap of {cap}; use triclustering instead"
    )]
    CapExceeded {
        what: String,
        size: usize,
        cap: usize,
    },

    #[error("the tricluster store is empty")]
    EmptyStore,

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("generated context would have {cells} candidate triples, above the cap of {cap}")]
    Overflow { cells: u128, cap: u64 },

    #[error("invalid document: {0}")]
    InvalidDocument(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Stream(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
