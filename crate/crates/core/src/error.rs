use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {0} is used more than once among the gate's targets and controls")]
    OverlappingQubits(usize),

    #[error("malformed gate: {0}")]
    InvalidGate(String),

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parameter slot {slot} is not attached to a shiftable rotation angle")]
    NotShiftable { slot: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("trash qubit set is empty")]
    EmptyTrash,

    #[error("batch is empty")]
    EmptyBatch,

    #[error("non-finite {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("cannot decode state: {0}")]
    Decode(String),

    #[error("invalid dataset: {0}")]
    Dataset(String),

    #[error("unknown corruption `{name}`; valid names are: {valid}")]
    UnknownCorruption { name: String, valid: String },

    #[error("malformed {format} file {path}: {reason}")]
    Format {
        format: &'static str,
        path: PathBuf,
        reason: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid report: {0}")]
    Report(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
