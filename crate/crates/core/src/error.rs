use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("lexicon line {line}: {reason}")]
    Lexicon { line: usize, reason: String },

    /// Corpus file does not match the JSON schema.
    #[error("corpus schema: {0}")]
    Schema(String),

    /// Corpus parsed but violates a dataset rule.
    #[error("corpus validation{}: {rule}", triplet_id.map(|id| format!(" (triplet {id})")).unwrap_or_default())]
    Validation { triplet_id: Option<u32>, rule: String },

    #[error("bad magic: expected {expected:?}, found {found:?}")]
    BadMagic { expected: String, found: String },

    #[error("corrupt header: {0}")]
    HeaderCorrupt(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: u64, found: u64 },

    #[error("non-finite value in {0}")]
    NonFiniteInput(String),

    #[error("feature spaces differ: {left} vs {right}")]
    FeatureSpaceMismatch { left: usize, right: usize },

    #[error("manifest mismatch on field {field:?}: {detail}")]
    ManifestMismatch { field: &'static str, detail: String },

    #[error("expected {expected} values, got {actual}")]
    CountMismatch { expected: usize, actual: usize },

    #[error("incomplete grid, missing: {}", .0.join(", "))]
    IncompleteGrid(Vec<String>),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("no activation record for {0}")]
    MissingRecord(String),

    #[error("duplicate cell {0}")]
    DuplicateCell(String),

    #[error("zero variance in input")]
    DegenerateVariance,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("too few observations: {0} (need at least 3)")]
    TooFewObservations(usize),

    #[error("missing token counts: {0}")]
    MissingTokenCounts(String),

    #[error("missing embedding for {0}")]
    MissingEmbedding(String),

    #[error("unachievable synthetic target: {0}")]
    UnachievableTarget(String),

    #[error("config: {0}")]
    Config(String),

    #[error("json ({context}): {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io { path: path.to_path_buf(), source }
    }

    pub fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json { context: context.into(), source }
    }

    /// Process exit status: 1 invalid input, 2 missing input, 3 inconsistent inputs.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => 2,
            Error::MissingEmbedding(_) | Error::MissingTokenCounts(_) => 2,
            Error::ManifestMismatch { .. }
            | Error::DimensionMismatch(_)
            | Error::FeatureSpaceMismatch { .. }
            | Error::CountMismatch { .. }
            | Error::IncompleteGrid(_)
            | Error::DuplicateCell(_)
            | Error::MissingRecord(_)
            | Error::LengthMismatch(..) => 3,
            _ => 1,
        }
    }

    pub(crate) fn validation(triplet_id: Option<u32>, rule: impl Into<String>) -> Self {
        Error::Validation { triplet_id, rule: rule.into() }
    }
}
