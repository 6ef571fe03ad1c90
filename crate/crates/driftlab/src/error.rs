//! Error types shared across the crate.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Tensor or parameter dimensions do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Caller violated a precondition (empty dataset, bad flag value, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A class label falls outside the valid range.
    #[error("label {label} out of range for {classes} classes")]
    Label { label: usize, classes: usize },

    /// Non-finite values appeared where finite ones are required.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Malformed binary input (IDX or dataset container).
    #[error("format error at byte offset {offset}: {msg}")]
    Format { offset: u64, msg: String },

    /// Glyph generation failed its built-in distinctness assertion.
    #[error("generation error: {0}")]
    Generation(String),

    /// Every adaptation candidate failed.
    #[error("adaptation error: {0}")]
    Adaptation(String),

    /// Checkpoint carries an unknown format version.
    #[error("checkpoint format version {found} unsupported (expected {expected})")]
    Version { found: u32, expected: u32 },

    /// Checkpoint digest does not match its content.
    #[error("checkpoint integrity failure: {0}")]
    Integrity(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 1 usage, 2 data/format, 3 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Shape(_) | Error::Label { .. } => 1,
            Error::Numeric(_) => 3,
            _ => 2,
        }
    }
}
