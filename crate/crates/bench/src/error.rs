use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] depthmark_core::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("missing manifest")]
    MissingManifest,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("empty record set")]
    EmptyRecords,
    #[error("empty radius band")]
    EmptyBand,
    #[error("{0}")]
    Invalid(String),
}

impl BenchError {
    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        BenchError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for BenchError {
    fn from(e: std::io::Error) -> Self {
        BenchError::Io {
            path: String::new(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
