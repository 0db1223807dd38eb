use thiserror::Error;

/// Errors raised by the geometry, landmark, witness, persistence and data modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),
    #[error("empty cell")]
    EmptyCell,
    #[error("empty landmark set")]
    EmptyLandmarks,
    #[error("no signal points")]
    NoSignalPoints,
    #[error("budget exceeds cloud: requested {requested}, cloud has {available} points")]
    BudgetExceedsCloud { requested: usize, available: usize },
    #[error("dense core too small: {survivors} survivors for budget {budget}")]
    DenseCoreTooSmall { survivors: usize, budget: usize },
    #[error("index {index} out of range for cloud of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty witness set")]
    EmptyWitnessSet,
    #[error("nu = {nu} exceeds the number of landmarks ({landmarks})")]
    NuTooLarge { nu: usize, landmarks: usize },
    #[error("not a filtration: {0}")]
    NotAFiltration(String),
    #[error("empty foreground")]
    EmptyForeground,
    #[error("image has {available} boundary pixels, {requested} requested")]
    TooFewBoundaryPixels { requested: usize, available: usize },
    #[error("malformed PGM: {0}")]
    Pgm(String),
    #[error("malformed point-cloud CSV: {0}")]
    Csv(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
