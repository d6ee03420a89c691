use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaringError {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid case: {0}")]
    InvalidCase(String),

    #[error("case is not perfect: N = {ambient} is not divisible by r + n = {block}")]
    NotPerfect { ambient: usize, block: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("bundle {bundle} is incompatible with the case: {reason}")]
    IncompatibleBundle { bundle: String, reason: String },

    #[error("kernel has dimension {found}, expected {expected}; the input is degenerate, resample")]
    WrongKernelDim { expected: usize, found: usize },

    #[error("base locus gave {found} points, expected {expected}; positive-dimensional or special locus")]
    MissingPoints { expected: usize, found: usize },

    #[error("linear solve is ill-conditioned (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("degenerate case: {0}")]
    DegenerateCase(String),

    #[error("case is {defect}-defective for k = {k}; the decomposition system has no solutions")]
    Defective { k: usize, defect: usize },

    #[error("numerical rank is ambiguous after {attempts} attempts (best gap {gap:.3e})")]
    Inconclusive { attempts: usize, gap: f64 },

    #[error("monodromy aborted: every path of loop {0} failed")]
    AllPathsFailed(usize),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, WaringError>;

impl From<serde_json::Error> for WaringError {
    fn from(e: serde_json::Error) -> Self {
        WaringError::Serialization(e.to_string())
    }
}
