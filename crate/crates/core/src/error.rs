use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} outside the supported range 2..=8")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("forms of degree {0} are not supported (maximum 3)")]
    UnsupportedDegree(usize),
    #[error("no structure map exists for dimension {0}")]
    NoStructureMap(usize),
    #[error("current component {index} has imaginary part {imag:e}")]
    NonRealCurrent { index: usize, imag: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("metric is singular at the evaluation point")]
    SingularMetric,
    #[error("Gram-Schmidt breakdown at pivot {0}")]
    FrameBreakdown(usize),
    #[error("point outside the chart domain")]
    OutsideDomain,
    #[error("integration step failed: {0}")]
    StepFailure(String),
    #[error("unknown geometry '{name}'; known: {known}")]
    UnknownGeometry { name: String, known: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
