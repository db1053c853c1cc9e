use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point out of chart range: {0}")]
    ChartDomain(String),

    #[error("grid resolution {got} too small for truncation (need at least {need})")]
    GridResolution { need: usize, got: usize },

    #[error("conjugation leaves truncation for label {0}")]
    ConjugationLeavesTruncation(String),

    #[error("coefficient vector belongs to a different spectrum")]
    SpectrumMismatch,

    #[error("isometry invalid for backend: {0}")]
    InvalidIsometry(String),

    #[error("truncation leakage on {count} pair(s), first offenders: {examples}")]
    Leakage { count: usize, examples: String },

    #[error("gauge character fails the fusion 1-cocycle check (defect {defect:.3e})")]
    GaugeCocycle { defect: f64 },

    #[error("weight fails the equivariance criterion for this isometry (defect {defect:.3e})")]
    Equivariance { defect: f64 },

    #[error("{0}")]
    Config(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
