use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precision exhausted: +32-bit recheck still disagrees at {bits} bits")]
    PrecisionExhausted { bits: usize },

    #[error("ambiguous sign: |value| below noise floor {noise:e} at {bits} bits")]
    AmbiguousSign { noise: f64, bits: usize },

    #[error("no convergence: {0}")]
    ConvergenceFailure(String),

    #[error("argument outside admissible window: {0}")]
    DomainError(String),

    #[error("grid too coarse: extrapolation error {error_est:e} exceeds tolerance {tol:e} at k = {k}")]
    GridTooCoarse { k: usize, error_est: f64, tol: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("bracketing failed: {0}")]
    BracketingFailure(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
