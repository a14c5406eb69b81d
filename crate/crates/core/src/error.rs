use thiserror::Error;

/// Failures reported by the library. The CLI maps `CheckFailed` to exit code 1
/// and configuration problems to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("jet is not unipotent: {0}")]
    NotUnipotent(String),
    #[error("linear part is singular")]
    SingularLinearPart,
    #[error("composite of consecutive differentials is nonzero")]
    CompositionNonzero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("infeasible cut: {0}")]
    InfeasibleCut(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
