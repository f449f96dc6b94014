use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have at least one coordinate")]
    EmptyVector,
    #[error("coordinate {index} is not finite")]
    NonFiniteCoordinate { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("missing input `{0}`")]
    MissingInput(&'static str),
    #[error("gamma = {gamma} is outside the admissible range (limit {limit})")]
    GammaOutOfRange { gamma: f64, limit: f64 },
    #[error("iteration produced a non-finite value")]
    NonFinite,
    #[error("resolvent inner iteration is not contracting")]
    ContractionFailure,
    #[error("inner iteration budget of {0} steps exhausted")]
    InnerBudgetExhausted(u64),
    #[error("this check requires the Euclidean norm")]
    NormMismatch,
    #[error("ghal requires D")]
    MissingDiameter,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}
