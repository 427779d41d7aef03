use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("enumeration of {needed} candidates exceeds budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("minimum distance of the zero code is undefined")]
    UndefinedDistance,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("hypothesis `{hypothesis}` violated: {reason}")]
    HypothesisViolation { hypothesis: String, reason: String },

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn hypothesis(hypothesis: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::HypothesisViolation {
            hypothesis: hypothesis.into(),
            reason: reason.into(),
        }
    }
}
