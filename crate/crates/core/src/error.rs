use thiserror::Error;

/// Errors produced by facetlab operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),

    #[error("invalid simplex {vertices:?}: {reason}")]
    InvalidSimplex { vertices: Vec<u32>, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("chains live over different fields (p={0} vs p={1})")]
    ModulusMismatch(u32, u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: isize, found: isize },

    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("malformed input at `{field}`: {reason}")]
    Malformed { field: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn malformed(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Malformed {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
