use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different coefficient fields ({0} vs {1})")]
    DomainMismatch(String, String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field of size {size} has fewer than r = {r} elements")]
    FieldTooSmall { size: u64, r: usize },
    #[error("invalid anchors: {0}")]
    InvalidAnchors(String),
    #[error("cannot specialize epsilon = 0 in an expression with negative epsilon exponents")]
    ZeroSpecialization,
    #[error("Vandermonde and Lagrange interpolation disagree")]
    InconsistentInterpolation,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("empty word")]
    EmptyWord,
    #[error("epsilon search exceeded {0} candidates")]
    IterationCapExceeded(usize),
    #[error("enumeration of {needed} polynomials exceeds the cap of {cap}")]
    EnumerationCap { needed: u128, cap: u128 },
    #[error("value known only modulo eps^{have}, but eps^{need} is required")]
    InsufficientPrecision { have: i64, need: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
