use thiserror::Error;

/// Errors raised by the algebra, encoders and decoders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field elements belong to different contexts")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent arity {got} does not match polynomial arity {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("length {len} is not compatible with {what}")]
    LengthMismatch { len: usize, what: String },
    #[error("shape {got:?} does not match expected {expected:?}")]
    ShapeMismatch { expected: (usize, usize), got: (usize, usize) },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("leading coefficient polynomial vanishes on the whole field; no translation available")]
    ShiftRequired,
    #[error("D-operator would produce Y_{index} beyond the code order")]
    IndexOverflow { index: usize },
    #[error("line direction must be nonzero")]
    ZeroDirection,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
