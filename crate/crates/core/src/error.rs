use thiserror::Error;

/// Errors raised by the library. Decoding failures are not errors; see
/// [`crate::decoder::DecodeFailure`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime >= 3")]
    NotPrime(u32),
    #[error("{g} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { p: u32, g: u32 },
    #[error("characteristic polynomial of theta is not square-free")]
    NotSquareFree,
    #[error("division by zero in the field")]
    ZeroInverse,
    #[error("operands belong to different field towers")]
    TowerMismatch,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("points are not linearly independent over the base field")]
    DependentPoints,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("message degree exceeds k−1 (degree {degree}, k = {k})")]
    MessageDegree { degree: usize, k: usize },
    #[error("rank {tau} out of range 0..={max}")]
    RankOutOfRange { tau: usize, max: usize },
    #[error("rank metric index must be 1..=4, got {0}")]
    MetricIndex(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
