use thiserror::Error;

/// Errors produced by the library.
///
/// Arithmetic is exact, so every failure here is either malformed input, a
/// value outside the requested group, or a search that would exceed its
/// configured budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("expected {expected} residues, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("voice indices must be distinct values in 1..=3, got ({0}, {1})")]
    InvalidVoicePair(usize, usize),

    #[error("matrix is not an element of the voicing group J")]
    NotInJ,

    #[error("matrix is not an element of the extension of J by permutations")]
    NotInExtension,

    #[error("element does not preserve root-position triads")]
    NotInHook,

    #[error("search of {candidates} candidates exceeds budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },

    #[error("{order} is not divisible by {divisor}")]
    NotDivisible { order: u128, divisor: u128 },

    #[error("triads are only defined over Z/12, got modulus {0}")]
    RequiresTwelve(u32),

    #[error("progression must contain at least {min} tuples, got {actual}")]
    ProgressionTooShort { min: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
