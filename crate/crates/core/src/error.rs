use thiserror::Error;

use crate::algebra::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("{0} is not a field")]
    NotAField(Ring),
    #[error("monomial order is not global")]
    NonGlobalOrder,
    #[error("operation undefined on the zero element")]
    ZeroInput,
    #[error("commutator coefficient {0} of the lift is not divisible by p")]
    NotDeformationDivisible(String),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("prime {prime} divides the denominator {denominator}")]
    BadPrime { prime: u64, denominator: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no points found on the support")]
    NoPointsFound,
    #[error("support is empty (unit annihilator)")]
    EmptySupport,
    #[error("{what} exceeds the limit {limit}")]
    TooLarge { what: String, limit: u64 },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("expression mixes Weyl (x, d) and twisted (X, Xi) variables")]
    MixedAlphabets,
    #[error("expected an expression in the {expected} alphabet")]
    WrongAlphabet { expected: &'static str },
    #[error("invalid corpus: {0}")]
    Corpus(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
