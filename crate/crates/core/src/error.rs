use thiserror::Error;

/// Errors raised by the workbench operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a basic triple: {0}")]
    NotBasicTriple(String),

    #[error("{0} is not an octavian integer")]
    NotInRing(String),

    #[error("expected norm {expected}, found {found}")]
    WrongNorm { expected: String, found: String },

    #[error("{0} is not a zero of x^2 + x + 2")]
    NotLambda(String),

    #[error("vector has non-associative entries; no projector is defined")]
    NotAssociative,

    #[error("zero vector")]
    ZeroVector,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("E8 sublattices are not complementary (need sum = O and intersection = 2O)")]
    NotComplementary,

    #[error("orbit exceeded the cap of {cap} points")]
    OrbitCap { cap: usize },

    #[error("image of a domain vector is not integral at denominator {0}")]
    NonIntegralImage(i64),

    #[error("seed orbit spans only rank {0} of 24; the permutation image would not be faithful")]
    NotSpanning(usize),

    #[error("projective action is not well defined: {0}")]
    WellDefinedness(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
