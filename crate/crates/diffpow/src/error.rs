use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: operands belong to different rings")]
    RingMismatch,
    #[error("non-exact division: coefficient {coeff} is not divisible by {divisor}")]
    NonExactDivision { coeff: String, divisor: String },
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("parse error at byte {position}: {message}")]
    ParseError { position: usize, message: String },
    #[error("arity mismatch: expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("exponent overflow while multiplying monomials")]
    DegreeOverflow,
    #[error("computation budget exceeded ({0})")]
    BudgetExceeded(String),
    #[error("brute-force membership inconclusive: degree bound {bound} below degree {needed}")]
    Inconclusive { bound: u64, needed: u64 },
    #[error("the prime p does not belong to the ideal")]
    PNotInIdeal,
    #[error("element does not lie in the summand subring")]
    NotInSummand,
    #[error("saturation witness lies in the prime ideal")]
    WitnessInPrime,
    #[error("Reynolds operator undefined: averaging does not divide exactly over the integers")]
    ReynoldsNotDefined,
    #[error("module-generator search exceeded degree cap {cap}")]
    GeneratorBoundExceeded { cap: u64 },
    #[error("mixed differential powers are unavailable for this summand/prime (n = {n})")]
    MixedPowerUnavailable { n: u32 },
    #[error("config error: {0}")]
    ConfigError(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
