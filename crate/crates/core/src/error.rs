use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} variables, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("ambient rings differ")]
    AmbientMismatch,

    #[error("coefficient fields differ: gf({left}) vs gf({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("invalid degree sequence: {0}")]
    InvalidDegreeSequence(String),

    #[error("degree sequence has an unbounded entry where a finite one is required")]
    InfiniteEntry,

    #[error("monomials of mixed degree")]
    MixedDegrees,

    #[error("{what} = {value} out of range (allowed 0..={max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("Hilbert function not achievable in the box: first violation at degree {0}")]
    NotAchievable(u32),

    #[error("degree slice of {size} monomials exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{0} is not prime (modulus must be a prime below 65536)")]
    NotPrime(u32),

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("value does not fit in 64 bits")]
    Overflow,

    #[error("no regular sequence found after {0} attempts; try a larger prime")]
    AttemptsExhausted(usize),

    #[error("regularity certifiers disagree (hilbert: {hilbert}, dimension: {dimension})")]
    CertifierDisagreement { hilbert: bool, dimension: bool },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
