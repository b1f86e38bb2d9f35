use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input out of range: {0}")]
    InputOutOfRange(String),

    #[error("({p}, {q}) does not give a quadratic irrational")]
    NotAnIrrational { p: i64, q: i64 },

    #[error("({p}, {q}) is not normalized (p must be 0 or 1)")]
    NotNormalized { p: i64, q: i64 },

    #[error("x+({p}, {q}) must be positive for the mediant walk")]
    NonPositiveRoot { p: i64, q: i64 },

    #[error("period exceeded the cap of {cap} steps")]
    PeriodOverflow { cap: usize },

    #[error("pre-period of length {len} detected")]
    PrePeriod { len: usize },

    #[error("river cycle exceeded the cap of {cap} steps")]
    CycleOverflow { cap: usize },

    #[error("degenerate river state (a={a}, b={b}, h={h}): square discriminant")]
    DegenerateForm { a: i64, b: i64, h: i64 },

    #[error("discriminant {0} is not 0 or 1 mod 4")]
    InvalidDiscriminant(i64),

    #[error("sieve covers 1..={limit} but {needed} was requested")]
    SieveTooSmall { limit: u64, needed: u64 },

    #[error("could not allocate a divisor table of {0} entries")]
    ResourceLimit(u64),

    #[error("the disc of radius {0} contains no quadratic irrational point")]
    EmptyOmega(u64),

    #[error("weight {0} is not in (0, 1)")]
    InvalidWeight(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn overflow(what: &str) -> Error {
    Error::InputOutOfRange(format!("{what} overflows 64-bit arithmetic"))
}
