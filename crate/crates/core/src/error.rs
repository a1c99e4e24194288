use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),

    #[error("polynomial {0} is not irreducible over the given field")]
    NotIrreducible(String),

    #[error("degree must be positive")]
    ZeroDegree,

    #[error("{what}: size {size} exceeds the guard {guard} (raise it with --guard-override)")]
    GuardExceeded { what: &'static str, size: u128, guard: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("extension degree b = {0} violates the hypothesis b > 1")]
    ExtensionDegree(u32),

    #[error("k = {k} exceeds N = {n}: no k-subset of the degree-b irreducibles exists")]
    SubsetTooLarge { k: u64, n: u64 },

    #[error("c_lo = {c_lo} does not exceed the threshold M = {threshold}")]
    BelowThreshold { c_lo: u32, threshold: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
