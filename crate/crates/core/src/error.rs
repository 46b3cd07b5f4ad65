use std::path::PathBuf;

use num_bigint::BigInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("truncation bounds differ: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("truncation bound must be positive")]
    ZeroBound,

    #[error("sparse series terms must have strictly increasing indices <= {bound} and nonzero coefficients")]
    InvalidSparseTerms { bound: usize },

    #[error("{0} is not an odd prime fitting a machine word")]
    NotOddPrime(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("even weight only (got weight {0})")]
    OddWeight(u32),

    #[error("weight must be at least {min} (got {got})")]
    WeightTooSmall { got: u32, min: u32 },

    #[error("level must be positive")]
    ZeroLevel,

    #[error("odd Bernoulli index {0} is not supported")]
    OddBernoulliIndex(u32),

    #[error("normalizing constant of E_{weight} is not integral at n = {index}")]
    InexactNormalization { weight: u32, index: usize },

    #[error("division by {divisor} is inexact at index {index}")]
    InexactDivision { divisor: u64, index: usize },

    #[error("eta quotient level {0} is not one of 2, 3, 5, 11")]
    UnsupportedEtaLevel(u64),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("{path}: missing index {index}")]
    MissingIndex { path: PathBuf, index: usize },

    #[error("{path}: unsupported character `{character}` (only trivial is supported)")]
    UnsupportedCharacter { path: PathBuf, character: String },

    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, #[source] source: std::io::Error },

    #[error("discriminant of [{0}] vanishes; the model is singular")]
    SingularCurve(String),

    #[error("p = {p} divides the discriminant; reduction is bad")]
    BadPrime { p: u64 },

    #[error("p = {p} does not divide the discriminant; reduction is good")]
    GoodPrime { p: u64 },

    #[error("Hasse bound violated at p = {p}: a_p = {ap}")]
    HasseViolation { p: u64, ap: i64 },

    #[error("a_p = {ap} at bad prime {p} is outside {{-1, 0, 1}}")]
    BadPrimeEigenvalue { p: u64, ap: BigInt },

    #[error("prime {p}: bad-prime flag disagrees with level {level}")]
    ProvenanceMismatch { p: u64, level: u64 },

    #[error("prime {p} is missing from the eigenvalue table")]
    MissingPrime { p: u64 },

    #[error("index {index} exceeds available coefficient coverage {bound}")]
    InsufficientCoverage { index: usize, bound: usize },

    #[error("form `{0}` is not normalized (need a(0) = 0 and a(1) = 1)")]
    NotNormalized(String),
}
