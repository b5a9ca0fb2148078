//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("unsupported field GF({p}^{n}): {reason}")]
    UnsupportedField { p: u32, n: u32, reason: String },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("unsupported plane order {order} (maximum {max})")]
    UnsupportedOrder { order: u32, max: u32 },

    #[error("map undefined at fundamental point ({0}:{1}:{2})")]
    FundamentalPoint(u32, u32, u32),

    #[error("invalid spread: {0}")]
    InvalidSpread(String),

    #[error("incompatible planes: {0}")]
    Mismatch(String),

    #[error("line {0:?} is not a line of both planes")]
    LineNotShared(Vec<u32>),

    #[error("gcd({a}, {b}) = {gcd}, expected 1")]
    GcdViolation { a: u64, b: u64, gcd: u64 },

    #[error("matrix is singular over GF(2)")]
    SingularMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("zero vector entry at row {row}, column {col}")]
    ZeroEntry { row: usize, col: usize },

    #[error("lambda' = {requested} out of range 1..={max}")]
    LambdaOutOfRange { requested: usize, max: usize },

    #[error("symbol {symbol} out of range at row {row}, column {col} (v = {v})")]
    SymbolOutOfRange { row: usize, col: usize, symbol: u32, v: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
