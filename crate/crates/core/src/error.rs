use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("matrix is not symmetric: d[{i}][{j}] = {a} but d[{j}][{i}] = {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },

    #[error("generalized-metric condition fails: d[{i}][{i}] = {dii} > d[{i}][{j}] = {dij}")]
    DiagonalViolation { i: usize, j: usize, dii: f64, dij: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("non-finite value {value} at ({row}, {col})")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("too large for exact GH: {cost} function pairs exceeds cap {cap}")]
    TooLargeForExactGh { cost: f64, cap: f64 },

    #[error("relation is not a correspondence (left_total = {left_total}, right_total = {right_total})")]
    NotCorrespondence { left_total: bool, right_total: bool },

    #[error("relation is not left-total over the source vertices")]
    NotLeftTotal,

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("invalid filtered complex: {0}")]
    InvalidComplex(String),

    #[error("invalid range: a = {a} > b = {b}")]
    InvalidRange { a: f64, b: f64 },

    #[error("brute-force bottleneck limited to {cap} points, got {got}")]
    BruteForceCap { cap: usize, got: usize },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
