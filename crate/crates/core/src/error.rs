use thiserror::Error;

use crate::expr::ParseError;

/// Errors raised by the approximation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polynomial degree {degree} exceeds N = {n}")]
    DegreeExceedsOrder { degree: usize, n: usize },

    #[error("double factorial undefined for even argument {0}")]
    EvenDoubleFactorial(i64),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("expansion order j = {j} is below 2k = {two_k}")]
    OrderBelowLemmaRange { j: usize, two_k: usize },

    #[error("y = {y} is below the convergence threshold {threshold}")]
    BelowConvergenceThreshold { y: f64, threshold: f64 },

    #[error("input points are not sorted ascending (index {0})")]
    Unsorted(usize),

    #[error("scattered sequence exhausted: no element >= {0}")]
    Exhausted(String),

    #[error("invalid center set: {0}")]
    InvalidCenters(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("function evaluation failed at x = {x}: {message}")]
    Evaluation { x: f64, message: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
