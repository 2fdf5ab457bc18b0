use std::path::PathBuf;

use thiserror::Error;

use crate::kernel::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational token {0:?}")]
    ParseRational(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("resultant of two zero polynomials is undefined")]
    ResultantOfZeros,

    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid LRS: {0}")]
    InvalidLrs(String),

    #[error("initial term u_{index} is zero; shift to a nonzero window first")]
    ZeroInitialTerm { index: usize },

    #[error(
        "initial term u_{index} = {value} is not positive, so the sequence is already known \
         to take a negative value (or the window is not positive); no instance is needed"
    )]
    NonPositiveInitialTerm { index: usize, value: Rational },

    #[error(
        "no window of {order} consecutive nonzero terms starting at t in 0..={cap} \
         (scanned u_0..u_{last_index}); raise --window-cap"
    )]
    WindowCapExhausted {
        order: usize,
        cap: usize,
        last_index: usize,
    },

    #[error("matrix is not column-stochastic: {0}")]
    NotStochastic(String),

    #[error("state index {index} out of range for dimension {dim} (indices are 1-based)")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
