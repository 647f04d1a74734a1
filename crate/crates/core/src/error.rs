use thiserror::Error;

use crate::parity::Parity;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("spec file: {0}")]
    SpecFormat(String),
    #[error("unknown coordinate '{0}'")]
    UnknownCoordinate(String),
    #[error("duplicate coordinate '{0}'")]
    DuplicateCoordinate(String),
    #[error("too many odd coordinates ({0}, at most 32 supported)")]
    TooManyOdd(usize),
    #[error("{what} is not homogeneous")]
    Inhomogeneous { what: String },
    #[error("graded-symmetry violated at ({i}, {j}): g_ij - (-1)^(|i||j|) g_ji = {residual}")]
    GradedSymmetry {
        i: String,
        j: String,
        residual: String,
    },
    #[error("parity-homogeneity violated at ({i}, {j}): entry has a term of the wrong Z2-degree for a metric of parity {parity}")]
    ParityHomogeneity { i: String, j: String, parity: Parity },
    #[error("body nondegeneracy violated: {0}")]
    SingularBody(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parity constraint |g| + |P| = 0 violated (|g| = {metric}, |P| = {field})")]
    ParityConstraint { metric: Parity, field: Parity },
    #[error("'{name}' must be an odd-free even function, found {found}")]
    NotEven { name: String, found: String },
    #[error("warping function is not strictly positive: {0}")]
    NotPositive(String),
    #[error("metric parities differ: base {base}, fiber {fiber}")]
    MetricParityMismatch { base: Parity, fiber: Parity },
    #[error("argument in the wrong block: {0}")]
    WrongBlock(String),
    #[error("hypothesis violated for {statement}: {requirement}")]
    Hypothesis {
        statement: String,
        requirement: String,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate parameter: {0}")]
    Degenerate(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 2 for malformed input, 3 for violated
    /// invariants or hypotheses, 4 unsupported, 5 degenerate.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Parse(_)
            | Error::SpecFormat(_)
            | Error::UnknownCoordinate(_)
            | Error::DuplicateCoordinate(_)
            | Error::TooManyOdd(_) => 2,
            Error::Unsupported(_) => 4,
            Error::Degenerate(_) => 5,
            _ => 3,
        }
    }
}
