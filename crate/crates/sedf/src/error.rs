//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by group, field, and design operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("empty set: {0}")]
    EmptySet(&'static str),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("field construction failed: {0}")]
    FieldConstruction(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("the zero element has no multiplicative order")]
    ZeroElement,

    #[error("exponent {t} out of range 0..{limit}")]
    ExponentRange { t: u64, limit: u64 },

    #[error("{e} does not divide q-1 = {q_minus_1}")]
    NotADivisor { e: u32, q_minus_1: u32 },

    #[error("class order must be at least 2, got {0}")]
    ClassOrderRange(u32),

    #[error("class size f = {0} is odd; the difference formula is implemented for even f only")]
    OddClassSize(u32),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("set size mismatch: {0}")]
    Shape(String),

    #[error("not a partition of the nonzero elements: {0}")]
    NotAPartition(String),

    #[error("partial difference set parameters not uniform: {0}")]
    PdsNotUniform(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
