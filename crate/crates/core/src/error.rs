use thiserror::Error;

use crate::subset::format_subset;

/// Every failure the toolkit reports. Variants carry enough context to
/// reproduce the offending input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("measure array length {0} is not a power of two (n >= 1)")]
    BadLength(usize),

    #[error("ground set of size {n} exceeds the limit of {cap}")]
    GroundSetTooLarge { n: usize, cap: usize },

    #[error("boundary condition violated: mu({}) = {value}, expected {expected}", format_subset(*.subset))]
    BoundaryViolation { subset: u32, value: f64, expected: f64 },

    #[error(
        "monotonicity violated: mu({}) = {smaller_value} > mu({}) = {larger_value}",
        format_subset(*.subset),
        format_subset(*.superset)
    )]
    MonotonicityViolation { subset: u32, superset: u32, smaller_value: f64, larger_value: f64 },

    #[error("value {value} at {what} lies outside [{lo}, {hi}]")]
    RangeViolation { what: String, value: f64, lo: f64, hi: f64 },

    #[error("weights: {0}")]
    WeightError(String),

    #[error("dimension mismatch: expected {expected} inputs, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexError { index: usize, n: usize },

    #[error("input {value} outside the domain {domain}")]
    DomainError { value: f64, domain: String },

    #[error("value {value} leaves the generator range {range}")]
    RangeError { value: f64, range: String },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("generator is not normalized on the interval: {0}")]
    GeneratorNotNormalized(String),

    #[error("input {value} outside the working interval [{lo}, {hi}]")]
    OutOfInterval { value: f64, lo: f64, hi: f64 },

    #[error("bracket [{lo}, {hi}] does not enclose the target")]
    NoBracket { lo: f64, hi: f64 },

    #[error("function is not monotone on the bracket near t = {at}")]
    NotMonotone { at: f64 },

    #[error("quadrature did not converge on [{lo}, {hi}]")]
    QuadratureFailure { lo: f64, hi: f64 },

    #[error("g({x}) = g({y}) for distinct arguments")]
    DegenerateG { x: f64, y: f64 },

    #[error(
        "measure is not cardinality-based: mu({}) != mu({})",
        format_subset(*.first),
        format_subset(*.second)
    )]
    NotCardinalityBased { first: u32, second: u32 },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Errors caused by evaluating an aggregator outside its domain, as
    /// opposed to malformed configuration.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::DomainError { .. }
                | Error::RangeError { .. }
                | Error::RangeViolation { .. }
                | Error::OutOfInterval { .. }
                | Error::DimensionMismatch { .. }
                | Error::NoBracket { .. }
                | Error::NotMonotone { .. }
                | Error::QuadratureFailure { .. }
                | Error::DegenerateG { .. }
        )
    }
}
