use thiserror::Error;

use crate::operator::OpKind;

/// Errors raised while constructing, evaluating or analysing operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument left the unit interval (or was NaN).
    #[error("argument {value} is outside the unit interval")]
    Domain { value: f64 },

    #[error("expected a {expected} handle, found a {found}")]
    KindMismatch { expected: OpKind, found: OpKind },

    #[error("invalid generator: {0}")]
    Generator(String),

    /// A construction violated one of the structural rules; `rule` names it.
    #[error("invalid construction [{rule}]: {detail}")]
    Construction { rule: &'static str, detail: String },

    #[error("summand intervals ({0}, {1}) and ({2}, {3}) overlap")]
    Overlap(f64, f64, f64, f64),

    /// A sampled classification could not be decided at the given resolution.
    #[error("inconclusive at grid {grid}: {detail}")]
    Inconclusive { grid: usize, detail: String },

    #[error("neutral element {e} leaves the requested underlying operation undefined")]
    DegenerateNeutral { e: f64 },

    #[error("U(1,0) = {value} is neither 0 nor 1")]
    Inconsistent { value: f64 },

    #[error("({x}, {y}) lies outside the support of the transformed operator")]
    OutOfSupport { x: f64, y: f64 },

    #[error("choice for point {point} is not admissible: {detail}")]
    InvalidChoice { point: f64, detail: String },

    #[error("invariant violated at ({x}, {y}): {detail}")]
    Invariant { x: f64, y: f64, detail: String },

    #[error("section at x = {x} has discontinuities at {locations:?}")]
    MultipleJumps { x: f64, locations: Vec<f64> },

    #[error("reconstruction residual {residual:e} exceeds {tol:e} at ({x}, {y})")]
    Residual { residual: f64, tol: f64, x: f64, y: f64 },

    /// The operator fails a property every uninorm with continuous
    /// underlying operations has.
    #[error("operator does not have continuous underlying operations: {0}")]
    NotMember(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain { value })
    }
}

pub(crate) fn construction(rule: &'static str, detail: impl Into<String>) -> Error {
    Error::Construction {
        rule,
        detail: detail.into(),
    }
}
