//! Seeded, sampling-based checks of algebraic and scale properties.
//!
//! A passing check only means no counterexample was found among the
//! sampled inputs; the verdict is reported as `holds-on-samples`.

mod algebraic;
mod elementary;
mod lattice_laws;
pub(crate) mod report;
mod sampler;
mod scales;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use algebraic::{check_associativity, check_bisymmetry, check_decomposability, check_sequence_associativity};
pub use elementary::{
    check_bounds, check_continuity_smoke, check_idempotency, check_monotonicity, check_symmetry, Bound,
    MonotonicityGrade,
};
pub use lattice_laws::{
    check_additivity, check_comonotonic, check_non_compensation, check_weak_lattice, ComonotonicLaw,
};
pub use report::{PropertyReport, Verdict, Witness};
pub use sampler::{OrdinalMap, Sampler};
pub use scales::{check_meaningfulness, Scale, ScaleMode};

/// Anything that maps a finite real vector to a real number.
pub trait Aggregate {
    fn aggregate(&self, x: &[f64]) -> Result<f64>;

    /// The only input length accepted, when there is one.
    fn arity(&self) -> Option<usize> {
        None
    }
}

impl<F> Aggregate for F
where
    F: Fn(&[f64]) -> Result<f64>,
{
    fn aggregate(&self, x: &[f64]) -> Result<f64> {
        self(x)
    }
}

/// Lattice-law tolerance: exact comparison.
pub const EPS_EXACT: f64 = 0.0;
/// Relative tolerance for laws evaluated in floating point.
pub const EPS_LAW: f64 = 1e-9;
/// Relative tolerance for comonotonic and plain additivity.
pub const EPS_ADDITIVE: f64 = 1e-12;
/// Slack allowed when comparing values that should be ordered.
pub const EPS_MONO: f64 = 1e-12;

/// `|a − b| ≤ eps·(1 + max(|a|, |b|))`; equal infinities compare equal.
pub fn close(a: f64, b: f64, eps: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= eps * (1.0 + a.abs().max(b.abs()))
}

/// Stable identifiers of every checkable property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Symmetry,
    Nondecreasing,
    Strict,
    Unanimous,
    Idempotent,
    WeakIdempotent,
    Conjunctive,
    Disjunctive,
    Internal,
    Associative,
    SeqAssociative,
    Decomposable,
    Bisymmetric,
    ComonotonicAdditive,
    ComonotonicMinitive,
    ComonotonicMaxitive,
    WeaklyMinitive,
    WeaklyMaxitive,
    NonCompensative,
    Additive,
    Meaningful(ScaleMode, Scale),
    ContinuitySmoke,
}

impl Property {
    pub const ALL: [Property; 27] = [
        Property::Symmetry,
        Property::Nondecreasing,
        Property::Strict,
        Property::Unanimous,
        Property::Idempotent,
        Property::WeakIdempotent,
        Property::Conjunctive,
        Property::Disjunctive,
        Property::Internal,
        Property::Associative,
        Property::SeqAssociative,
        Property::Decomposable,
        Property::Bisymmetric,
        Property::ComonotonicAdditive,
        Property::ComonotonicMinitive,
        Property::ComonotonicMaxitive,
        Property::WeaklyMinitive,
        Property::WeaklyMaxitive,
        Property::NonCompensative,
        Property::Additive,
        Property::Meaningful(ScaleMode::InputOutput, Scale::Ratio),
        Property::Meaningful(ScaleMode::InputOutput, Scale::Interval),
        Property::Meaningful(ScaleMode::InputOutput, Scale::Ordinal),
        Property::Meaningful(ScaleMode::InputOnly, Scale::Ratio),
        Property::Meaningful(ScaleMode::InputOnly, Scale::Interval),
        Property::Meaningful(ScaleMode::InputOnly, Scale::Ordinal),
        Property::ContinuitySmoke,
    ];

    pub fn all() -> &'static [Property] {
        &Self::ALL
    }

    pub fn name(&self) -> String {
        match self {
            Property::Symmetry => "symmetry".into(),
            Property::Nondecreasing => "nondecreasing".into(),
            Property::Strict => "strict".into(),
            Property::Unanimous => "unanimous".into(),
            Property::Idempotent => "idempotent".into(),
            Property::WeakIdempotent => "weak-idempotent".into(),
            Property::Conjunctive => "conjunctive".into(),
            Property::Disjunctive => "disjunctive".into(),
            Property::Internal => "internal".into(),
            Property::Associative => "associative".into(),
            Property::SeqAssociative => "seq-associative".into(),
            Property::Decomposable => "decomposable".into(),
            Property::Bisymmetric => "bisymmetric".into(),
            Property::ComonotonicAdditive => "comonotonic-additive".into(),
            Property::ComonotonicMinitive => "comonotonic-minitive".into(),
            Property::ComonotonicMaxitive => "comonotonic-maxitive".into(),
            Property::WeaklyMinitive => "weakly-minitive".into(),
            Property::WeaklyMaxitive => "weakly-maxitive".into(),
            Property::NonCompensative => "non-compensative".into(),
            Property::Additive => "additive".into(),
            Property::Meaningful(mode, scale) => format!("meaningful-{}-{}", mode.tag(), scale.tag()),
            Property::ContinuitySmoke => "continuity-smoke".into(),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::all()
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown property '{s}'")))
    }
}

/// Runs the check for `property` against `agg`.
pub fn check(property: Property, agg: &dyn Aggregate, sampler: &Sampler) -> PropertyReport {
    match property {
        Property::Symmetry => check_symmetry(agg, sampler),
        Property::Nondecreasing => check_monotonicity(agg, MonotonicityGrade::Nondecreasing, sampler),
        Property::Strict => check_monotonicity(agg, MonotonicityGrade::Strict, sampler),
        Property::Unanimous => check_monotonicity(agg, MonotonicityGrade::Unanimous, sampler),
        Property::Idempotent => check_idempotency(agg, sampler, false),
        Property::WeakIdempotent => check_idempotency(agg, sampler, true),
        Property::Conjunctive => check_bounds(agg, Bound::Conjunctive, sampler),
        Property::Disjunctive => check_bounds(agg, Bound::Disjunctive, sampler),
        Property::Internal => check_bounds(agg, Bound::Internal, sampler),
        Property::Associative => check_associativity(agg, sampler),
        Property::SeqAssociative => check_sequence_associativity(agg, sampler),
        Property::Decomposable => check_decomposability(agg, sampler),
        Property::Bisymmetric => check_bisymmetry(agg, sampler),
        Property::ComonotonicAdditive => check_comonotonic(agg, ComonotonicLaw::Additive, sampler),
        Property::ComonotonicMinitive => check_comonotonic(agg, ComonotonicLaw::Minitive, sampler),
        Property::ComonotonicMaxitive => check_comonotonic(agg, ComonotonicLaw::Maxitive, sampler),
        Property::WeaklyMinitive => check_weak_lattice(agg, false, sampler),
        Property::WeaklyMaxitive => check_weak_lattice(agg, true, sampler),
        Property::NonCompensative => check_non_compensation(agg, sampler),
        Property::Additive => check_additivity(agg, sampler),
        Property::Meaningful(mode, scale) => check_meaningfulness(agg, mode, scale, sampler),
        Property::ContinuitySmoke => check_continuity_smoke(agg, sampler),
    }
}
