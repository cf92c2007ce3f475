use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::generator::{Generator, EPS_INV};

/// Whether the boundary identity is the top (conjunctive, t-norm like) or
/// the bottom (disjunctive, t-conorm like) of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    #[default]
    Conjunctive,
    Disjunctive,
}

/// `f⁻¹(Σ f(xᵢ))`, the generator-sum operation; associative and symmetric
/// by construction.
pub fn aczelian(x: f64, y: f64, f: &Generator) -> Result<f64> {
    aczelian_n(&[x, y], f)
}

pub fn aczelian_n(x: &[f64], f: &Generator) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    let mut total = 0.0;
    for &v in x {
        total += f.apply(v)?;
    }
    f.invert(total)
}

/// A continuous Archimedean operation on `[a, b]` given by an additive
/// generator into `[0, +∞]`.
///
/// Conjunctive: `f` strictly decreasing, `f(b) = 0`,
/// `A(x, y) = f⁻¹(min(f(x) + f(y), f(a)))`.
/// Disjunctive: `f` strictly increasing, `f(a) = 0`,
/// `A(x, y) = f⁻¹(min(f(x) + f(y), f(b)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchimedeanSpec {
    orientation: Orientation,
    lo: f64,
    hi: f64,
    generator: Generator,
    /// Generator value at the absorbing endpoint; finite iff nilpotent.
    cap: ExtendedReal,
}

impl ArchimedeanSpec {
    pub fn new(orientation: Orientation, interval: (f64, f64), generator: Generator) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "Archimedean interval [{lo}, {hi}] must be finite and nondegenerate"
            )));
        }
        let domain = generator.domain();
        if !(domain.closure_contains(lo) && domain.closure_contains(hi)) {
            return Err(Error::InvalidGenerator(format!("generator domain {domain} does not cover [{lo}, {hi}]")));
        }
        let (identity, absorbing) = match orientation {
            Orientation::Conjunctive => (hi, lo),
            Orientation::Disjunctive => (lo, hi),
        };
        let want_increasing = orientation == Orientation::Disjunctive;
        if generator.is_increasing() != want_increasing {
            return Err(Error::InvalidGenerator(format!(
                "{orientation:?} generators must be strictly {}",
                if want_increasing { "increasing" } else { "decreasing" }
            )));
        }
        if !domain.contains(identity) {
            return Err(Error::InvalidGenerator(format!("generator undefined at the identity {identity}")));
        }
        let at_identity = generator.eval(identity);
        if !(at_identity.abs() <= EPS_INV) {
            return Err(Error::InvalidGenerator(format!(
                "generator value at the identity {identity} is {at_identity}, expected 0"
            )));
        }
        let cap = ExtendedReal::from_f64(generator.eval(absorbing))?;
        if cap <= ExtendedReal::Finite(0.0) {
            return Err(Error::InvalidGenerator(format!("generator value at {absorbing} must be positive, got {cap}")));
        }
        Ok(Self { orientation, lo, hi, generator, cap })
    }

    pub fn conjunctive(interval: (f64, f64), generator: Generator) -> Result<Self> {
        Self::new(Orientation::Conjunctive, interval, generator)
    }

    pub fn disjunctive(interval: (f64, f64), generator: Generator) -> Result<Self> {
        Self::new(Orientation::Disjunctive, interval, generator)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    /// Bounded generator (zero divisors exist) as opposed to strict.
    pub fn is_nilpotent(&self) -> bool {
        self.cap.is_finite()
    }

    pub fn identity(&self) -> f64 {
        match self.orientation {
            Orientation::Conjunctive => self.hi,
            Orientation::Disjunctive => self.lo,
        }
    }

    pub fn absorbing(&self) -> f64 {
        match self.orientation {
            Orientation::Conjunctive => self.lo,
            Orientation::Disjunctive => self.hi,
        }
    }

    fn check(&self, v: f64) -> Result<()> {
        if !(v >= self.lo && v <= self.hi) {
            return Err(Error::OutOfInterval { value: v, lo: self.lo, hi: self.hi });
        }
        Ok(())
    }

    fn value_at(&self, v: f64) -> Result<ExtendedReal> {
        ExtendedReal::from_f64(self.generator.eval(v))
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        // boundary laws hold exactly
        let (e, z) = (self.identity(), self.absorbing());
        if x == e {
            return Ok(y);
        }
        if y == e {
            return Ok(x);
        }
        if x == z || y == z {
            return Ok(z);
        }
        let total = (self.value_at(x)? + self.value_at(y)?).min(self.cap);
        Ok(self.generator.inverse(total.to_f64()).clamp(self.lo, self.hi))
    }

    /// Left fold of the binary operation; equals `f⁻¹(min(Σ f(xᵢ), cap))`.
    pub fn eval_n(&self, x: &[f64]) -> Result<f64> {
        let (first, rest) = x.split_first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        self.check(*first)?;
        rest.iter().try_fold(*first, |acc, &v| self.eval(acc, v))
    }
}
