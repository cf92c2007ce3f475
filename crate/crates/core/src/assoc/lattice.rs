use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::numeric::{self, median3};

/// Parameters of the continuous, nondecreasing, idempotent associative
/// operation `(α ∧ x) ∨ (β ∧ y) ∨ (x ∧ y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdempotentAssocSpec {
    pub alpha: f64,
    pub beta: f64,
}

impl IdempotentAssocSpec {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha.is_nan() || beta.is_nan() {
            return Err(Error::InvalidSpec("alpha and beta must not be NaN".into()));
        }
        Ok(Self { alpha, beta })
    }
}

pub fn alpha_beta(x: f64, y: f64, spec: &IdempotentAssocSpec) -> f64 {
    spec.alpha.min(x).max(spec.beta.min(y)).max(x.min(y))
}

/// The n-ary member of the associative sequence:
/// `(α ∧ x₁) ∨ ⋁_{1<i<n} (α ∧ β ∧ xᵢ) ∨ (β ∧ xₙ) ∨ ⋀ xᵢ`.
pub fn alpha_beta_n(x: &[f64], spec: &IdempotentAssocSpec) -> Result<f64> {
    let n = x.len();
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    let meet = x.iter().copied().fold(f64::INFINITY, f64::min);
    let both = spec.alpha.min(spec.beta);
    let middle = x[1..n.saturating_sub(1).max(1)].iter().map(|&v| both.min(v)).fold(f64::NEG_INFINITY, f64::max);
    Ok(spec.alpha.min(x[0]).max(middle).max(spec.beta.min(x[n - 1])).max(meet))
}

/// `median(⋀ xᵢ, ⋁ xᵢ, α)`: the symmetric idempotent associative sequence.
pub fn median_assoc_n(x: &[f64], alpha: f64) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(median3(lo, hi, alpha))
}

/// What an idempotent operation with identity returns on the curve
/// `y = g(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    #[default]
    TakeMin,
    TakeMax,
}

/// Nondecreasing idempotent associative operation with identity `e`,
/// switching between `min` and `max` across the graph of a decreasing `g`
/// with `g(e) = e`.
#[derive(Debug, Clone, PartialEq)]
pub struct CzogalaDrewniak {
    g: Generator,
    lo: f64,
    hi: f64,
    identity: f64,
    tie: TieRule,
}

impl CzogalaDrewniak {
    /// Locates the fixed point of `g` on `[lo, hi]` by bisection.
    pub fn new(g: Generator, interval: (f64, f64), tie: TieRule) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo < hi) {
            return Err(Error::InvalidSpec(format!("empty interval [{lo}, {hi}]")));
        }
        if g.is_increasing() {
            return Err(Error::InvalidGenerator("g must be decreasing".into()));
        }
        if !(g.domain().contains(lo) && g.domain().contains(hi)) {
            return Err(Error::InvalidGenerator(format!("g is undefined on part of [{lo}, {hi}]")));
        }
        let gap = |t: f64| g.eval(t) - t;
        let identity = numeric::bisect(&gap, 0.0, lo, hi)
            .map_err(|_| Error::InvalidGenerator(format!("g has no fixed point in [{lo}, {hi}]")))?;
        Ok(Self { g, lo, hi, identity, tie })
    }

    pub fn identity(&self) -> f64 {
        self.identity
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let threshold = self.g.eval(x);
        if y < threshold {
            x.min(y)
        } else if y > threshold {
            x.max(y)
        } else {
            match self.tie {
                TieRule::TakeMin => x.min(y),
                TieRule::TakeMax => x.max(y),
            }
        }
    }
}
