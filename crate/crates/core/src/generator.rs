//! Strictly monotone scalar generators drawn from a closed catalog of
//! analytic families. Every member has a closed-form inverse and
//! derivative, so no generator needs numeric inversion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for `f⁻¹(f(x)) = x`.
pub const EPS_INV: f64 = 1e-9;

/// A real interval with open/closed endpoint flags. Infinite endpoints are
/// always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub const REALS: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY, lo_open: true, hi_open: true };

    pub const POSITIVE: Interval = Interval { lo: 0.0, hi: f64::INFINITY, lo_open: true, hi_open: true };

    pub const NONNEGATIVE: Interval = Interval { lo: 0.0, hi: f64::INFINITY, lo_open: false, hi_open: true };

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Self {
        Self { lo, hi, lo_open: lo_open || lo.is_infinite(), hi_open: hi_open || hi.is_infinite() }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// Membership in the closure (endpoints always included).
    pub fn closure_contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_open) = match self.lo.partial_cmp(&other.lo) {
            Some(std::cmp::Ordering::Greater) => (self.lo, self.lo_open),
            Some(std::cmp::Ordering::Less) => (other.lo, other.lo_open),
            _ => (self.lo, self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.partial_cmp(&other.hi) {
            Some(std::cmp::Ordering::Less) => (self.hi, self.hi_open),
            Some(std::cmp::Ordering::Greater) => (other.hi, other.hi_open),
            _ => (self.hi, self.hi_open || other.hi_open),
        };
        Interval::new(lo, hi, lo_open, hi_open)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.intersect(other) == *self
    }

    /// Image under a monotone map, using IEEE limits at infinite endpoints.
    fn map(&self, f: impl Fn(f64) -> f64, increasing: bool) -> Interval {
        let (a, b) = (f(self.lo), f(self.hi));
        if increasing {
            Interval::new(a, b, self.lo_open, self.hi_open)
        } else {
            Interval::new(b, a, self.hi_open, self.lo_open)
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalRepr {
    #[serde(default)]
    lo: Option<f64>,
    #[serde(default)]
    hi: Option<f64>,
    #[serde(default)]
    lo_open: bool,
    #[serde(default)]
    hi_open: bool,
}

impl From<IntervalRepr> for Interval {
    fn from(r: IntervalRepr) -> Self {
        Interval::new(r.lo.unwrap_or(f64::NEG_INFINITY), r.hi.unwrap_or(f64::INFINITY), r.lo_open, r.hi_open)
    }
}

impl From<Interval> for IntervalRepr {
    fn from(i: Interval) -> Self {
        IntervalRepr {
            lo: i.lo.is_finite().then_some(i.lo),
            hi: i.hi.is_finite().then_some(i.hi),
            lo_open: i.lo_open && i.lo.is_finite(),
            hi_open: i.hi_open && i.hi.is_finite(),
        }
    }
}

/// The generator catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Family {
    Identity,
    /// `x^α`, `α ≠ 0`, on `[0,∞)` (`α > 0`) or `(0,∞)` (`α < 0`).
    Power {
        alpha: f64,
    },
    /// Natural logarithm on `(0,∞)`.
    Log,
    /// `e^{αx}`, `α ≠ 0`.
    Exp {
        alpha: f64,
    },
    /// `1/x` on `(0,∞)`.
    Reciprocal,
    /// `r·x + s`, `r ≠ 0`.
    Affine {
        r: f64,
        s: f64,
    },
    /// `1 − x`.
    NegComplement,
    /// `outer(inner(x))`.
    Composed {
        outer: Box<Generator>,
        inner: Box<Generator>,
    },
}

/// A validated generator: a catalog family restricted to a domain on which
/// it is strictly monotone.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    family: Family,
    domain: Interval,
}

impl Generator {
    /// Builds a generator on the family's natural domain.
    pub fn new(family: Family) -> Result<Self> {
        let domain = natural_domain(&family)?;
        if domain.is_empty() {
            return Err(Error::InvalidGenerator(format!("{family:?} has an empty domain")));
        }
        Ok(Self { family, domain })
    }

    /// Restricts the natural domain to `domain`.
    pub fn with_domain(family: Family, domain: Interval) -> Result<Self> {
        let g = Self::new(family)?;
        let restricted = g.domain.intersect(&domain);
        if restricted.is_empty() {
            return Err(Error::InvalidGenerator(format!(
                "domain {domain} does not meet the natural domain {}",
                g.domain
            )));
        }
        Ok(Self { domain: restricted, ..g })
    }

    pub fn identity() -> Self {
        Self::new(Family::Identity).expect("identity")
    }

    pub fn log() -> Self {
        Self::new(Family::Log).expect("log")
    }

    pub fn reciprocal() -> Self {
        Self::new(Family::Reciprocal).expect("reciprocal")
    }

    pub fn neg_complement() -> Self {
        Self::new(Family::NegComplement).expect("neg-complement")
    }

    pub fn power(alpha: f64) -> Result<Self> {
        Self::new(Family::Power { alpha })
    }

    pub fn exp(alpha: f64) -> Result<Self> {
        Self::new(Family::Exp { alpha })
    }

    pub fn affine(r: f64, s: f64) -> Result<Self> {
        Self::new(Family::Affine { r, s })
    }

    pub fn compose(outer: Generator, inner: Generator) -> Result<Self> {
        Self::new(Family::Composed { outer: Box::new(outer), inner: Box::new(inner) })
    }

    /// `r·f + s`.
    pub fn scaled(&self, r: f64, s: f64) -> Result<Self> {
        Self::compose(Self::affine(r, s)?, self.clone())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    /// Image of the domain.
    pub fn range(&self) -> Interval {
        self.domain.map(|x| self.eval(x), self.is_increasing())
    }

    pub fn is_increasing(&self) -> bool {
        match &self.family {
            Family::Identity | Family::Log => true,
            Family::NegComplement | Family::Reciprocal => false,
            Family::Power { alpha } | Family::Exp { alpha } => *alpha > 0.0,
            Family::Affine { r, .. } => *r > 0.0,
            Family::Composed { outer, inner } => outer.is_increasing() == inner.is_increasing(),
        }
    }

    /// Raw evaluation without a domain check. Endpoints of open domains
    /// evaluate to their IEEE limits (e.g. `log 0 = -inf`).
    pub fn eval(&self, x: f64) -> f64 {
        match &self.family {
            Family::Identity => x,
            Family::Power { alpha } => x.powf(*alpha),
            Family::Log => x.ln(),
            Family::Exp { alpha } => (alpha * x).exp(),
            Family::Reciprocal => 1.0 / x,
            Family::Affine { r, s } => r * x + s,
            Family::NegComplement => 1.0 - x,
            Family::Composed { outer, inner } => outer.eval(inner.eval(x)),
        }
    }

    /// Raw inverse without a range check.
    pub fn inverse(&self, y: f64) -> f64 {
        match &self.family {
            Family::Identity => y,
            Family::Power { alpha } => y.powf(1.0 / alpha),
            Family::Log => y.exp(),
            Family::Exp { alpha } => y.ln() / alpha,
            Family::Reciprocal => 1.0 / y,
            Family::Affine { r, s } => (y - s) / r,
            Family::NegComplement => 1.0 - y,
            Family::Composed { outer, inner } => inner.inverse(outer.inverse(y)),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match &self.family {
            Family::Identity => 1.0,
            Family::Power { alpha } => alpha * x.powf(alpha - 1.0),
            Family::Log => 1.0 / x,
            Family::Exp { alpha } => alpha * (alpha * x).exp(),
            Family::Reciprocal => -1.0 / (x * x),
            Family::Affine { r, .. } => *r,
            Family::NegComplement => -1.0,
            Family::Composed { outer, inner } => outer.derivative(inner.eval(x)) * inner.derivative(x),
        }
    }

    /// Evaluation that rejects inputs outside the domain.
    pub fn apply(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::DomainError { value: x, domain: self.domain.to_string() });
        }
        Ok(self.eval(x))
    }

    /// Inverse that rejects values outside the range of the generator.
    pub fn invert(&self, y: f64) -> Result<f64> {
        let range = self.range();
        if !range.contains(y) {
            return Err(Error::RangeError { value: y, range: range.to_string() });
        }
        Ok(self.inverse(y))
    }
}

fn natural_domain(family: &Family) -> Result<Interval> {
    Ok(match family {
        Family::Identity | Family::NegComplement => Interval::REALS,
        Family::Power { alpha } => {
            nonzero("power alpha", *alpha)?;
            if *alpha > 0.0 {
                Interval::NONNEGATIVE
            } else {
                Interval::POSITIVE
            }
        }
        Family::Log | Family::Reciprocal => Interval::POSITIVE,
        Family::Exp { alpha } => {
            nonzero("exp alpha", *alpha)?;
            Interval::REALS
        }
        Family::Affine { r, s } => {
            nonzero("affine r", *r)?;
            if !s.is_finite() {
                return Err(Error::InvalidGenerator(format!("affine s = {s}")));
            }
            Interval::REALS
        }
        Family::Composed { outer, inner } => {
            // Preimage under `inner` of the part of its image that `outer`
            // accepts.
            let image = inner.range().intersect(outer.domain());
            if image.is_empty() {
                return Err(Error::InvalidGenerator("inner image does not meet the outer domain".into()));
            }
            image.map(|y| inner.inverse(y), inner.is_increasing()).intersect(inner.domain())
        }
    })
}

fn nonzero(what: &str, v: f64) -> Result<()> {
    if v == 0.0 || !v.is_finite() {
        return Err(Error::InvalidGenerator(format!("{what} = {v}")));
    }
    Ok(())
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut value = serde_json::to_value(&self.family).map_err(serde::ser::Error::custom)?;
        let natural = natural_domain(&self.family).map_err(serde::ser::Error::custom)?;
        if self.domain != natural {
            let repr = IntervalRepr::from(self.domain);
            value["domain"] = serde_json::to_value(repr).map_err(serde::ser::Error::custom)?;
        }
        value.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut value = serde_json::Value::deserialize(d)?;
        let domain = match value.as_object_mut() {
            Some(obj) => obj.remove("domain"),
            None => return Err(D::Error::custom("generator must be a JSON object")),
        };
        let family: Family = serde_json::from_value(value.clone()).map_err(D::Error::custom)?;
        // unit variants ignore extra keys, so compare against the canonical form
        let canonical = serde_json::to_value(&family).map_err(D::Error::custom)?;
        if let (Some(given), Some(known)) = (value.as_object(), canonical.as_object()) {
            if let Some(extra) = given.keys().find(|k| !known.contains_key(*k)) {
                return Err(D::Error::custom(format!("unknown generator field {extra:?}")));
            }
        }
        match domain {
            None => Generator::new(family),
            Some(d) => {
                let repr: IntervalRepr = serde_json::from_value(d).map_err(D::Error::custom)?;
                Generator::with_domain(family, repr.into())
            }
        }
        .map_err(D::Error::custom)
    }
}
