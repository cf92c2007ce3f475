//! Means: quasi-arithmetic and quasi-linear means, root-mean-powers,
//! exponential means, Chisini's equation, and the two-variable Lagrangian,
//! logarithmic and Cauchy means.

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::numeric::{self, EPS_QUAD};
use crate::weights::{Normalization, WeightVector};

/// Below this `|α|` the root-mean-power is evaluated as the geometric mean.
pub const ALPHA_ZERO_SWITCH: f64 = 1e-7;

/// A mean as a value.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanSpec {
    Arithmetic,
    Quadratic,
    Geometric,
    Harmonic,
    /// `α` may be `±∞` (minimum and maximum).
    RootPower(f64),
    Exponential(f64),
    QuasiArithmetic(Generator),
    QuasiLinear(Generator, WeightVector),
    QuasiLinearFunction {
        generator: Generator,
        p: Vec<f64>,
        q: f64,
    },
}

impl MeanSpec {
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        match self {
            MeanSpec::Arithmetic => quasi_arithmetic_mean(x, &Generator::identity()),
            MeanSpec::Quadratic => root_mean_power(x, 2.0),
            MeanSpec::Geometric => root_mean_power(x, 0.0),
            MeanSpec::Harmonic => root_mean_power(x, -1.0),
            MeanSpec::RootPower(alpha) => root_mean_power(x, *alpha),
            MeanSpec::Exponential(alpha) => exponential_mean(x, *alpha),
            MeanSpec::QuasiArithmetic(f) => quasi_arithmetic_mean(x, f),
            MeanSpec::QuasiLinear(f, w) => quasi_linear_mean(x, w, f),
            MeanSpec::QuasiLinearFunction { generator, p, q } => quasi_linear_function(x, p, *q, generator),
        }
    }
}

fn nonempty(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    Ok(())
}

fn bounds(x: &[f64]) -> (f64, f64) {
    x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Applies `f⁻¹` to a value that is known to lie in the range of `f` on
/// `[lo, hi]`, keeping the result internal.
fn internal_inverse(f: &Generator, y: f64, lo: f64, hi: f64) -> f64 {
    f.inverse(y).clamp(lo, hi)
}

/// `f⁻¹((1/n) Σ f(xᵢ))`.
pub fn quasi_arithmetic_mean(x: &[f64], f: &Generator) -> Result<f64> {
    nonempty(x)?;
    let n = x.len() as f64;
    let mut total = 0.0;
    for &v in x {
        total += f.apply(v)?;
    }
    let (lo, hi) = bounds(x);
    Ok(internal_inverse(f, total / n, lo, hi))
}

/// `f⁻¹(Σ ωᵢ f(xᵢ))` for sum-one weights.
pub fn quasi_linear_mean(x: &[f64], weights: &WeightVector, f: &Generator) -> Result<f64> {
    nonempty(x)?;
    weights.require(Normalization::SumOne)?;
    if weights.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: weights.len(), got: x.len() });
    }
    let mut total = 0.0;
    for (&v, &w) in x.iter().zip(weights.as_slice()) {
        let fv = f.apply(v)?;
        if w != 0.0 {
            total += w * fv;
        }
    }
    // only inputs with positive weight bound the result
    let (lo, hi) =
        bounds(&x.iter().zip(weights.as_slice()).filter(|(_, &w)| w > 0.0).map(|(&v, _)| v).collect::<Vec<_>>());
    Ok(internal_inverse(f, total, lo, hi))
}

/// `f⁻¹(Σ pᵢ f(xᵢ) + q)` with positive `p`.
pub fn quasi_linear_function(x: &[f64], p: &[f64], q: f64, f: &Generator) -> Result<f64> {
    nonempty(x)?;
    if p.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), got: x.len() });
    }
    if let Some(bad) = p.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::WeightError(format!("coefficient {bad} is not positive")));
    }
    if !q.is_finite() {
        return Err(Error::InvalidSpec(format!("offset q = {q}")));
    }
    let mut total = q;
    for (&v, &pi) in x.iter().zip(p) {
        total += pi * f.apply(v)?;
    }
    f.invert(total)
}

/// `((1/n) Σ xᵢ^α)^{1/α}` on positive inputs, with the geometric mean at
/// `α = 0` and min/max at `α = ∓∞`.
pub fn root_mean_power(x: &[f64], alpha: f64) -> Result<f64> {
    nonempty(x)?;
    if let Some(&bad) = x.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::DomainError { value: bad, domain: "(0, inf)".into() });
    }
    if alpha.is_nan() {
        return Err(Error::InvalidSpec("root-mean-power exponent is NaN".into()));
    }
    let (lo, hi) = bounds(x);
    let n = x.len() as f64;
    if alpha == f64::INFINITY {
        return Ok(hi);
    }
    if alpha == f64::NEG_INFINITY {
        return Ok(lo);
    }
    let value = if alpha.abs() < ALPHA_ZERO_SWITCH {
        (x.iter().map(|v| v.ln()).sum::<f64>() / n).exp()
    } else {
        // scale by the extreme that keeps every ratio^α ≤ 1
        let scale = if alpha > 0.0 { hi } else { lo };
        let s: f64 = x.iter().map(|v| (v / scale).powf(alpha)).sum::<f64>() / n;
        scale * s.powf(1.0 / alpha)
    };
    Ok(value.clamp(lo, hi))
}

/// `(1/α) ln((1/n) Σ e^{α xᵢ})`, evaluated in shifted log-sum-exp form.
pub fn exponential_mean(x: &[f64], alpha: f64) -> Result<f64> {
    nonempty(x)?;
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidSpec(format!("exponential mean alpha = {alpha}")));
    }
    if let Some(&bad) = x.iter().find(|v| !v.is_finite()) {
        return Err(Error::DomainError { value: bad, domain: "(-inf, inf)".into() });
    }
    let (lo, hi) = bounds(x);
    let shift = if alpha > 0.0 { hi } else { lo };
    let n = x.len() as f64;
    let s: f64 = x.iter().map(|v| (alpha * (v - shift)).exp()).sum::<f64>() / n;
    Ok((shift + s.ln() / alpha).clamp(lo, hi))
}

pub fn arithmetic_mean(x: &[f64]) -> Result<f64> {
    MeanSpec::Arithmetic.evaluate(x)
}

pub fn geometric_mean(x: &[f64]) -> Result<f64> {
    MeanSpec::Geometric.evaluate(x)
}

pub fn harmonic_mean(x: &[f64]) -> Result<f64> {
    MeanSpec::Harmonic.evaluate(x)
}

/// Solves Chisini's equation `g(M,…,M) = g(x)` for `M` in `bracket` by
/// bisection. `t ↦ g(t,…,t)` must be strictly monotone on the bracket.
pub fn chisini_solve(g: &dyn Fn(&[f64]) -> f64, x: &[f64], bracket: (f64, f64)) -> Result<f64> {
    nonempty(x)?;
    let target = g(x);
    if !target.is_finite() {
        return Err(Error::DomainError { value: target, domain: "finite values of the Chisini function".into() });
    }
    let n = x.len();
    let diagonal = |t: f64| g(&vec![t; n]);
    numeric::bisect(&diagonal, target, bracket.0, bracket.1)
}

/// Smallest factor applied to [`EPS_QUAD`] when tightening a quadrature.
const MIN_TOLERANCE_FACTOR: f64 = 1e-4;

/// Tolerance for an average that is multiplied by `gain` and mapped through
/// `f⁻¹` on `[lo, hi]`, so that the resulting mean is accurate to about
/// [`EPS_QUAD`].
fn mean_tolerance(f: &Generator, lo: f64, hi: f64, gain: f64) -> f64 {
    let slope = f.derivative(lo).abs().min(f.derivative(hi).abs());
    let factor = slope / gain.abs();
    if factor.is_finite() {
        EPS_QUAD * factor.clamp(MIN_TOLERANCE_FACTOR, 1.0)
    } else {
        EPS_QUAD
    }
}

fn check_segment(f: &Generator, lo: f64, hi: f64) -> Result<()> {
    for v in [lo, hi] {
        if !f.domain().contains(v) {
            return Err(Error::DomainError { value: v, domain: f.domain().to_string() });
        }
    }
    Ok(())
}

/// Lagrangian mean `f⁻¹((1/(y−x)) ∫ₓʸ f)`; `M(x, x) = x`.
pub fn lagrangian_mean(x: f64, y: f64, f: &Generator) -> Result<f64> {
    if x == y {
        check_segment(f, x, x)?;
        return Ok(x);
    }
    let (lo, hi) = (x.min(y), x.max(y));
    check_segment(f, lo, hi)?;
    let avg = numeric::average_value(&|t| f.eval(t), lo, hi, mean_tolerance(f, lo, hi, 1.0))?;
    Ok(internal_inverse(f, avg, lo, hi))
}

/// Logarithmic mean `(x − y)/(ln x − ln y)`; `L(x, x) = x`.
pub fn logarithmic_mean(x: f64, y: f64) -> Result<f64> {
    for v in [x, y] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::DomainError { value: v, domain: "(0, inf)".into() });
        }
    }
    if x == y {
        return Ok(x);
    }
    let (lo, hi) = (x.min(y), x.max(y));
    // ln(y/x) is better conditioned than ln y − ln x for close arguments
    Ok(((hi - lo) / (hi / lo).ln()).clamp(lo, hi))
}

/// Cauchy mean `f⁻¹((1/(g(y)−g(x))) ∫ₓʸ f·g′)`; `M(x, x) = x`.
pub fn cauchy_mean(x: f64, y: f64, f: &Generator, g: &Generator) -> Result<f64> {
    if x == y {
        check_segment(f, x, x)?;
        check_segment(g, x, x)?;
        return Ok(x);
    }
    let (lo, hi) = (x.min(y), x.max(y));
    check_segment(f, lo, hi)?;
    check_segment(g, lo, hi)?;
    let dg = g.eval(hi) - g.eval(lo);
    if dg == 0.0 || !dg.is_finite() {
        return Err(Error::DegenerateG { x: lo, y: hi });
    }
    let gain = (hi - lo) / dg;
    let tolerance = mean_tolerance(f, lo, hi, gain);
    let avg = numeric::average_value(&|t| f.eval(t) * g.derivative(t), lo, hi, tolerance)?;
    let value = avg * gain;
    Ok(internal_inverse(f, value, lo, hi))
}
