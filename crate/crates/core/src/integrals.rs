//! Discrete Choquet and Sugeno integrals and their special cases.
//!
//! Inputs are sorted ascending with ties broken by ascending index; the
//! integrals themselves do not depend on how ties are broken.

use crate::error::{Error, Result};
use crate::measure::{BinaryMeasure, FuzzyMeasure};
use crate::numeric::{median_odd, sort_permutation};
use crate::subset::{self, Subset};
use crate::weights::{Normalization, WeightVector};

/// Ascending order of an input vector together with its upper level sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortView {
    order: Vec<usize>,
    upper: Vec<Subset>,
}

impl SortView {
    pub fn new(x: &[f64]) -> Self {
        Self::from_order(sort_permutation(x))
    }

    /// Builds the view from an explicit 0-based ascending order.
    pub fn from_order(order: Vec<usize>) -> Self {
        let n = order.len();
        let mut upper = vec![0; n + 1];
        for i in (0..n).rev() {
            upper[i] = upper[i + 1] | subset::singleton(order[i] + 1);
        }
        Self { order, upper }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// 0-based index of the `i`-th smallest component (`i` from 1).
    pub fn position(&self, i: usize) -> usize {
        self.order[i - 1]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `A₍ᵢ₎`, the indices of the `n − i + 1` largest components, for
    /// `i` in `1..=n+1`.
    pub fn upper(&self, i: usize) -> Subset {
        self.upper[i - 1]
    }
}

fn check_len(x: &[f64], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    Ok(())
}

fn check_unit(x: &[f64]) -> Result<()> {
    for (i, &v) in x.iter().enumerate() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::RangeViolation { what: format!("x{}", i + 1), value: v, lo: 0.0, hi: 1.0 });
        }
    }
    Ok(())
}

fn check_finite(x: &[f64]) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::DomainError { value: x[i], domain: "finite reals".into() }),
        None => Ok(()),
    }
}

fn weights_for(x: &[f64], w: &WeightVector, normalization: Normalization) -> Result<()> {
    w.require(normalization)?;
    check_len(x, w.len())
}

/// `Σᵢ x₍ᵢ₎ (μ(A₍ᵢ₎) − μ(A₍ᵢ₊₁₎))`.
pub fn choquet(x: &[f64], mu: &FuzzyMeasure) -> Result<f64> {
    check_len(x, mu.n())?;
    check_finite(x)?;
    Ok(choquet_sorted(x, mu, &SortView::new(x)))
}

/// Choquet sum along a caller-supplied ascending order of `x`.
///
/// A run of equal values contributes a single term `x · (μ(A_start) − μ(A_after))`,
/// so the result is bit-for-bit independent of how ties are ordered.
pub fn choquet_sorted(x: &[f64], mu: &FuzzyMeasure, view: &SortView) -> f64 {
    let n = x.len();
    let mut total = 0.0;
    let mut start = 1;
    for i in 1..=n {
        let value = x[view.position(i)];
        if i < n && x[view.position(i + 1)] == value {
            continue;
        }
        total += value * (mu.value(view.upper(start)) - mu.value(view.upper(i + 1)));
        start = i + 1;
    }
    total
}

/// `⋁ᵢ (x₍ᵢ₎ ∧ μ(A₍ᵢ₎))` for `x ∈ [0,1]ⁿ`.
pub fn sugeno(x: &[f64], mu: &FuzzyMeasure) -> Result<f64> {
    check_len(x, mu.n())?;
    check_unit(x)?;
    let view = SortView::new(x);
    Ok((1..=x.len()).map(|i| x[view.position(i)].min(mu.value(view.upper(i)))).fold(0.0, f64::max))
}

/// `⋁_{T ≠ ∅} (μ(T) ∧ ⋀_{i∈T} xᵢ)`, enumerating every subset.
pub fn sugeno_disjunctive(x: &[f64], mu: &FuzzyMeasure) -> Result<f64> {
    check_len(x, mu.n())?;
    check_unit(x)?;
    let mut best: f64 = 0.0;
    for set in 1..=mu.full_set() {
        let meet = subset::elements(set).map(|i| x[i - 1]).fold(f64::INFINITY, f64::min);
        best = best.max(meet.min(mu.value(set)));
    }
    Ok(best)
}

/// `median(x₁, …, xₙ, μ(A₍₂₎), …, μ(A₍ₙ₎))`.
pub fn sugeno_weighted_median(x: &[f64], mu: &FuzzyMeasure) -> Result<f64> {
    check_len(x, mu.n())?;
    check_unit(x)?;
    let view = SortView::new(x);
    let mut pool: Vec<f64> = x.to_vec();
    pool.extend((2..=x.len()).map(|i| mu.value(view.upper(i))));
    Ok(median_odd(&mut pool))
}

/// `Σ ωᵢ x₍ᵢ₎`.
pub fn owa(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::SumOne)?;
    let view = SortView::new(x);
    Ok(w.as_slice().iter().enumerate().map(|(i, wi)| wi * x[view.position(i + 1)]).sum())
}

/// `Σ ωᵢ xᵢ`.
pub fn wam(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::SumOne)?;
    Ok(x.iter().zip(w.as_slice()).map(|(xi, wi)| xi * wi).sum())
}

/// `x₍ₖ₎`, the `k`-th smallest component (`k` from 1).
pub fn order_statistic(x: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k > x.len() {
        return Err(Error::IndexError { index: k, n: x.len() });
    }
    Ok(x[SortView::new(x).position(k)])
}

/// Cardinality-based measure whose Choquet integral is `owa(·, ω)`:
/// `μ(S) = Σ_{i = n−|S|+1}^{n} ωᵢ`.
pub fn owa_to_measure(w: &WeightVector) -> Result<FuzzyMeasure> {
    w.require(Normalization::SumOne)?;
    let n = w.len();
    let mut levels = vec![0.0; n + 1];
    for s in 1..=n {
        levels[s] = levels[s - 1] + w.as_slice()[n - s];
    }
    FuzzyMeasure::cardinality_based(&levels)
}

/// OWA weights of a cardinality-based measure:
/// `ωᵢ = μ(|S| = n−i+1) − μ(|S| = n−i)`.
pub fn measure_to_owa(mu: &FuzzyMeasure) -> Result<WeightVector> {
    let levels = mu.cardinality_levels()?;
    let n = mu.n();
    let w = (1..=n).map(|i| (levels[n - i + 1] - levels[n - i]).max(0.0)).collect();
    WeightVector::sum_one(w)
}

/// Weighted maximum `⋁ (ωᵢ ∧ xᵢ)`.
pub fn pmax(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::MaxOne)?;
    check_unit(x)?;
    Ok(x.iter().zip(w.as_slice()).map(|(xi, wi)| xi.min(*wi)).fold(0.0, f64::max))
}

/// Weighted minimum `⋀ (ωᵢ ∨ xᵢ)`.
pub fn pmin(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::MinZero)?;
    check_unit(x)?;
    Ok(x.iter().zip(w.as_slice()).map(|(xi, wi)| xi.max(*wi)).fold(1.0, f64::min))
}

/// Ordered weighted maximum `⋁ (ωᵢ ∧ x₍ᵢ₎)`.
pub fn opmax(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::MaxOne)?;
    check_unit(x)?;
    let view = SortView::new(x);
    Ok(w.as_slice().iter().enumerate().map(|(i, wi)| wi.min(x[view.position(i + 1)])).fold(0.0, f64::max))
}

/// Ordered weighted minimum `⋀ (ωᵢ ∨ x₍ᵢ₎)`.
pub fn opmin(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::MinZero)?;
    check_unit(x)?;
    let view = SortView::new(x);
    Ok(w.as_slice().iter().enumerate().map(|(i, wi)| wi.max(x[view.position(i + 1)])).fold(1.0, f64::min))
}

/// Nonincreasing weights giving the same ordered weighted maximum:
/// `ω′ᵢ = ⋁_{j≥i} ωⱼ`.
pub fn opmax_envelope(w: &WeightVector) -> Vec<f64> {
    let mut out = w.as_slice().to_vec();
    for i in (0..out.len().saturating_sub(1)).rev() {
        out[i] = out[i].max(out[i + 1]);
    }
    out
}

/// Nonincreasing weights giving the same ordered weighted minimum:
/// `ω″ᵢ = ⋀_{j≤i} ωⱼ`.
pub fn opmin_envelope(w: &WeightVector) -> Vec<f64> {
    let mut out = w.as_slice().to_vec();
    for i in 1..out.len() {
        out[i] = out[i].min(out[i - 1]);
    }
    out
}

/// `median(x₁, …, xₙ, ω′₂, …, ω′ₙ)` with the envelope weights `ω′`.
pub fn opmax_median(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::MaxOne)?;
    check_unit(x)?;
    let mut pool = x.to_vec();
    pool.extend_from_slice(&opmax_envelope(w)[1..]);
    Ok(median_odd(&mut pool))
}

/// `median(x₁, …, xₙ, ω″₁, …, ω″ₙ₋₁)` with the envelope weights `ω″`.
pub fn opmin_median(x: &[f64], w: &WeightVector) -> Result<f64> {
    weights_for(x, w, Normalization::MinZero)?;
    check_unit(x)?;
    let env = opmin_envelope(w);
    let mut pool = x.to_vec();
    pool.extend_from_slice(&env[..env.len() - 1]);
    Ok(median_odd(&mut pool))
}

/// Cardinality-based measure with `sugeno(·, μ) = opmax(·, ω)`:
/// `μ(|S| = s) = ω′_{n−s+1}`.
pub fn opmax_measure(w: &WeightVector) -> Result<FuzzyMeasure> {
    w.require(Normalization::MaxOne)?;
    let env = opmax_envelope(w);
    let n = env.len();
    let levels: Vec<f64> = (0..=n).map(|s| if s == 0 { 0.0 } else { env[n - s] }).collect();
    FuzzyMeasure::cardinality_based(&levels)
}

/// Cardinality-based measure with `sugeno(·, μ) = opmin(·, ω)`:
/// `μ(|S| = s) = ω″_{n−s}` and `μ(N) = 1`.
pub fn opmin_measure(w: &WeightVector) -> Result<FuzzyMeasure> {
    w.require(Normalization::MinZero)?;
    let env = opmin_envelope(w);
    let n = env.len();
    let levels: Vec<f64> = (0..=n).map(|s| if s == n { 1.0 } else { env[n - s - 1] }).collect();
    FuzzyMeasure::cardinality_based(&levels)
}

/// Max-one weights of the ordered weighted maximum equal to the Sugeno
/// integral of a cardinality-based measure.
pub fn measure_to_opmax(mu: &FuzzyMeasure) -> Result<WeightVector> {
    let levels = mu.cardinality_levels()?;
    let n = mu.n();
    let mut w: Vec<f64> = (1..=n).map(|i| levels[n - i + 1]).collect();
    w[0] = 1.0;
    WeightVector::max_one(w)
}

/// Min-zero weights of the ordered weighted minimum equal to the Sugeno
/// integral of a cardinality-based measure.
pub fn measure_to_opmin(mu: &FuzzyMeasure) -> Result<WeightVector> {
    let levels = mu.cardinality_levels()?;
    let n = mu.n();
    let mut w: Vec<f64> = (1..=n).map(|i| levels[n - i]).collect();
    w[n - 1] = 0.0;
    WeightVector::min_zero(w)
}

/// Ordered weighted minimum weights representing the same function as
/// `opmax(·, ω)`.
pub fn opmax_to_opmin(w: &WeightVector) -> Result<WeightVector> {
    measure_to_opmin(&opmax_measure(w)?)
}

/// Ordered weighted maximum weights representing the same function as
/// `opmin(·, ω)`.
pub fn opmin_to_opmax(w: &WeightVector) -> Result<WeightVector> {
    measure_to_opmax(&opmin_measure(w)?)
}

/// `⋁_{γ(S)=1} ⋀_{i∈S} xᵢ`, via the minimal winning sets.
pub fn lattice_polynomial(x: &[f64], gamma: &BinaryMeasure) -> Result<f64> {
    check_len(x, gamma.n())?;
    Ok(gamma
        .minimal_winning()
        .into_iter()
        .map(|set| subset::elements(set).map(|i| x[i - 1]).fold(f64::INFINITY, f64::min))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `ωᵢ ∝ (1−θ)^{n−i} θ^{i−1}`, normalized to sum one.
pub fn geometric_weights(n: usize, theta: f64) -> Result<WeightVector> {
    if n == 0 {
        return Err(Error::WeightError("empty weight vector".into()));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::RangeViolation { what: "theta".into(), value: theta, lo: 0.0, hi: 1.0 });
    }
    let raw: Vec<f64> = (1..=n).map(|i| (1.0 - theta).powi((n - i) as i32) * theta.powi(i as i32 - 1)).collect();
    let total: f64 = raw.iter().sum();
    WeightVector::sum_one(raw.into_iter().map(|v| v / total).collect())
}
