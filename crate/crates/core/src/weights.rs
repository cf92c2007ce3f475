use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when validating measures and weight vectors.
pub const EPS_NORM: f64 = 1e-9;

/// Which normalization a weight vector satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Nonnegative, summing to one (weighted and ordered weighted means).
    SumOne,
    /// Entries in `[0,1]` with maximum one (weighted maximum).
    MaxOne,
    /// Entries in `[0,1]` with minimum zero (weighted minimum).
    MinZero,
}

/// A validated weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
    normalization: Normalization,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>, normalization: Normalization) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::WeightError("empty weight vector".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::WeightError(format!("non-finite weight {w}")));
        }
        match normalization {
            Normalization::SumOne => {
                if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| **w < 0.0) {
                    return Err(Error::WeightError(format!("weight {} = {w} is negative", i + 1)));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > EPS_NORM {
                    return Err(Error::WeightError(format!("weights sum to {total}, expected 1")));
                }
            }
            Normalization::MaxOne | Normalization::MinZero => {
                if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(0.0..=1.0).contains(*w)) {
                    return Err(Error::WeightError(format!("weight {} = {w} is outside [0,1]", i + 1)));
                }
                if normalization == Normalization::MaxOne {
                    let top = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    if top != 1.0 {
                        return Err(Error::WeightError(format!("largest weight is {top}, expected 1")));
                    }
                } else {
                    let bottom = weights.iter().copied().fold(f64::INFINITY, f64::min);
                    if bottom != 0.0 {
                        return Err(Error::WeightError(format!("smallest weight is {bottom}, expected 0")));
                    }
                }
            }
        }
        Ok(Self { weights, normalization })
    }

    pub fn sum_one(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights, Normalization::SumOne)
    }

    pub fn max_one(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights, Normalization::MaxOne)
    }

    pub fn min_zero(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights, Normalization::MinZero)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::WeightError("empty weight vector".into()));
        }
        Self::sum_one(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.weights
    }

    pub(crate) fn require(&self, normalization: Normalization) -> Result<()> {
        if self.normalization != normalization {
            return Err(Error::WeightError(format!(
                "expected {normalization:?} weights, got {:?}",
                self.normalization
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_one_accepts_within_tolerance() {
        assert!(WeightVector::sum_one(vec![0.5, 0.3, 0.2]).is_ok());
        assert!(WeightVector::sum_one(vec![0.5, 0.5 + 1e-12]).is_ok());
        assert!(WeightVector::sum_one(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::sum_one(vec![1.2, -0.2]).is_err());
    }

    #[test]
    fn max_and_min_normalizations() {
        assert!(WeightVector::max_one(vec![1.0, 0.4, 0.7]).is_ok());
        assert!(WeightVector::max_one(vec![0.9, 0.4]).is_err());
        assert!(WeightVector::min_zero(vec![0.0, 0.4]).is_ok());
        assert!(WeightVector::min_zero(vec![0.1, 0.4]).is_err());
        assert!(WeightVector::min_zero(vec![0.0, 1.4]).is_err());
    }
}
