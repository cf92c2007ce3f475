use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{Generator, EPS_INV};

/// The four normalized shapes of continuous Archimedean operations, each
/// written through an increasing `g : [a,b] → [0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizedKind {
    /// `g⁻¹(max(Σ g(xᵢ) − n + 1, 0))`
    Luka,
    /// `g⁻¹(Π g(xᵢ))`
    StrictProduct,
    /// `g⁻¹(min(Σ g(xᵢ), 1))`
    DualLuka,
    /// `g⁻¹(1 − Π (1 − g(xᵢ)))`
    DualProduct,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedForm {
    kind: NormalizedKind,
    generator: Generator,
    lo: f64,
    hi: f64,
}

impl NormalizedForm {
    pub fn new(kind: NormalizedKind, generator: Generator, interval: (f64, f64)) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo < hi) {
            return Err(Error::InvalidSpec(format!("empty interval [{lo}, {hi}]")));
        }
        if !generator.is_increasing() {
            return Err(Error::GeneratorNotNormalized("g must be increasing".into()));
        }
        let domain = generator.domain();
        if !(domain.contains(lo) && domain.contains(hi)) {
            return Err(Error::GeneratorNotNormalized(format!(
                "g is undefined on part of [{lo}, {hi}] (domain {domain})"
            )));
        }
        let (ga, gb) = (generator.eval(lo), generator.eval(hi));
        if !(ga.abs() <= EPS_INV && (gb - 1.0).abs() <= EPS_INV) {
            return Err(Error::GeneratorNotNormalized(format!("g({lo}) = {ga}, g({hi}) = {gb}; expected 0 and 1")));
        }
        Ok(Self { kind, generator, lo, hi })
    }

    pub fn kind(&self) -> NormalizedKind {
        self.kind
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.eval_n(&[x, y])
    }

    pub fn eval_n(&self, x: &[f64]) -> Result<f64> {
        if x.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut g = Vec::with_capacity(x.len());
        for &v in x {
            if !(v >= self.lo && v <= self.hi) {
                return Err(Error::OutOfInterval { value: v, lo: self.lo, hi: self.hi });
            }
            g.push(self.generator.eval(v).clamp(0.0, 1.0));
        }
        let n = x.len() as f64;
        let inner = match self.kind {
            NormalizedKind::Luka => (g.iter().sum::<f64>() - n + 1.0).max(0.0),
            NormalizedKind::StrictProduct => g.iter().product(),
            NormalizedKind::DualLuka => g.iter().sum::<f64>().min(1.0),
            NormalizedKind::DualProduct => 1.0 - g.iter().map(|v| 1.0 - v).product::<f64>(),
        };
        Ok(self.generator.inverse(inner).clamp(self.lo, self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id_form(kind: NormalizedKind) -> NormalizedForm {
        NormalizedForm::new(kind, Generator::identity(), (0.0, 1.0)).unwrap()
    }

    #[test]
    fn examples() {
        let v = id_form(NormalizedKind::Luka).eval_n(&[0.9, 0.8, 0.7]).unwrap();
        assert!((v - 0.4).abs() < 1e-12);
        assert_eq!(id_form(NormalizedKind::DualLuka).eval(0.7, 0.6).unwrap(), 1.0);
        for x in [0.0, 0.25, 0.9, 1.0] {
            assert_eq!(id_form(NormalizedKind::StrictProduct).eval(x, 1.0).unwrap(), x);
        }
        let v = id_form(NormalizedKind::DualProduct).eval(0.5, 0.5).unwrap();
        assert!((v - 0.75).abs() < 1e-15);
    }

    #[test]
    fn rescaled_generator() {
        // g(x) = (x - 2)/4 on [2, 6]
        let g = Generator::affine(0.25, -0.5).unwrap();
        let f = NormalizedForm::new(NormalizedKind::Luka, g, (2.0, 6.0)).unwrap();
        // g(5.6) + g(4.8) - 1 = 0.9 + 0.7 - 1 = 0.6 -> 2 + 2.4
        assert!((f.eval(5.6, 4.8).unwrap() - 4.4).abs() < 1e-12);
        assert!(matches!(f.eval(1.0, 3.0), Err(Error::OutOfInterval { .. })));
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(
            NormalizedForm::new(NormalizedKind::Luka, Generator::identity(), (0.0, 2.0)),
            Err(Error::GeneratorNotNormalized(_))
        ));
        assert!(matches!(
            NormalizedForm::new(NormalizedKind::Luka, Generator::neg_complement(), (0.0, 1.0)),
            Err(Error::GeneratorNotNormalized(_))
        ));
    }
}
