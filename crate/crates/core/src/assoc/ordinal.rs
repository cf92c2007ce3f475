use crate::error::{Error, Result};

use super::archimedean::{ArchimedeanSpec, Orientation};

/// One summand of an ordinal sum: an Archimedean operation on `[0, 1]`
/// acting on the coordinate `(x − lo)/(hi − lo)` of its subinterval.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinalComponent {
    pub lo: f64,
    pub hi: f64,
    pub operation: ArchimedeanSpec,
}

/// Ordinal sum on `[a, b]`: component operations on disjoint subintervals,
/// `min` (conjunctive) or `max` (disjunctive) everywhere else.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinalSumSpec {
    orientation: Orientation,
    lo: f64,
    hi: f64,
    components: Vec<OrdinalComponent>,
}

impl OrdinalSumSpec {
    pub fn new(orientation: Orientation, interval: (f64, f64), components: Vec<OrdinalComponent>) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidSpec(format!("bad ordinal sum interval [{lo}, {hi}]")));
        }
        for (k, c) in components.iter().enumerate() {
            if !(c.lo < c.hi && c.lo >= lo && c.hi <= hi) {
                return Err(Error::InvalidSpec(format!(
                    "component {} interval [{}, {}] is not a nondegenerate part of [{lo}, {hi}]",
                    k + 1,
                    c.lo,
                    c.hi
                )));
            }
            if c.operation.interval() != (0.0, 1.0) {
                return Err(Error::InvalidSpec(format!("component {} operation must live on [0, 1]", k + 1)));
            }
            if c.operation.orientation() != orientation {
                return Err(Error::InvalidSpec(format!(
                    "component {} orientation differs from the ordinal sum",
                    k + 1
                )));
            }
            for (j, other) in components.iter().enumerate().take(k) {
                if c.lo < other.hi && other.lo < c.hi {
                    return Err(Error::InvalidSpec(format!("components {} and {} overlap", j + 1, k + 1)));
                }
            }
        }
        Ok(Self { orientation, lo, hi, components })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn components(&self) -> &[OrdinalComponent] {
        &self.components
    }

    /// Index of the first component whose closed interval contains `v`.
    fn component_of(&self, v: f64) -> Option<usize> {
        self.components.iter().position(|c| v >= c.lo && v <= c.hi)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        for v in [x, y] {
            if !(v >= self.lo && v <= self.hi) {
                return Err(Error::OutOfInterval { value: v, lo: self.lo, hi: self.hi });
            }
        }
        match (self.component_of(x), self.component_of(y)) {
            (Some(i), Some(j)) if i == j => {
                let c = &self.components[i];
                let width = c.hi - c.lo;
                let u = ((x - c.lo) / width).clamp(0.0, 1.0);
                let v = ((y - c.lo) / width).clamp(0.0, 1.0);
                let w = c.operation.eval(u, v)?;
                Ok((c.lo + w * width).clamp(c.lo, c.hi))
            }
            _ => Ok(match self.orientation {
                Orientation::Conjunctive => x.min(y),
                Orientation::Disjunctive => x.max(y),
            }),
        }
    }

    pub fn eval_n(&self, x: &[f64]) -> Result<f64> {
        let (first, rest) = x.split_first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        // validates a lone argument too
        let start = self.eval(*first, *first).map(|_| *first)?;
        rest.iter().try_fold(start, |acc, &v| self.eval(acc, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Generator;

    fn luka_half() -> OrdinalSumSpec {
        let op = ArchimedeanSpec::conjunctive((0.0, 1.0), Generator::neg_complement()).unwrap();
        OrdinalSumSpec::new(
            Orientation::Conjunctive,
            (0.0, 1.0),
            vec![OrdinalComponent { lo: 0.0, hi: 0.5, operation: op }],
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let s = luka_half();
        assert_eq!(s.eval(0.2, 0.8).unwrap(), 0.2);
        assert!((s.eval(0.4, 0.3).unwrap() - 0.2).abs() < 1e-12);
        assert_eq!(s.eval(0.7, 0.9).unwrap(), 0.7);
        let plain = OrdinalSumSpec::new(Orientation::Disjunctive, (0.0, 1.0), vec![]).unwrap();
        assert_eq!(plain.eval(0.3, 0.6).unwrap(), 0.6);
    }

    #[test]
    fn rejects_overlaps() {
        let op = ArchimedeanSpec::conjunctive((0.0, 1.0), Generator::neg_complement()).unwrap();
        let c = |lo, hi| OrdinalComponent { lo, hi, operation: op.clone() };
        assert!(OrdinalSumSpec::new(Orientation::Conjunctive, (0.0, 1.0), vec![c(0.0, 0.5), c(0.4, 0.8)]).is_err());
        // shared endpoints are fine
        assert!(OrdinalSumSpec::new(Orientation::Conjunctive, (0.0, 1.0), vec![c(0.0, 0.5), c(0.5, 0.8)]).is_ok());
        assert!(OrdinalSumSpec::new(Orientation::Disjunctive, (0.0, 1.0), vec![c(0.0, 0.5)]).is_err());
    }
}
