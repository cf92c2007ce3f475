use rand::Rng;

use super::report::{eval, Tally};
use super::{close, Aggregate, PropertyReport, Sampler, Witness, EPS_ADDITIVE, EPS_EXACT};
use crate::subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComonotonicLaw {
    Additive,
    Minitive,
    Maxitive,
}

impl ComonotonicLaw {
    fn name(self) -> &'static str {
        match self {
            ComonotonicLaw::Additive => "comonotonic-additive",
            ComonotonicLaw::Minitive => "comonotonic-minitive",
            ComonotonicLaw::Maxitive => "comonotonic-maxitive",
        }
    }
}

/// The law on pairs sharing a sorting permutation. Additive pairs come from
/// the half box so their sum stays admissible.
pub fn check_comonotonic(agg: &dyn Aggregate, law: ComonotonicLaw, s: &Sampler) -> PropertyReport {
    let default = match law {
        ComonotonicLaw::Additive => EPS_ADDITIVE,
        _ => EPS_EXACT,
    };
    let mut tally = Tally::new(law.name(), s.tolerance_or(default));
    let mut rng = s.rng(law.name());
    let tol = tally.tolerance();
    let (lo, hi) = match law {
        ComonotonicLaw::Additive => s.half_box(),
        _ => (s.lo, s.hi),
    };
    for _ in 0..s.samples {
        let (x, y) = s.comonotonic_pair(&mut rng, s.n, lo, hi);
        let outcome = (|| {
            let (a, b) = (eval(agg, &x)?, eval(agg, &y)?);
            let (combined, rhs, what): (Vec<f64>, f64, &str) = match law {
                ComonotonicLaw::Additive => {
                    (x.iter().zip(&y).map(|(p, q)| p + q).collect(), a + b, "A(x+y) vs A(x)+A(y)")
                }
                ComonotonicLaw::Minitive => {
                    (x.iter().zip(&y).map(|(p, q)| p.min(*q)).collect(), a.min(b), "A(x^y) vs A(x)^A(y)")
                }
                ComonotonicLaw::Maxitive => {
                    (x.iter().zip(&y).map(|(p, q)| p.max(*q)).collect(), a.max(b), "A(xvy) vs A(x)vA(y)")
                }
            };
            let lhs = eval(agg, &combined)?;
            Ok((!close(lhs, rhs, tol)).then(|| Witness::new(vec![x.clone(), y.clone()], lhs, rhs, what)))
        })();
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}

/// `A(x + y) = A(x) + A(y)` on independent pairs from the half box.
pub fn check_additivity(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let mut tally = Tally::new("additive", s.tolerance_or(EPS_ADDITIVE));
    let mut rng = s.rng("additive");
    let tol = tally.tolerance();
    let (lo, hi) = s.half_box();
    for _ in 0..s.samples {
        let x = s.vector_in(&mut rng, s.n, lo, hi);
        let y = s.vector_in(&mut rng, s.n, lo, hi);
        let outcome = (|| {
            let sum: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
            let lhs = eval(agg, &sum)?;
            let rhs = eval(agg, &x)? + eval(agg, &y)?;
            Ok((!close(lhs, rhs, tol))
                .then(|| Witness::new(vec![x.clone(), y.clone()], lhs, rhs, "A(x+y) vs A(x)+A(y)")))
        })();
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}

/// Weak minitivity `A(x ∧ r) = A(x) ∧ r`, or weak maxitivity with `∨`.
pub fn check_weak_lattice(agg: &dyn Aggregate, maxitive: bool, s: &Sampler) -> PropertyReport {
    let name = if maxitive { "weakly-maxitive" } else { "weakly-minitive" };
    let mut tally = Tally::new(name, s.tolerance_or(EPS_EXACT));
    let mut rng = s.rng(name);
    let tol = tally.tolerance();
    let meet = |a: f64, b: f64| if maxitive { a.max(b) } else { a.min(b) };
    let grid = s.grid_values(s.grid);
    let mut cases: Vec<(Vec<f64>, f64)> =
        s.grid_vectors(s.n).into_iter().flat_map(|x| grid.iter().map(move |r| (x.clone(), *r))).collect();
    cases.extend((0..s.samples).map(|_| (s.vector(&mut rng, s.n), s.value(&mut rng))));
    for (x, r) in cases {
        let outcome = (|| {
            let clipped: Vec<f64> = x.iter().map(|v| meet(*v, r)).collect();
            let lhs = eval(agg, &clipped)?;
            let rhs = meet(eval(agg, &x)?, r);
            Ok((!close(lhs, rhs, tol))
                .then(|| Witness::new(vec![x.clone(), clipped.clone()], lhs, rhs, format!("r = {r}"))))
        })();
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}

/// `A(r·1_S) ∈ {A(1_S), r}` and `A(1_S + r·1_{N∖S}) ∈ {A(1_S), r}`, where
/// the indicator takes the box top on `S` and the box bottom elsewhere.
/// Every subset is enumerated for `n ≤ 10`, otherwise subsets are drawn.
pub fn check_non_compensation(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let mut tally = Tally::new("non-compensative", s.tolerance_or(EPS_EXACT));
    let mut rng = s.rng("non-compensative");
    let tol = tally.tolerance();
    let n = s.n;
    let sets: Vec<u32> = if n <= 10 {
        (0..=subset::full(n)).collect()
    } else {
        (0..s.samples).map(|_| rng.gen::<u32>() & subset::full(n.min(20))).collect()
    };
    let mut levels = s.grid_values(11);
    let extra = (s.samples / sets.len().max(1)).max(1);
    levels.extend((0..extra).map(|_| s.value(&mut rng)));
    let fill = |set: u32, inside: f64, outside: f64| -> Vec<f64> {
        (1..=n).map(|i| if subset::contains(set, i) { inside } else { outside }).collect()
    };
    'outer: for &set in &sets {
        for &r in &levels {
            let indicator = fill(set, s.hi, s.lo);
            let scaled = fill(set, r, s.lo);
            let lifted = fill(set, s.hi, r);
            let outcome = (|| {
                let base = eval(agg, &indicator)?;
                for (probe, label) in [(&scaled, "A(r*1_S)"), (&lifted, "A(1_S + r*1_(N\\S))")] {
                    let v = eval(agg, probe)?;
                    if !close(v, base, tol) && !close(v, r, tol) {
                        return Ok(Some(Witness::new(
                            vec![indicator.clone(), probe.clone()],
                            v,
                            base,
                            format!("{label} = {v} is neither A(1_S) = {base} nor r = {r}"),
                        )));
                    }
                }
                Ok(None)
            })();
            if tally.record(outcome) {
                break 'outer;
            }
        }
    }
    tally.finish()
}
