//! Definition-level predicates for fuzzy connectives: t-norms, t-conorms
//! and uninorms are symmetric, nondecreasing, associative operations with
//! an identity element (the top, the bottom, or any point of the box).

use crate::axioms::report::{eval, Tally};
use crate::axioms::{
    check_associativity, check_monotonicity, check_symmetry, close, Aggregate, MonotonicityGrade, PropertyReport,
    Sampler, Verdict, Witness, EPS_LAW,
};

const SEARCH_GRID: usize = 1001;
const RESIDUAL_GRID: usize = 101;
const REFINE_STEPS: usize = 60;

fn binary(s: &Sampler) -> Sampler {
    s.clone().with_n(2)
}

/// `A(e, x) = x = A(x, e)` on the grid and on random points of the box.
fn check_identity(op: &dyn Aggregate, e: f64, s: &Sampler) -> PropertyReport {
    let mut tally = Tally::new("identity", s.tolerance_or(EPS_LAW));
    let mut rng = s.rng("identity");
    let tol = tally.tolerance();
    let mut xs = s.grid_values(s.grid.max(11));
    xs.extend((0..s.samples).map(|_| s.value(&mut rng)));
    for x in xs {
        let outcome = (|| {
            for input in [[e, x], [x, e]] {
                let v = eval(op, &input)?;
                if !close(v, x, tol) {
                    return Ok(Some(Witness::new(
                        vec![input.to_vec()],
                        v,
                        x,
                        format!("e = {e} does not act as identity"),
                    )));
                }
            }
            Ok(None)
        })();
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}

/// Merges sub-checks into one report. The first failing part supplies the
/// witness; its name prefixes the witness detail.
fn combine(name: &str, parts: Vec<PropertyReport>, mut notes: Vec<String>) -> PropertyReport {
    let failed = parts.iter().find(|p| !p.holds());
    let witness = failed.and_then(|p| {
        p.witness.clone().map(|mut w| {
            w.detail = format!("{}: {}", p.property, w.detail);
            w
        })
    });
    for p in &parts {
        notes.extend(p.notes.iter().map(|n| format!("{}: {n}", p.property)));
    }
    PropertyReport {
        property: name.to_string(),
        verdict: if failed.is_some() { Verdict::Fails } else { Verdict::HoldsOnSamples },
        witness,
        samples: parts.iter().map(|p| p.samples).sum(),
        skipped: parts.iter().map(|p| p.skipped).sum(),
        tolerance: parts.iter().map(|p| p.tolerance).fold(0.0, f64::max),
        notes,
    }
}

fn structural(op: &dyn Aggregate, s: &Sampler) -> Vec<PropertyReport> {
    vec![check_symmetry(op, s), check_monotonicity(op, MonotonicityGrade::Nondecreasing, s), check_associativity(op, s)]
}

/// Symmetric, nondecreasing, associative, with the box top as identity.
pub fn is_tnorm(op: &dyn Aggregate, sampler: &Sampler) -> PropertyReport {
    let s = binary(sampler);
    let mut parts = structural(op, &s);
    parts.push(check_identity(op, s.hi, &s));
    combine("t-norm", parts, Vec::new())
}

/// Symmetric, nondecreasing, associative, with the box bottom as identity.
pub fn is_tconorm(op: &dyn Aggregate, sampler: &Sampler) -> PropertyReport {
    let s = binary(sampler);
    let mut parts = structural(op, &s);
    parts.push(check_identity(op, s.lo, &s));
    combine("t-conorm", parts, Vec::new())
}

/// Largest deviation from the identity law at `e` over a fixed grid;
/// evaluation errors count as infinite.
fn residual(op: &dyn Aggregate, e: f64, xs: &[f64]) -> f64 {
    xs.iter()
        .map(|&x| {
            let left = eval(op, &[e, x]).map_or(f64::INFINITY, |v| (v - x).abs());
            let right = eval(op, &[x, e]).map_or(f64::INFINITY, |v| (v - x).abs());
            left.max(right)
        })
        .fold(0.0, f64::max)
}

/// Candidate identity element: the best point of a uniform grid over the
/// box, refined by repeated halving around it.
pub fn locate_identity(op: &dyn Aggregate, lo: f64, hi: f64) -> (f64, f64) {
    let at = |count: usize, i: usize| lo + (hi - lo) * i as f64 / (count - 1) as f64;
    let xs: Vec<f64> = (0..RESIDUAL_GRID).map(|i| at(RESIDUAL_GRID, i)).collect();
    let mut best = (lo, f64::INFINITY);
    for e in (0..SEARCH_GRID).map(|i| at(SEARCH_GRID, i)) {
        let r = residual(op, e, &xs);
        if r < best.1 {
            best = (e, r);
        }
    }
    let step = (hi - lo) / (SEARCH_GRID - 1) as f64;
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    for _ in 0..REFINE_STEPS {
        let quarter = (b - a) / 4.0;
        let (left, right) = (a + quarter, b - quarter);
        let (rl, rr) = (residual(op, left, &xs), residual(op, right, &xs));
        for (e, r) in [(left, rl), (right, rr)] {
            if r < best.1 {
                best = (e, r);
            }
        }
        let mid = 0.5 * (a + b);
        if rl <= rr {
            b = mid;
        } else {
            a = mid;
        }
    }
    best
}

/// Symmetric, nondecreasing, associative, with some identity in the box.
/// The identity is located numerically and then checked like the others.
pub fn is_uninorm(op: &dyn Aggregate, sampler: &Sampler) -> PropertyReport {
    let s = binary(sampler);
    let (e, r) = locate_identity(op, s.lo, s.hi);
    let mut parts = structural(op, &s);
    parts.push(check_identity(op, e, &s));
    combine("uninorm", parts, vec![format!("identity candidate e = {e} (grid residual {r})")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Result;

    fn min(x: &[f64]) -> Result<f64> {
        Ok(x[0].min(x[1]))
    }

    fn luka(x: &[f64]) -> Result<f64> {
        Ok((x[0] + x[1] - 1.0).max(0.0))
    }

    fn median_half(x: &[f64]) -> Result<f64> {
        Ok(crate::numeric::median3(x[0], x[1], 0.5))
    }

    #[test]
    fn textbook_tnorms() {
        let s = Sampler::new(9);
        assert!(is_tnorm(&min, &s).holds());
        assert!(is_tnorm(&luka, &s).holds());
        assert!(!is_tconorm(&min, &s).holds());
        let max = |x: &[f64]| -> Result<f64> { Ok(x[0].max(x[1])) };
        assert!(is_tconorm(&max, &s).holds());
    }

    #[test]
    fn median_has_no_identity() {
        let r = is_uninorm(&median_half, &Sampler::new(9));
        assert!(!r.holds());
        let w = r.witness.unwrap();
        assert!(w.detail.starts_with("identity"));
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn identity_is_located() {
        let (e, r) = locate_identity(&min, 0.0, 1.0);
        assert_eq!((e, r), (1.0, 0.0));
        let cross = |x: &[f64]| -> Result<f64> {
            let e = 0.3;
            Ok(if x[0] <= e && x[1] <= e {
                x[0].min(x[1])
            } else if x[0] >= e && x[1] >= e {
                x[0].max(x[1])
            } else {
                x[0].min(x[1])
            })
        };
        let report = is_uninorm(&cross, &Sampler::new(9));
        assert!(report.holds(), "{report}");
        assert!(report.notes[0].contains("e = 0.3"));
    }
}
