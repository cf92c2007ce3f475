use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::report::{eval, Tally};
use super::{close, Aggregate, PropertyReport, Sampler, Witness, EPS_LAW, EPS_MONO};

fn one_based(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// Next permutation in lexicographic order; `false` after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

fn permute(x: &[f64], p: &[usize]) -> Vec<f64> {
    p.iter().map(|&i| x[i]).collect()
}

pub fn check_symmetry(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let n = s.n;
    let mut tally = Tally::new("symmetry", s.tolerance_or(EPS_LAW));
    let mut rng = s.rng("symmetry");
    let tol = tally.tolerance();
    // small n: every permutation on every point; otherwise the two
    // generators of the symmetric group plus one random permutation, with
    // a full sweep on the first point up to n = 8
    let every = if n <= 4 { all_permutations(n) } else { Vec::new() };
    let mut swap: Vec<usize> = (0..n).collect();
    if n >= 2 {
        swap.swap(0, 1);
    }
    let rotate: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    for (index, x) in s.points(&mut rng, n).into_iter().enumerate() {
        let perms: Vec<Vec<usize>> = if n <= 4 {
            every.clone()
        } else if index == 0 && n <= 8 {
            all_permutations(n)
        } else {
            let mut random: Vec<usize> = (0..n).collect();
            random.shuffle(&mut rng);
            vec![swap.clone(), rotate.clone(), random]
        };
        let outcome = (|| {
            let base = eval(agg, &x)?;
            for p in &perms {
                let moved = permute(&x, p);
                let v = eval(agg, &moved)?;
                if !close(base, v, tol) {
                    return Ok(Some(Witness::new(
                        vec![x.clone(), moved],
                        base,
                        v,
                        format!("permutation {}", one_based(p)),
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotonicityGrade {
    Nondecreasing,
    /// Nondecreasing, and strictly increasing in each argument.
    Strict,
    /// Nondecreasing, and strictly increasing when every argument increases.
    Unanimous,
}

impl MonotonicityGrade {
    fn name(self) -> &'static str {
        match self {
            MonotonicityGrade::Nondecreasing => "nondecreasing",
            MonotonicityGrade::Strict => "strict",
            MonotonicityGrade::Unanimous => "unanimous",
        }
    }
}

/// Raises the chosen coordinates of `x` to random values in the box.
fn raise(s: &Sampler, rng: &mut ChaCha8Rng, x: &[f64], chosen: &[usize]) -> Vec<f64> {
    let mut y = x.to_vec();
    for &i in chosen {
        let room = s.hi - x[i];
        y[i] = (x[i] + room * rng.gen_range(0.05..=1.0)).min(s.hi);
    }
    y
}

pub fn check_monotonicity(agg: &dyn Aggregate, grade: MonotonicityGrade, s: &Sampler) -> PropertyReport {
    let n = s.n;
    let mut tally = Tally::new(grade.name(), s.tolerance_or(EPS_MONO));
    let mut rng = s.rng(grade.name());
    let slack = tally.tolerance();
    let min_room = 1e-6 * (s.hi - s.lo);
    for x in s.points(&mut rng, n) {
        let open: Vec<usize> = (0..n).filter(|&i| s.hi - x[i] > min_room).collect();
        // a weak pair (random nonempty subset raised) for every grade
        let mut chosen: Vec<usize> = open.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if chosen.is_empty() && !open.is_empty() {
            chosen.push(open[rng.gen_range(0..open.len())]);
        }
        let weak = raise(s, &mut rng, &x, &chosen);
        let strict = match grade {
            MonotonicityGrade::Nondecreasing => None,
            MonotonicityGrade::Strict if !open.is_empty() => {
                let i = open[rng.gen_range(0..open.len())];
                Some((raise(s, &mut rng, &x, &[i]), format!("raised x{} only", i + 1)))
            }
            MonotonicityGrade::Unanimous if open.len() == n => {
                let all: Vec<usize> = (0..n).collect();
                Some((raise(s, &mut rng, &x, &all), "raised every argument".to_string()))
            }
            _ => None,
        };
        if chosen.is_empty() {
            tally.skip("no room to raise any argument");
            continue;
        }
        let outcome = (|| {
            let base = eval(agg, &x)?;
            let up = eval(agg, &weak)?;
            if base > up && !close(base, up, slack) {
                return Ok(Some(Witness::new(
                    vec![x.clone(), weak.clone()],
                    base,
                    up,
                    "second input dominates the first but its value is smaller",
                )));
            }
            if let Some((y, how)) = &strict {
                let v = eval(agg, y)?;
                if v <= base {
                    return Ok(Some(Witness::new(
                        vec![x.clone(), y.clone()],
                        base,
                        v,
                        format!("{how}; value did not increase"),
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

/// Full idempotency `A(c, …, c) = c` on the box, or the weak form checked
/// at the two box ends only.
pub fn check_idempotency(agg: &dyn Aggregate, s: &Sampler, weak: bool) -> PropertyReport {
    let name = if weak { "weak-idempotent" } else { "idempotent" };
    let mut tally = Tally::new(name, s.tolerance_or(EPS_LAW));
    let mut rng = s.rng(name);
    let tol = tally.tolerance();
    let values: Vec<f64> = if weak {
        vec![s.lo, s.hi].into_iter().filter(|v| s.domain.contains(*v)).collect()
    } else {
        let mut v = s.grid_values(s.grid);
        v.extend((0..s.samples).map(|_| s.value(&mut rng)));
        v
    };
    for c in values {
        let x = vec![c; s.n];
        let outcome = eval(agg, &x)
            .map(|v| (!close(v, c, tol)).then(|| Witness::new(vec![x.clone()], v, c, "A(c, ..., c) differs from c")));
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Conjunctive,
    Disjunctive,
    Internal,
}

pub fn check_bounds(agg: &dyn Aggregate, bound: Bound, s: &Sampler) -> PropertyReport {
    let name = match bound {
        Bound::Conjunctive => "conjunctive",
        Bound::Disjunctive => "disjunctive",
        Bound::Internal => "internal",
    };
    let mut tally = Tally::new(name, s.tolerance_or(EPS_LAW));
    let mut rng = s.rng(name);
    let tol = tally.tolerance();
    for x in s.points(&mut rng, s.n) {
        let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (floor, cap) = match bound {
            Bound::Conjunctive => (f64::NEG_INFINITY, lo),
            Bound::Disjunctive => (hi, f64::INFINITY),
            Bound::Internal => (lo, hi),
        };
        let outcome = eval(agg, &x).map(|v| {
            if v > cap && !close(v, cap, tol) {
                Some(Witness::new(vec![x.clone()], v, cap, "value above the allowed maximum"))
            } else if v < floor && !close(v, floor, tol) {
                Some(Witness::new(vec![x.clone()], v, floor, "value below the allowed minimum"))
            } else {
                None
            }
        });
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}

/// Heuristic: probes steps of size `δ = 1e-6·(box width)` and flags jumps
/// larger than `L·δ`. Passing does not establish continuity.
pub fn check_continuity_smoke(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let delta = 1e-6 * (s.hi - s.lo);
    let threshold = s.lipschitz * delta;
    let mut tally = Tally::new("continuity-smoke", threshold);
    tally.note(format!("heuristic: jumps above L*delta with L = {}, delta = {delta}", s.lipschitz));
    let mut rng = s.rng("continuity-smoke");
    for x in s.points(&mut rng, s.n) {
        let mut y = x.clone();
        for v in y.iter_mut() {
            let step = if rng.gen_bool(0.5) { delta } else { -delta };
            let moved = *v + step;
            *v = if moved >= s.lo && moved <= s.hi { moved } else { *v - step };
        }
        let outcome = (|| {
            let a = eval(agg, &x)?;
            let b = eval(agg, &y)?;
            let jump = (a - b).abs();
            Ok((jump > threshold || jump.is_nan())
                .then(|| Witness::new(vec![x.clone(), y.clone()], a, b, format!("jump {jump} over a step of {delta}"))))
        })();
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}
