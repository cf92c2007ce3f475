use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::{eval, Tally};
use super::sampler::OrdinalMap;
use super::{close, Aggregate, PropertyReport, Sampler, Witness, EPS_LAW};
use crate::error::{Error, Result};

/// Admissible transformations of a measurement scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    /// `x ↦ r·x`, `r > 0`
    Ratio,
    /// `x ↦ r·x + s`, `r > 0`
    Interval,
    /// strictly increasing bijections
    Ordinal,
}

impl Scale {
    pub(crate) fn tag(self) -> &'static str {
        match self {
            Scale::Ratio => "ratio",
            Scale::Interval => "interval",
            Scale::Ordinal => "ordinal",
        }
    }
}

/// Whether the output must follow the very same transformation as the
/// inputs, or only some transformation of the same kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleMode {
    InputOutput,
    InputOnly,
}

impl ScaleMode {
    pub(crate) fn tag(self) -> &'static str {
        match self {
            ScaleMode::InputOutput => "io",
            ScaleMode::InputOnly => "in",
        }
    }
}

const RATIO_RANGE: (f64, f64) = (0.1, 10.0);
const GROUP: usize = 6;

fn no_transform() -> Error {
    Error::InvalidSpec("no admissible transformation keeps these inputs in the domain".into())
}

/// Range of `r > 0` with `r·xᵢ` in the domain for every input.
fn ratio_range(s: &Sampler, xs: &[&[f64]]) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = RATIO_RANGE;
    let d = &s.domain;
    for &v in xs.iter().flat_map(|x| x.iter()) {
        if v > 0.0 {
            lo = lo.max(d.lo / v);
            hi = hi.min(d.hi / v);
        } else if v < 0.0 {
            lo = lo.max(d.hi / v);
            hi = hi.min(d.lo / v);
        } else if !d.contains(0.0) {
            return None;
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    (lo.ln() + rng.gen::<f64>() * (hi.ln() - lo.ln())).exp()
}

/// A random `(r, s)` keeping every transformed input in the domain.
fn affine_pair(s: &Sampler, rng: &mut ChaCha8Rng, xs: &[&[f64]]) -> Option<(f64, f64)> {
    let all = xs.iter().flat_map(|x| x.iter().copied());
    let (min, max) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let d = &s.domain;
    let (r_lo, mut r_hi) = RATIO_RANGE;
    if max > min {
        r_hi = r_hi.min((d.hi - d.lo) / (max - min));
    }
    if r_lo > r_hi {
        return None;
    }
    let r = log_uniform(rng, r_lo, r_hi);
    let reach = 10.0 * (1.0 + s.lo.abs() + s.hi.abs());
    let s_lo = (d.lo - r * min).max(-reach);
    let s_hi = (d.hi - r * max).min(reach);
    if s_lo > s_hi {
        return None;
    }
    Some((r, s_lo + rng.gen::<f64>() * (s_hi - s_lo)))
}

fn admissible(s: &Sampler, y: &[f64]) -> Result<()> {
    match y.iter().find(|v| !s.domain.contains(**v)) {
        Some(v) => Err(Error::DomainError { value: *v, domain: s.domain.to_string() }),
        None => Ok(()),
    }
}

pub fn check_meaningfulness(agg: &dyn Aggregate, mode: ScaleMode, scale: Scale, s: &Sampler) -> PropertyReport {
    let name = format!("meaningful-{}-{}", mode.tag(), scale.tag());
    let mut tally = Tally::new(name.clone(), s.tolerance_or(EPS_LAW));
    let mut rng = s.rng(&name);
    match (mode, scale) {
        (ScaleMode::InputOutput, _) => input_output(agg, scale, s, &mut rng, &mut tally),
        (ScaleMode::InputOnly, Scale::Ratio) => input_ratio(agg, s, &mut rng, &mut tally),
        (ScaleMode::InputOnly, Scale::Interval) => input_interval(agg, s, &mut rng, &mut tally),
        (ScaleMode::InputOnly, Scale::Ordinal) => input_ordinal(agg, s, &mut rng, &mut tally),
    }
    tally.finish()
}

/// An admissible transformation together with a description of it.
type Transform = (Box<dyn Fn(f64) -> f64>, String);

/// `A(φ(x)) = φ(A(x))` for sampled admissible `φ`.
fn input_output(agg: &dyn Aggregate, scale: Scale, s: &Sampler, rng: &mut ChaCha8Rng, tally: &mut Tally) {
    let tol = tally.tolerance();
    for x in s.points(rng, s.n) {
        let transform: Option<Transform> = match scale {
            Scale::Ratio => ratio_range(s, &[&x]).map(|(lo, hi)| {
                let r = log_uniform(rng, lo, hi);
                (Box::new(move |t: f64| r * t) as Box<dyn Fn(f64) -> f64>, format!("r = {r}"))
            }),
            Scale::Interval => affine_pair(s, rng, &[&x]).map(|(r, sh)| {
                (Box::new(move |t: f64| r * t + sh) as Box<dyn Fn(f64) -> f64>, format!("r = {r}, s = {sh}"))
            }),
            Scale::Ordinal => {
                let phi = OrdinalMap::random(rng, s.lo, s.hi, &s.domain);
                let label = phi.describe();
                Some((Box::new(move |t: f64| phi.apply(t)) as Box<dyn Fn(f64) -> f64>, label))
            }
        };
        let Some((phi, label)) = transform else {
            tally.skip(no_transform().to_string());
            continue;
        };
        let outcome = (|| {
            let y: Vec<f64> = x.iter().map(|v| phi(*v)).collect();
            admissible(s, &y)?;
            let lhs = eval(agg, &y)?;
            let rhs = phi(eval(agg, &x)?);
            Ok((!close(lhs, rhs, tol)).then(|| {
                Witness::new(vec![x.clone(), y.clone()], lhs, rhs, format!("A(phi(x)) vs phi(A(x)); {label}"))
            }))
        })();
        if tally.record(outcome) {
            break;
        }
    }
}

/// For a fixed `r`, `A(r·x)/A(x)` is one positive constant over a group of
/// inputs; inputs with `A(x) = 0` are skipped.
fn input_ratio(agg: &dyn Aggregate, s: &Sampler, rng: &mut ChaCha8Rng, tally: &mut Tally) {
    let tol = tally.tolerance();
    let mut zero_outputs = 0usize;
    for _ in 0..s.samples {
        let group: Vec<Vec<f64>> = (0..GROUP).map(|_| s.vector(rng, s.n)).collect();
        let refs: Vec<&[f64]> = group.iter().map(|g| g.as_slice()).collect();
        let Some((lo, hi)) = ratio_range(s, &refs) else {
            tally.skip(no_transform().to_string());
            continue;
        };
        let r = log_uniform(rng, lo, hi);
        let outcome = (|| {
            let mut first: Option<(usize, f64, f64, f64)> = None;
            for (j, x) in group.iter().enumerate() {
                let base = eval(agg, x)?;
                if base == 0.0 {
                    zero_outputs += 1;
                    continue;
                }
                let y: Vec<f64> = x.iter().map(|v| r * v).collect();
                let moved = eval(agg, &y)?;
                let q = moved / base;
                match first {
                    None => {
                        if !(q > 0.0) {
                            return Ok(Some(Witness::new(
                                vec![x.clone(), y],
                                moved,
                                base,
                                format!("r = {r}: ratio A(rx)/A(x) = {q} is not positive"),
                            )));
                        }
                        first = Some((j, q, base, moved));
                    }
                    Some((i, q0, _, _)) if !close(q, q0, tol) => {
                        return Ok(Some(Witness::new(
                            vec![group[i].clone(), x.clone()],
                            q,
                            q0,
                            format!("r = {r}: ratios A(rx)/A(x) differ between the two inputs"),
                        )));
                    }
                    Some(_) => {}
                }
            }
            Ok(None)
        })();
        if tally.record(outcome) {
            break;
        }
    }
    if zero_outputs > 0 {
        tally.note(format!("{zero_outputs} inputs with A(x) = 0 left out of ratio comparisons"));
    }
}

/// For a fixed `(r, s)`, the outputs on transformed inputs are a positive
/// affine function of the original outputs. The line is fitted through the
/// extreme outputs of a group and checked on the rest.
fn input_interval(agg: &dyn Aggregate, s: &Sampler, rng: &mut ChaCha8Rng, tally: &mut Tally) {
    let tol = tally.tolerance();
    let mut constant_groups = 0usize;
    for _ in 0..s.samples {
        let group: Vec<Vec<f64>> = (0..GROUP).map(|_| s.vector(rng, s.n)).collect();
        let refs: Vec<&[f64]> = group.iter().map(|g| g.as_slice()).collect();
        let Some((r, shift)) = affine_pair(s, rng, &refs) else {
            tally.skip(no_transform().to_string());
            continue;
        };
        let outcome = (|| {
            let moved: Vec<Vec<f64>> = group.iter().map(|x| x.iter().map(|v| r * v + shift).collect()).collect();
            for y in &moved {
                admissible(s, y)?;
            }
            let ys = group.iter().map(|x| eval(agg, x)).collect::<Result<Vec<f64>>>()?;
            let zs = moved.iter().map(|y| eval(agg, y)).collect::<Result<Vec<f64>>>()?;
            let (lo_j, hi_j) = (0..GROUP)
                .fold((0, 0), |(a, b), j| (if ys[j] < ys[a] { j } else { a }, if ys[j] > ys[b] { j } else { b }));
            let y_scale = ys.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let z_scale = zs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let spread = ys[hi_j] - ys[lo_j];
            let label = format!("r = {r}, s = {shift}");
            if close(ys[hi_j], ys[lo_j], tol) {
                constant_groups += 1;
                return Ok(zs.iter().position(|z| !close(*z, zs[0], tol)).map(|j| {
                    Witness::new(
                        vec![group[0].clone(), group[j].clone()],
                        zs[j],
                        zs[0],
                        format!("{label}: equal outputs became different after the transformation"),
                    )
                }));
            }
            let slope = (zs[hi_j] - zs[lo_j]) / spread;
            if !(slope > 0.0) || close(zs[hi_j], zs[lo_j], tol) {
                return Ok(Some(Witness::new(
                    vec![group[lo_j].clone(), group[hi_j].clone()],
                    zs[lo_j],
                    zs[hi_j],
                    format!("{label}: the output transformation is not increasing (slope {slope})"),
                )));
            }
            let offset = zs[lo_j] - slope * ys[lo_j];
            let allowed = tol * (1.0 + z_scale) * (1.0 + y_scale / spread);
            for j in 0..GROUP {
                let predicted = slope * ys[j] + offset;
                if (zs[j] - predicted).abs() > allowed {
                    return Ok(Some(Witness::new(
                        vec![group[lo_j].clone(), group[hi_j].clone(), group[j].clone()],
                        zs[j],
                        predicted,
                        format!("{label}: third output is off the line through the first two"),
                    )));
                }
            }
            Ok(None)
        })();
        if tally.record(outcome) {
            break;
        }
    }
    if constant_groups > 0 {
        tally.note(format!("{constant_groups} groups had constant outputs and were checked for constancy only"));
    }
}

fn order_sign(a: f64, b: f64, tol: f64) -> i8 {
    if a == b {
        0
    } else if close(a, b, tol) {
        2 // too close to call
    } else if a < b {
        -1
    } else {
        1
    }
}

/// Order of outputs is preserved: `A(x) < A(y) ⇒ A(φx) < A(φy)` and
/// `A(x) = A(y) ⇒ A(φx) = A(φy)`. Half of the pairs differ in a single
/// argument so that equal outputs occur.
fn input_ordinal(agg: &dyn Aggregate, s: &Sampler, rng: &mut ChaCha8Rng, tally: &mut Tally) {
    let tol = tally.tolerance();
    for x in s.points(rng, s.n) {
        let mut y = x.clone();
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..s.n);
            y[i] = s.value(rng);
        } else {
            y = s.vector(rng, s.n);
        }
        let phi = OrdinalMap::random(rng, s.lo, s.hi, &s.domain);
        let outcome = (|| {
            let (px, py): (Vec<f64>, Vec<f64>) =
                (x.iter().map(|v| phi.apply(*v)).collect(), y.iter().map(|v| phi.apply(*v)).collect());
            admissible(s, &px)?;
            admissible(s, &py)?;
            let (a, b) = (eval(agg, &x)?, eval(agg, &y)?);
            let (c, d) = (eval(agg, &px)?, eval(agg, &py)?);
            let before = order_sign(a, b, tol);
            let after = order_sign(c, d, tol);
            let broken = match (before, after) {
                (2, _) | (_, 2) => false,
                (p, q) => p != q,
            };
            Ok(broken.then(|| {
                Witness::new(
                    vec![x.clone(), y.clone(), px.clone(), py.clone()],
                    c - d,
                    a - b,
                    format!("order of A(x), A(y) changed under phi; {}", phi.describe()),
                )
            }))
        })();
        if tally.record(outcome) {
            break;
        }
    }
}
