//! Small numerical utilities: stable sorting permutations, medians, adaptive
//! Simpson quadrature, bisection, and fixed-format number output.

use crate::error::{Error, Result};

/// Absolute tolerance for adaptive quadrature.
pub const EPS_QUAD: f64 = 1e-10;
/// Maximum recursion depth of adaptive Simpson.
pub const MAX_QUAD_DEPTH: u32 = 50;
/// Relative bisection tolerance factor.
pub const EPS_ROOT: f64 = 1e-12;
pub const MAX_BISECTION_ITERS: usize = 200;

/// Indices that sort `x` ascending; ties keep ascending index order.
pub fn sort_permutation(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    order
}

/// Median of an odd-length list.
pub fn median_odd(values: &mut [f64]) -> f64 {
    debug_assert!(values.len() % 2 == 1);
    values.sort_by(f64::total_cmp);
    values[values.len() / 2]
}

/// `median(a, b, c)`.
pub fn median3(a: f64, b: f64, c: f64) -> f64 {
    a.max(b).min(a.min(b).max(c))
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute tolerance
/// `eps`. Fails if the recursion depth limit is hit or a non-finite value
/// appears.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let v = simpson_step(f, a, b, fa, fm, fb, whole, eps, MAX_QUAD_DEPTH)
        .ok_or(Error::QuadratureFailure { lo: a, hi: b })?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::QuadratureFailure { lo: a, hi: b })
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    if !(flm.is_finite() && frm.is_finite()) {
        return None;
    }
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * eps {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)?;
    let r = simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)?;
    Some(l + r)
}

/// Average value `(1/(b-a)) ∫_a^b f` computed on the unit interval, so the
/// absolute tolerance applies to the average rather than to the integral.
pub fn average_value(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> Result<f64> {
    let width = b - a;
    adaptive_simpson(&|t| f(a + t * width), 0.0, 1.0, eps).map_err(|_| Error::QuadratureFailure { lo: a, hi: b })
}

/// Finds `t` in `[lo, hi]` with `h(t) = target` for monotone `h`, by
/// bisection until the bracket is narrower than `EPS_ROOT·(1+max|end|)`.
pub fn bisect(h: &dyn Fn(f64) -> f64, target: f64, lo: f64, hi: f64) -> Result<f64> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut ga = h(a) - target;
    let gb = h(b) - target;
    if ga == 0.0 {
        return Ok(a);
    }
    if gb == 0.0 {
        return Ok(b);
    }
    if !(ga.is_finite() && gb.is_finite()) || ga.signum() == gb.signum() {
        return Err(Error::NoBracket { lo: a, hi: b });
    }
    let width_tol = EPS_ROOT * (1.0 + a.abs().max(b.abs()));
    let (low_end, high_end) = (ga.min(gb), ga.max(gb));
    for _ in 0..MAX_BISECTION_ITERS {
        if b - a <= width_tol {
            break;
        }
        let m = 0.5 * (a + b);
        let gm = h(m) - target;
        if !gm.is_finite() || gm < low_end || gm > high_end {
            return Err(Error::NotMonotone { at: m });
        }
        if gm == 0.0 {
            return Ok(m);
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros
/// stripped, scientific notation outside `[1e-5, 1e17)`.
pub fn format_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-5..17).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    strip_zeros(&format!("{v:.decimals$}")).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
