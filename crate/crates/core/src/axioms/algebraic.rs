use rand::Rng;

use super::report::{eval, Tally};
use super::{close, Aggregate, PropertyReport, Sampler, Witness, EPS_LAW};
use crate::error::Result;

/// `A(A(x, y), z) = A(x, A(y, z))` for the two-argument member.
pub fn check_associativity(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let mut tally = Tally::new("associative", s.tolerance_or(EPS_LAW));
    let mut rng = s.rng("associative");
    let tol = tally.tolerance();
    for t in s.points(&mut rng, 3) {
        let outcome = (|| {
            let left = eval(agg, &[eval(agg, &[t[0], t[1]])?, t[2]])?;
            let right = eval(agg, &[t[0], eval(agg, &[t[1], t[2]])?])?;
            Ok((!close(left, right, tol))
                .then(|| Witness::new(vec![t.clone()], left, right, "A(A(x1,x2),x3) vs A(x1,A(x2,x3))")))
        })();
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}

/// Shared driver of the split laws: for random `n ≤ n_max` and split
/// `1 ≤ k < n`, compares `A(x)` with `combine(x, k)`, after checking the
/// unary member is the identity.
fn split_law(
    agg: &dyn Aggregate,
    s: &Sampler,
    name: &str,
    describe: &str,
    combine: &dyn Fn(&[f64], usize) -> Result<f64>,
) -> PropertyReport {
    let mut tally = Tally::new(name, s.tolerance_or(EPS_LAW));
    let mut rng = s.rng(name);
    let tol = tally.tolerance();
    if let Some(n) = agg.arity() {
        tally.note(format!("fixed arity {n}; the law needs a family of every arity"));
    }
    if s.n_max < 2 {
        tally.note("n_max below 2 leaves nothing to split");
    }
    let unary_cases = s.samples.min(50);
    for c in (0..unary_cases).map(|_| s.value(&mut rng)) {
        let outcome = eval(agg, &[c]).map(|v| {
            (!close(v, c, tol)).then(|| Witness::new(vec![vec![c]], v, c, "unary member is not the identity"))
        });
        if tally.record(outcome) {
            return tally.finish();
        }
    }
    if s.n_max >= 2 {
        for _ in 0..s.samples {
            let n = rng.gen_range(2..=s.n_max);
            let k = rng.gen_range(1..n);
            let x = s.vector(&mut rng, n);
            let outcome = (|| {
                let whole = eval(agg, &x)?;
                let split = combine(&x, k)?;
                Ok((!close(whole, split, tol))
                    .then(|| Witness::new(vec![x.clone()], whole, split, format!("{describe} with k = {k}"))))
            })();
            if tally.record(outcome) {
                break;
            }
        }
    }
    tally.finish()
}

/// `A⁽ⁿ⁾(x) = A⁽²⁾(A⁽ᵏ⁾(x₁..xₖ), A⁽ⁿ⁻ᵏ⁾(xₖ₊₁..xₙ))` and `A⁽¹⁾(x) = x`.
pub fn check_sequence_associativity(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let combine = |x: &[f64], k: usize| -> Result<f64> {
        let head = eval(agg, &x[..k])?;
        let tail = eval(agg, &x[k..])?;
        eval(agg, &[head, tail])
    };
    split_law(agg, s, "seq-associative", "A(x) vs A(A(head), A(tail))", &combine)
}

/// `A⁽ⁿ⁾(x) = A⁽ⁿ⁾(k·A⁽ᵏ⁾(x₁..xₖ), (n−k)·A⁽ⁿ⁻ᵏ⁾(xₖ₊₁..xₙ))` and
/// `A⁽¹⁾(x) = x`.
pub fn check_decomposability(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let combine = |x: &[f64], k: usize| -> Result<f64> {
        let head = eval(agg, &x[..k])?;
        let tail = eval(agg, &x[k..])?;
        let mut repeated = vec![head; k];
        repeated.resize(x.len(), tail);
        eval(agg, &repeated)
    };
    split_law(agg, s, "decomposable", "A(x) vs A(k*A(head), (n-k)*A(tail))", &combine)
}

/// Rows-then-columns equals columns-then-rows over `p × m` matrices with
/// `p, m ≤ min(4, n_max)`; a fixed-arity aggregator is checked on its own
/// square matrices.
pub fn check_bisymmetry(agg: &dyn Aggregate, s: &Sampler) -> PropertyReport {
    let mut tally = Tally::new("bisymmetric", s.tolerance_or(EPS_LAW));
    let mut rng = s.rng("bisymmetric");
    let tol = tally.tolerance();
    let cap = s.n_max.clamp(1, 4);
    for _ in 0..s.samples {
        let (p, m) = match agg.arity() {
            Some(n) => (n, n),
            None => (rng.gen_range(1..=cap), rng.gen_range(1..=cap)),
        };
        let rows: Vec<Vec<f64>> = (0..p).map(|_| s.vector(&mut rng, m)).collect();
        let outcome = (|| {
            let row_values = rows.iter().map(|r| eval(agg, r)).collect::<Result<Vec<f64>>>()?;
            let columns: Vec<Vec<f64>> = (0..m).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
            let column_values = columns.iter().map(|c| eval(agg, c)).collect::<Result<Vec<f64>>>()?;
            let by_rows = eval(agg, &row_values)?;
            let by_columns = eval(agg, &column_values)?;
            Ok((!close(by_rows, by_columns, tol)).then(|| {
                Witness::new(
                    rows.clone(),
                    by_rows,
                    by_columns,
                    format!("{p}x{m} matrix (one input per row): rows first vs columns first"),
                )
            }))
        })();
        if tally.record(outcome) {
            break;
        }
    }
    tally.finish()
}
