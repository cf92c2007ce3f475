//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit status if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use aggregation::assoc::ArchimedeanSpec;
use aggregation::axioms::{
    check_bisymmetry, check_bounds, check_continuity_smoke, check_idempotency, check_meaningfulness,
    check_monotonicity, check_symmetry, Aggregate, Bound, MonotonicityGrade, Property, Sampler, Scale, ScaleMode,
};
use aggregation::generator::Generator;
use aggregation::integrals::{
    choquet, lattice_polynomial, measure_to_owa, owa_to_measure, sugeno, sugeno_disjunctive, sugeno_weighted_median,
};
use aggregation::means::{cauchy_mean, lagrangian_mean, quasi_arithmetic_mean, root_mean_power};
use aggregation::measure::{classify_measure, FuzzyMeasure};
use aggregation::spec::Aggregator;
use aggregation::weights::WeightVector;
use aggregation::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const SUGENO_BUDGET: Duration = Duration::from_secs(10);
const COMONOTONIC_TOL: f64 = 1e-12;
const INVARIANCE_TOL: f64 = 1e-9;
const MIDPOINT_TOL: f64 = 1e-10;
const QUADRATURE_TOL: f64 = 1e-8;
const ORDER_SLACK: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20240601);
    r.set_stream(stream);
    r
}

fn sugeno_forms_agree(x: &[f64], mu: &FuzzyMeasure) -> bool {
    let a = sugeno(x, mu).unwrap();
    a == sugeno_disjunctive(x, mu).unwrap() && a == sugeno_weighted_median(x, mu).unwrap()
}

fn sugeno_oracles() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut cases = 0usize;
    for _ in 0..50 {
        let mu = random_measure(&mut r, 3, Some(8));
        for a in grid {
            for b in grid {
                for c in grid {
                    cases += 1;
                    if !sugeno_forms_agree(&[a, b, c], &mu) {
                        return outcome(false, format!("grid point ({a}, {b}, {c}) disagrees"));
                    }
                }
            }
        }
    }
    for _ in 0..10_000 {
        let n = r.gen_range(2..=6);
        let steps = if r.gen_bool(0.5) { Some(4) } else { None };
        let mu = random_measure(&mut r, n, steps);
        let x = match steps {
            Some(k) => (0..n).map(|_| r.gen_range(0..=k) as f64 / k as f64).collect(),
            None => uniform_vector(&mut r, n, 0.0, 1.0),
        };
        cases += 1;
        if !sugeno_forms_agree(&x, &mu) {
            return outcome(false, format!("random case {x:?} disagrees"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < SUGENO_BUDGET,
        format!("{cases} cases exact in {:.2} s (budget {} s)", elapsed.as_secs_f64(), SUGENO_BUDGET.as_secs()),
    )
}

fn worked_example() -> Outcome {
    let mu = FuzzyMeasure::from_array(vec![0.0, 0.2, 0.3, 0.5, 0.1, 0.4, 0.6, 1.0]).unwrap();
    let (x1, x2, x3) = (0.4, 0.9, 0.1);
    let m = |s: &[usize]| mu.value(s.iter().map(|i| 1u32 << (i - 1)).sum());
    let expansion = x3 * (m(&[3, 1, 2]) - m(&[1, 2])) + x1 * (m(&[1, 2]) - m(&[2])) + x2 * m(&[2]);
    let lattice = (x3.min(m(&[3, 1, 2]))).max(x1.min(m(&[1, 2]))).max(x2.min(m(&[2])));
    let c = choquet(&[x1, x2, x3], &mu).unwrap();
    let s = sugeno(&[x1, x2, x3], &mu).unwrap();
    outcome(
        c == expansion && c == 0.4 && s == lattice && s == 0.4,
        format!("choquet = {c}, expansion = {expansion}, sugeno = {s}, lattice form = {lattice}"),
    )
}

fn mixed_measure(r: &mut ChaCha8Rng, i: usize) -> FuzzyMeasure {
    match i % 4 {
        0 => random_measure(r, 3, Some(10)),
        1 => random_cardinality_measure(r, 3),
        2 => random_additive_measure(r, 3),
        _ => random_measure(r, 3, None),
    }
}

fn characterizations() -> Outcome {
    let mut r = rng(3);
    let sampler = Sampler::new(3).with_n(3);
    let (mut symmetric_agree, mut additive_agree) = (0, 0);
    for i in 0..200 {
        let mu = mixed_measure(&mut r, i);
        let class = classify_measure(&mu).unwrap();
        let s = |x: &[f64]| sugeno(x, &mu);
        let c = |x: &[f64]| choquet(x, &mu);
        if check_symmetry(&s, &sampler).holds() == class.cardinality_based {
            symmetric_agree += 1;
        }
        if aggregation::axioms::check(Property::Additive, &c, &sampler).holds() == class.additive {
            additive_agree += 1;
        }
    }
    let mut round_trips = 0;
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let mu = random_additive_measure(&mut r, n);
        let w: Vec<f64> = (1..=n).map(|i| mu.value(1 << (i - 1))).collect();
        let w = WeightVector::sum_one(w).unwrap();
        if measure_to_owa(&owa_to_measure(&w).unwrap()).unwrap() == w {
            round_trips += 1;
        }
    }
    outcome(
        symmetric_agree == 200 && additive_agree == 200 && round_trips == 200,
        format!(
            "symmetry/cardinality {symmetric_agree}/200, additivity/additive {additive_agree}/200, dyadic OWA round trips {round_trips}/200"
        ),
    )
}

fn comonotonic_additivity() -> Outcome {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let n = r.gen_range(1..=6);
        let mu = random_measure(&mut r, n, None);
        let (x, y) = comonotonic_pair(&mut r, n, 0.0, 1.0);
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let gap = (choquet(&sum, &mu).unwrap() - choquet(&x, &mu).unwrap() - choquet(&y, &mu).unwrap()).abs();
        worst = worst.max(gap);
    }
    outcome(worst <= COMONOTONIC_TOL, format!("10000 pairs, largest gap {worst:e} (tolerance {COMONOTONIC_TOL:e})"))
}

fn minus_log() -> Generator {
    Generator::compose(Generator::affine(-1.0, 0.0).unwrap(), Generator::log()).unwrap()
}

fn generator_invariances() -> Outcome {
    let mut r = rng(5);
    let families: Vec<(&str, Generator, (f64, f64))> = vec![
        ("identity", Generator::identity(), (-5.0, 5.0)),
        ("power 2", Generator::power(2.0).unwrap(), (0.0, 10.0)),
        ("power -1.5", Generator::power(-1.5).unwrap(), (0.1, 10.0)),
        ("log", Generator::log(), (0.1, 10.0)),
        ("exp 0.7", Generator::exp(0.7).unwrap(), (-3.0, 3.0)),
        ("reciprocal", Generator::reciprocal(), (0.1, 10.0)),
        ("affine", Generator::affine(-2.0, 1.0).unwrap(), (-5.0, 5.0)),
        ("neg-complement", Generator::neg_complement(), (0.0, 1.0)),
    ];
    let mut worst = 0.0f64;
    for (_, f, (lo, hi)) in &families {
        for _ in 0..1000 {
            let n = r.gen_range(1..=6);
            let x = uniform_vector(&mut r, n, *lo, *hi);
            let scale = r.gen_range(0.1..10.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
            let g = f.scaled(scale, r.gen_range(-10.0..10.0)).unwrap();
            let a = quasi_arithmetic_mean(&x, f).unwrap();
            let b = quasi_arithmetic_mean(&x, &g).unwrap();
            worst = worst.max((a - b).abs() / (1.0 + a.abs()));
        }
    }
    let mut worst_arch = 0.0f64;
    for f in [Generator::neg_complement(), minus_log()] {
        let base = ArchimedeanSpec::conjunctive((0.0, 1.0), f.clone()).unwrap();
        for _ in 0..1000 {
            let scaled =
                ArchimedeanSpec::conjunctive((0.0, 1.0), f.scaled(r.gen_range(0.1..10.0), 0.0).unwrap()).unwrap();
            let (x, y) = (r.gen::<f64>(), r.gen::<f64>());
            worst_arch = worst_arch.max((base.eval(x, y).unwrap() - scaled.eval(x, y).unwrap()).abs());
        }
    }
    outcome(
        worst <= INVARIANCE_TOL && worst_arch <= INVARIANCE_TOL,
        format!(
            "{} quasi-arithmetic families, largest change {worst:e}; Archimedean largest change {worst_arch:e}",
            families.len()
        ),
    )
}

fn lagrangian_closed_forms() -> Outcome {
    let mut r = rng(6);
    let (mut mid, mut geo, mut log) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let (x, y): (f64, f64) = (r.gen_range(0.1..=10.0), r.gen_range(0.1..=10.0));
        mid = mid.max((lagrangian_mean(x, y, &Generator::identity()).unwrap() - (x + y) / 2.0).abs());
        let g = lagrangian_mean(x, y, &Generator::power(-2.0).unwrap()).unwrap();
        geo = geo.max((g - (x * y).sqrt()).abs());
        let l = lagrangian_mean(x, y, &Generator::reciprocal()).unwrap();
        let closed = if x == y { x } else { (x - y) / (x.ln() - y.ln()) };
        log = log.max((l - closed).abs());
    }
    outcome(
        mid <= MIDPOINT_TOL && geo <= QUADRATURE_TOL && log <= QUADRATURE_TOL,
        format!("midpoint {mid:e}, geometric {geo:e}, logarithmic {log:e} over 100 pairs"),
    )
}

fn cauchy_reductions() -> Outcome {
    let mut r = rng(7);
    let (mut same, mut lagr, mut harm) = (0.0f64, 0.0f64, 0.0f64);
    let square = Generator::power(2.0).unwrap();
    for _ in 0..100 {
        let (x, y): (f64, f64) = (r.gen_range(0.1..=10.0), r.gen_range(0.1..=10.0));
        // (f, f): quasi-arithmetic two-mean, closed form for f = t², ln t, 1/t
        let pairs: [(Generator, f64); 3] = [
            (square.clone(), ((x * x + y * y) / 2.0).sqrt()),
            (Generator::log(), (x * y).sqrt()),
            (Generator::reciprocal(), 2.0 / (1.0 / x + 1.0 / y)),
        ];
        for (f, closed) in pairs {
            same = same.max((cauchy_mean(x, y, &f, &f).unwrap() - closed).abs());
        }
        // (f, identity): Lagrangian; f = t² has average (x² + xy + y²)/3
        let lagrangian = ((x * x + x * y + y * y) / 3.0).sqrt();
        lagr = lagr.max((cauchy_mean(x, y, &square, &Generator::identity()).unwrap() - lagrangian).abs());
        let harmonic = 2.0 * x * y / (x + y);
        let h = cauchy_mean(x, y, &Generator::identity(), &Generator::power(-2.0).unwrap()).unwrap();
        harm = harm.max((h - harmonic).abs());
    }
    outcome(
        same <= QUADRATURE_TOL && lagr <= QUADRATURE_TOL && harm <= QUADRATURE_TOL,
        format!("(f,f) {same:e}, (f,id) {lagr:e}, (id,t^-2) {harm:e} over 100 pairs"),
    )
}

fn power_mean_ordering() -> Outcome {
    let mut r = rng(8);
    let alphas = [f64::NEG_INFINITY, -8.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 8.0, f64::INFINITY];
    for case in 0..1000 {
        let n = r.gen_range(1..=6);
        let x = uniform_vector(&mut r, n, 0.1, 10.0);
        let distinct = x.iter().any(|v| *v != x[0]);
        let values: Vec<f64> = alphas.iter().map(|a| root_mean_power(&x, *a).unwrap()).collect();
        for (i, w) in values.windows(2).enumerate() {
            let slack = ORDER_SLACK * (1.0 + w[0].abs());
            let ordered = if distinct { w[0] < w[1] } else { w[0] <= w[1] + slack };
            if !ordered {
                return outcome(
                    false,
                    format!("case {case}: M({}) = {} vs M({}) = {} for {x:?}", alphas[i], w[0], alphas[i + 1], w[1]),
                );
            }
        }
    }
    outcome(true, format!("1000 vectors x {} exponents, nondecreasing and strict on distinct inputs", alphas.len()))
}

fn lattice_triple_identity() -> Outcome {
    let mut r = rng(9);
    let families = upward_closed_families(3);
    for gamma in &families {
        let mu = gamma.to_measure();
        for _ in 0..100 {
            let x = uniform_vector(&mut r, 3, 0.0, 1.0);
            let l = lattice_polynomial(&x, gamma).unwrap();
            if l != choquet(&x, &mu).unwrap() || l != sugeno(&x, &mu).unwrap() {
                return outcome(false, format!("{x:?} breaks the identity"));
            }
        }
    }
    outcome(true, format!("{} upward-closed families (brute-force count) x 100 inputs, exact", families.len()))
}

fn spec(text: &str) -> Aggregator {
    Aggregator::from_json(text).unwrap()
}

fn axiom_fixtures() -> Outcome {
    let mut failures = Vec::new();
    let mut expect = |label: &str, ok: bool| {
        if !ok {
            failures.push(label.to_string());
        }
    };

    let median = spec(r#"{"kind":"median-assoc","alpha":0.5,"n":2}"#);
    let s = median.sampler(1);
    let fung_fu = check_symmetry(&median, &s).holds()
        && check_continuity_smoke(&median, &s).holds()
        && check_monotonicity(&median, MonotonicityGrade::Nondecreasing, &s).holds()
        && check_idempotency(&median, &s, false).holds()
        && aggregation::axioms::check_associativity(&median, &s).holds();
    expect("median(x, y, 0.5) suite", fung_fu);

    for generator in [r#"{"family":"power","alpha":2}"#, r#"{"family":"log"}"#, r#"{"family":"exp","alpha":1.5}"#] {
        let qam = spec(&format!(r#"{{"kind":"quasi-arithmetic","generator":{generator}}}"#));
        let s = qam.sampler(1);
        let aczel = check_symmetry(&qam, &s).holds()
            && check_monotonicity(&qam, MonotonicityGrade::Strict, &s).holds()
            && check_idempotency(&qam, &s, false).holds()
            && check_bisymmetry(&qam, &s).holds();
        expect(&format!("quasi-arithmetic {generator} suite"), aczel);
    }

    let ricci = spec(r#"{"kind":"ricci"}"#);
    let internal = check_bounds(&ricci, Bound::Internal, &ricci.sampler(1));
    expect("ricci not internal", !internal.holds());

    let bounded = spec(r#"{"kind":"bounded-sum"}"#);
    let unanimous = check_monotonicity(&bounded, MonotonicityGrade::Unanimous, &bounded.sampler(1));
    expect("bounded sum not unanimous", !unanimous.holds());

    let am = spec(r#"{"kind":"arithmetic"}"#);
    let first = check_meaningfulness(&am, ScaleMode::InputOutput, Scale::Ordinal, &am.sampler(42));
    let second = check_meaningfulness(&am, ScaleMode::InputOutput, Scale::Ordinal, &am.sampler(42));
    let reproducible = !first.holds() && first == second && witness_reproduces(&am, &first);
    expect("arithmetic mean io-ordinal witness", reproducible);

    let gm = spec(r#"{"kind":"geometric"}"#);
    let ratio = check_meaningfulness(&gm, ScaleMode::InputOutput, Scale::Ratio, &gm.sampler(1));
    expect("geometric mean io-ratio", ratio.holds() && ratio.samples >= 1000);

    let pass = failures.is_empty();
    outcome(pass, if pass { "all fixtures behave as characterized".into() } else { failures.join("; ") })
}

/// The witness inputs are `x` and `φ(x)`; the recorded values are
/// `A(φx)` and `φ(A(x))`, which must differ.
fn witness_reproduces(agg: &dyn Aggregate, report: &aggregation::axioms::PropertyReport) -> bool {
    let Some(w) = &report.witness else { return false };
    let lhs: Result<f64> = agg.aggregate(&w.inputs[1]);
    lhs.map(|v| v == w.lhs && (w.lhs - w.rhs).abs() > report.tolerance).unwrap_or(false)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sugeno.json");
    std::fs::write(&path, r#"{"kind":"sugeno","measure":{"n":3,"array":[0,0.2,0.3,0.5,0.1,0.4,0.6,1]}}"#).unwrap();
    let run = |format: &str| {
        Command::new(env!("CARGO_BIN_EXE_aggregate"))
            .args(["check", path.to_str().unwrap(), "--all", "--seed", "42", "--samples", "200", "--format", format])
            .output()
            .unwrap()
    };
    let mut identical = true;
    for format in ["text", "json"] {
        let (a, b) = (run(format), run(format));
        identical &= a.stdout == b.stdout && a.status.code() == b.status.code() && !a.stdout.is_empty();
    }
    outcome(identical, "check --all --seed 42 twice, text and json: byte-identical")
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("sugeno forms agree", sugeno_oracles),
        ("worked example", worked_example),
        ("characterization cross-checks", characterizations),
        ("choquet comonotonic additivity", comonotonic_additivity),
        ("generator invariances", generator_invariances),
        ("lagrangian closed forms", lagrangian_closed_forms),
        ("cauchy reductions", cauchy_reductions),
        ("power mean ordering", power_mean_ordering),
        ("lattice polynomial identity", lattice_triple_identity),
        ("axiom fixtures", axiom_fixtures),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.pass);
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
