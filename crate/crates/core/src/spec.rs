//! JSON aggregator specifications.
//!
//! A specification is an object tagged by `"kind"` with the parameters of
//! that kind and an optional `"n"` fixing the number of inputs. Unknown
//! keys are rejected.
//!
//! ```
//! use aggregation::spec::Aggregator;
//! use aggregation::axioms::Aggregate;
//!
//! let owa = Aggregator::from_json(r#"{"kind":"owa","weights":[0.5,0.3,0.2]}"#).unwrap();
//! assert!((owa.aggregate(&[3.0, 1.0, 2.0]).unwrap() - 1.7).abs() < 1e-12);
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::assoc::{
    aczelian_n, alpha_beta_n, median_assoc_n, ArchimedeanSpec, CzogalaDrewniak, IdempotentAssocSpec, NormalizedForm,
    NormalizedKind, OrdinalComponent, OrdinalSumSpec, Orientation, TieRule,
};
use crate::axioms::{Aggregate, Sampler};
use crate::error::{Error, Result};
use crate::generator::{Generator, Interval};
use crate::integrals::{self, geometric_weights};
use crate::means::{cauchy_mean, lagrangian_mean, logarithmic_mean, MeanSpec};
use crate::measure::{measure_from_value, parse_measure_json, BinaryMeasure, FuzzyMeasure};
use crate::numeric::median_odd;
use crate::subset;
use crate::weights::WeightVector;

/// A real exponent that may be infinite; written as a number or as one of
/// the strings `"inf"`, `"+inf"`, `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            v if v == f64::INFINITY => s.serialize_str("inf"),
            v if v == f64::NEG_INFINITY => s.serialize_str("-inf"),
            v => s.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(v) => Ok(Exponent(v)),
            Repr::Text(t) => match t.as_str() {
                "inf" | "+inf" => Ok(Exponent(f64::INFINITY)),
                "-inf" => Ok(Exponent(f64::NEG_INFINITY)),
                other => Err(D::Error::custom(format!("bad exponent {other:?}"))),
            },
        }
    }
}

/// A summand of an ordinal sum in specification form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub lo: f64,
    pub hi: f64,
    /// Additive generator of the component operation on `[0, 1]`.
    pub generator: Generator,
}

/// The catalog of kinds with their parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Kind {
    Arithmetic {},
    Quadratic {},
    Geometric {},
    Harmonic {},
    RootPower {
        alpha: Exponent,
    },
    Exponential {
        alpha: f64,
    },
    QuasiArithmetic {
        generator: Generator,
    },
    QuasiLinear {
        generator: Generator,
        weights: Vec<f64>,
    },
    QuasiLinearFunction {
        generator: Generator,
        p: Vec<f64>,
        q: f64,
    },
    Lagrangian {
        generator: Generator,
    },
    Logarithmic {},
    Cauchy {
        f: Generator,
        g: Generator,
    },
    Aczelian {
        generator: Generator,
    },
    Archimedean {
        #[serde(default)]
        orientation: Orientation,
        interval: (f64, f64),
        generator: Generator,
    },
    Normalized {
        form: NormalizedKind,
        generator: Generator,
        interval: (f64, f64),
    },
    OrdinalSum {
        #[serde(default)]
        orientation: Orientation,
        interval: (f64, f64),
        components: Vec<ComponentSpec>,
    },
    AlphaBeta {
        alpha: f64,
        beta: f64,
    },
    MedianAssoc {
        alpha: f64,
    },
    CzogalaDrewniak {
        g: Generator,
        interval: (f64, f64),
        #[serde(default)]
        tie: TieRule,
    },
    Choquet {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        measure: Option<serde_json::Value>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        measure_file: Option<PathBuf>,
    },
    Sugeno {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        measure: Option<serde_json::Value>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        measure_file: Option<PathBuf>,
    },
    Owa {
        weights: Vec<f64>,
    },
    Wam {
        weights: Vec<f64>,
    },
    Pmax {
        weights: Vec<f64>,
    },
    Pmin {
        weights: Vec<f64>,
    },
    Opmax {
        weights: Vec<f64>,
    },
    Opmin {
        weights: Vec<f64>,
    },
    /// Winning sets as lists of 1-based indices; the ground set size is
    /// `n` when given, else the largest index.
    LatticePoly {
        winning: Vec<Vec<usize>>,
    },
    OrderStatistic {
        k: usize,
    },
    Min {},
    Max {},
    Median {},
    Product {},
    BoundedSum {},
    Ricci {},
    Projection {
        index: usize,
    },
    WamGeometric {
        theta: f64,
    },
}

/// Every kind name with a one-line description.
pub const CATALOG: &[(&str, &str)] = &[
    ("arithmetic", "arithmetic mean"),
    ("quadratic", "quadratic mean"),
    ("geometric", "geometric mean, positive inputs"),
    ("harmonic", "harmonic mean, positive inputs"),
    ("root-power", "root-mean-power with exponent alpha (may be \"inf\" or \"-inf\")"),
    ("exponential", "exponential mean with parameter alpha"),
    ("quasi-arithmetic", "quasi-arithmetic mean of a generator"),
    ("quasi-linear", "weighted quasi-arithmetic mean"),
    ("quasi-linear-function", "generator-transformed linear function with coefficients p and offset q"),
    ("lagrangian", "two-variable Lagrangian mean of a generator"),
    ("logarithmic", "two-variable logarithmic mean"),
    ("cauchy", "two-variable Cauchy mean of generators f and g"),
    ("aczelian", "generator sum f^-1(f(x) + f(y))"),
    ("archimedean", "Archimedean operation on an interval from an additive generator"),
    ("normalized", "normalized Archimedean form: luka, strict-product, dual-luka, dual-product"),
    ("ordinal-sum", "ordinal sum of Archimedean components"),
    ("alpha-beta", "idempotent associative operation with parameters alpha, beta"),
    ("median-assoc", "median of min, max and alpha"),
    ("czogala-drewniak", "idempotent operation with identity from a decreasing g"),
    ("choquet", "Choquet integral with an inline measure or measure_file"),
    ("sugeno", "Sugeno integral with an inline measure or measure_file, inputs in [0, 1]"),
    ("owa", "ordered weighted average"),
    ("wam", "weighted arithmetic mean"),
    ("pmax", "weighted maximum, weights with maximum 1"),
    ("pmin", "weighted minimum, weights with minimum 0"),
    ("opmax", "ordered weighted maximum"),
    ("opmin", "ordered weighted minimum"),
    ("lattice-poly", "lattice polynomial from winning sets"),
    ("order-statistic", "k-th smallest input"),
    ("min", "minimum"),
    ("max", "maximum"),
    ("median", "median (mean of the two middle values for even n)"),
    ("product", "product"),
    ("bounded-sum", "min(sum, 1)"),
    ("ricci", "x_n + sum of (x_n - x_i)"),
    ("projection", "the input at a 1-based index"),
    ("wam-geometric", "weighted mean with weights proportional to (1-theta)^(n-i) theta^(i-1)"),
];

/// A kind together with an optional fixed input count.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatorSpec {
    pub n: Option<usize>,
    pub kind: Kind,
}

impl Serialize for AggregatorSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut value = serde_json::to_value(&self.kind).map_err(serde::ser::Error::custom)?;
        if let (Some(n), Some(obj)) = (self.n, value.as_object_mut()) {
            obj.insert("n".into(), n.into());
        }
        value.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AggregatorSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut value = serde_json::Value::deserialize(d)?;
        let obj = value.as_object_mut().ok_or_else(|| D::Error::custom("aggregator spec must be a JSON object"))?;
        let n = match obj.remove("n") {
            None => None,
            Some(v) => Some(
                v.as_u64()
                    .filter(|n| *n >= 1)
                    .ok_or_else(|| D::Error::custom(format!("\"n\" must be a positive integer, got {v}")))?
                    as usize,
            ),
        };
        let kind = Kind::deserialize(value).map_err(D::Error::custom)?;
        Ok(AggregatorSpec { n, kind })
    }
}

impl AggregatorSpec {
    pub fn name(&self) -> &'static str {
        let value = serde_json::to_value(&self.kind).expect("kinds serialize");
        let tag = value["kind"].as_str().unwrap_or_default().to_string();
        CATALOG.iter().find(|(k, _)| *k == tag).map(|(k, _)| *k).unwrap_or("unknown")
    }
}

#[derive(Debug, Clone)]
enum Op {
    Mean(MeanSpec),
    Lagrangian(Generator),
    Logarithmic,
    Cauchy(Generator, Generator),
    Aczelian(Generator),
    Archimedean(ArchimedeanSpec),
    Normalized(NormalizedForm),
    OrdinalSum(OrdinalSumSpec),
    AlphaBeta(IdempotentAssocSpec),
    MedianAssoc(f64),
    Czogala(CzogalaDrewniak),
    Choquet(FuzzyMeasure),
    Sugeno(FuzzyMeasure),
    Owa(WeightVector),
    Wam(WeightVector),
    Pmax(WeightVector),
    Pmin(WeightVector),
    Opmax(WeightVector),
    Opmin(WeightVector),
    LatticePoly(BinaryMeasure),
    OrderStatistic(usize),
    Min,
    Max,
    Median,
    Product,
    BoundedSum,
    Ricci,
    Projection(usize),
    WamGeometric(f64),
}

/// A constructed, validated aggregator.
#[derive(Debug, Clone)]
pub struct Aggregator {
    spec: AggregatorSpec,
    op: Op,
    arity: Option<usize>,
}

fn load_measure(inline: &Option<serde_json::Value>, file: &Option<PathBuf>, base: &Path) -> Result<FuzzyMeasure> {
    match (inline, file) {
        (Some(v), None) => measure_from_value(v.clone()),
        (None, Some(path)) => {
            let path = if path.is_absolute() { path.clone() } else { base.join(path) };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("cannot read measure file {}: {e}", path.display())))?;
            parse_measure_json(&text)
        }
        _ => Err(Error::InvalidSpec("give exactly one of \"measure\" or \"measure_file\"".into())),
    }
}

fn winning_sets(winning: &[Vec<usize>], n: Option<usize>) -> Result<BinaryMeasure> {
    let largest = winning.iter().flatten().copied().max().unwrap_or(0);
    let n = n.unwrap_or(largest);
    let sets = winning.iter().map(|set| subset::from_elements(set, n)).collect::<Result<Vec<_>>>()?;
    BinaryMeasure::from_winning_sets(n, &sets)
}

fn ordinal_sum(orientation: Orientation, interval: (f64, f64), components: &[ComponentSpec]) -> Result<OrdinalSumSpec> {
    let parts = components
        .iter()
        .map(|c| {
            Ok(OrdinalComponent {
                lo: c.lo,
                hi: c.hi,
                operation: ArchimedeanSpec::new(orientation, (0.0, 1.0), c.generator.clone())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    OrdinalSumSpec::new(orientation, interval, parts)
}

impl Aggregator {
    /// Builds an aggregator; relative measure files resolve against `base`.
    pub fn build(spec: AggregatorSpec, base: &Path) -> Result<Self> {
        let op = match &spec.kind {
            Kind::Arithmetic {} => Op::Mean(MeanSpec::Arithmetic),
            Kind::Quadratic {} => Op::Mean(MeanSpec::Quadratic),
            Kind::Geometric {} => Op::Mean(MeanSpec::Geometric),
            Kind::Harmonic {} => Op::Mean(MeanSpec::Harmonic),
            Kind::RootPower { alpha } => {
                if alpha.0.is_nan() {
                    return Err(Error::InvalidSpec("root-power alpha is NaN".into()));
                }
                Op::Mean(MeanSpec::RootPower(alpha.0))
            }
            Kind::Exponential { alpha } => {
                if *alpha == 0.0 || !alpha.is_finite() {
                    return Err(Error::InvalidSpec(format!("exponential alpha = {alpha}")));
                }
                Op::Mean(MeanSpec::Exponential(*alpha))
            }
            Kind::QuasiArithmetic { generator } => Op::Mean(MeanSpec::QuasiArithmetic(generator.clone())),
            Kind::QuasiLinear { generator, weights } => {
                Op::Mean(MeanSpec::QuasiLinear(generator.clone(), WeightVector::sum_one(weights.clone())?))
            }
            Kind::QuasiLinearFunction { generator, p, q } => {
                Op::Mean(MeanSpec::QuasiLinearFunction { generator: generator.clone(), p: p.clone(), q: *q })
            }
            Kind::Lagrangian { generator } => Op::Lagrangian(generator.clone()),
            Kind::Logarithmic {} => Op::Logarithmic,
            Kind::Cauchy { f, g } => Op::Cauchy(f.clone(), g.clone()),
            Kind::Aczelian { generator } => Op::Aczelian(generator.clone()),
            Kind::Archimedean { orientation, interval, generator } => {
                Op::Archimedean(ArchimedeanSpec::new(*orientation, *interval, generator.clone())?)
            }
            Kind::Normalized { form, generator, interval } => {
                Op::Normalized(NormalizedForm::new(*form, generator.clone(), *interval)?)
            }
            Kind::OrdinalSum { orientation, interval, components } => {
                Op::OrdinalSum(ordinal_sum(*orientation, *interval, components)?)
            }
            Kind::AlphaBeta { alpha, beta } => Op::AlphaBeta(IdempotentAssocSpec::new(*alpha, *beta)?),
            Kind::MedianAssoc { alpha } => {
                if alpha.is_nan() {
                    return Err(Error::InvalidSpec("median-assoc alpha is NaN".into()));
                }
                Op::MedianAssoc(*alpha)
            }
            Kind::CzogalaDrewniak { g, interval, tie } => {
                Op::Czogala(CzogalaDrewniak::new(g.clone(), *interval, *tie)?)
            }
            Kind::Choquet { measure, measure_file } => Op::Choquet(load_measure(measure, measure_file, base)?),
            Kind::Sugeno { measure, measure_file } => Op::Sugeno(load_measure(measure, measure_file, base)?),
            Kind::Owa { weights } => Op::Owa(WeightVector::sum_one(weights.clone())?),
            Kind::Wam { weights } => Op::Wam(WeightVector::sum_one(weights.clone())?),
            Kind::Pmax { weights } => Op::Pmax(WeightVector::max_one(weights.clone())?),
            Kind::Pmin { weights } => Op::Pmin(WeightVector::min_zero(weights.clone())?),
            Kind::Opmax { weights } => Op::Opmax(WeightVector::max_one(weights.clone())?),
            Kind::Opmin { weights } => Op::Opmin(WeightVector::min_zero(weights.clone())?),
            Kind::LatticePoly { winning } => Op::LatticePoly(winning_sets(winning, spec.n)?),
            Kind::OrderStatistic { k } => Op::OrderStatistic(*k),
            Kind::Min {} => Op::Min,
            Kind::Max {} => Op::Max,
            Kind::Median {} => Op::Median,
            Kind::Product {} => Op::Product,
            Kind::BoundedSum {} => Op::BoundedSum,
            Kind::Ricci {} => Op::Ricci,
            Kind::Projection { index } => Op::Projection(*index),
            Kind::WamGeometric { theta } => {
                geometric_weights(1, *theta)?;
                Op::WamGeometric(*theta)
            }
        };
        let intrinsic = match &op {
            Op::Lagrangian(_) | Op::Logarithmic | Op::Cauchy(..) => Some(2),
            Op::Mean(MeanSpec::QuasiLinear(_, w)) => Some(w.len()),
            Op::Mean(MeanSpec::QuasiLinearFunction { p, .. }) => Some(p.len()),
            Op::Choquet(mu) | Op::Sugeno(mu) => Some(mu.n()),
            Op::Owa(w) | Op::Wam(w) | Op::Pmax(w) | Op::Pmin(w) | Op::Opmax(w) | Op::Opmin(w) => Some(w.len()),
            Op::LatticePoly(g) => Some(g.n()),
            _ => None,
        };
        let arity = match (spec.n, intrinsic) {
            (Some(n), Some(m)) if n != m => {
                return Err(Error::InvalidSpec(format!("\"n\" = {n} but the parameters fix {m} inputs")))
            }
            (n, m) => n.or(m),
        };
        match (&op, arity) {
            (Op::OrderStatistic(k), Some(n)) | (Op::Projection(k), Some(n)) if *k == 0 || *k > n => {
                return Err(Error::IndexError { index: *k, n });
            }
            (Op::OrderStatistic(0), _) | (Op::Projection(0), _) => {
                return Err(Error::IndexError { index: 0, n: arity.unwrap_or(0) });
            }
            _ => {}
        }
        Ok(Self { spec, op, arity })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_in(text, Path::new("."))
    }

    pub fn from_json_in(text: &str, base: &Path) -> Result<Self> {
        let spec: AggregatorSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::build(spec, base)
    }

    /// Reads a specification file; measure files resolve against its
    /// directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read spec file {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_json_in(&text, base)
    }

    pub fn spec(&self) -> &AggregatorSpec {
        &self.spec
    }

    pub fn name(&self) -> &'static str {
        self.spec.name()
    }

    /// The inputs on which the aggregator is defined.
    pub fn domain(&self) -> Interval {
        match &self.op {
            Op::Mean(MeanSpec::Arithmetic | MeanSpec::Exponential(_)) => Interval::REALS,
            Op::Mean(MeanSpec::RootPower(a)) if a.is_infinite() => Interval::REALS,
            Op::Mean(MeanSpec::Quadratic | MeanSpec::Geometric | MeanSpec::Harmonic | MeanSpec::RootPower(_))
            | Op::Logarithmic => Interval::POSITIVE,
            Op::Mean(MeanSpec::QuasiArithmetic(f) | MeanSpec::QuasiLinear(f, _))
            | Op::Mean(MeanSpec::QuasiLinearFunction { generator: f, .. })
            | Op::Lagrangian(f)
            | Op::Aczelian(f) => *f.domain(),
            Op::Cauchy(f, g) => f.domain().intersect(g.domain()),
            Op::Archimedean(a) => closed(a.interval()),
            Op::Normalized(a) => closed(a.interval()),
            Op::OrdinalSum(a) => closed(a.interval()),
            Op::Czogala(a) => closed(a.interval()),
            Op::Sugeno(_) | Op::Pmax(_) | Op::Pmin(_) | Op::Opmax(_) | Op::Opmin(_) | Op::BoundedSum => {
                Interval::closed(0.0, 1.0)
            }
            _ => Interval::REALS,
        }
    }

    /// Sampling box for property checks: `[0, 1]` when the domain allows
    /// it, `[0.1, 10]` on positive half-lines, else the domain itself.
    pub fn default_box(&self) -> (f64, f64) {
        let d = self.domain();
        if d.contains(0.0) && d.contains(1.0) {
            (0.0, 1.0)
        } else if d.lo >= 0.0 && d.hi == f64::INFINITY && d.contains(0.1) {
            (0.1, 10.0)
        } else if d.lo.is_finite() && d.hi.is_finite() {
            let inset = if d.lo_open || d.hi_open { 1e-6 * (d.hi - d.lo) } else { 0.0 };
            (d.lo + inset, d.hi - inset)
        } else if d.lo.is_finite() {
            (d.lo + 1.0, d.lo + 2.0)
        } else {
            (d.hi - 2.0, d.hi - 1.0)
        }
    }

    /// A sampler over the default box and domain, with `n` set to the
    /// aggregator's arity when it has one.
    pub fn sampler(&self, seed: u64) -> Sampler {
        let (lo, hi) = self.default_box();
        let s = Sampler::new(seed).with_box(lo, hi).with_domain(self.domain());
        match self.arity {
            Some(n) => s.with_n(n),
            None => s,
        }
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        match self.arity {
            Some(n) if n != x.len() => Err(Error::DimensionMismatch { expected: n, got: x.len() }),
            _ if x.is_empty() => Err(Error::DimensionMismatch { expected: 1, got: 0 }),
            _ => Ok(()),
        }
    }
}

fn closed((lo, hi): (f64, f64)) -> Interval {
    Interval::closed(lo, hi)
}

fn pair(x: &[f64]) -> Result<(f64, f64)> {
    match x {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::DimensionMismatch { expected: 2, got: x.len() }),
    }
}

fn fold(x: &[f64], op: impl Fn(f64, f64) -> Result<f64>) -> Result<f64> {
    let (first, rest) = x.split_first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
    rest.iter().try_fold(*first, |acc, &v| op(acc, v))
}

fn median(x: &[f64]) -> Result<f64> {
    let mut v = x.to_vec();
    if v.len() % 2 == 1 {
        return Ok(median_odd(&mut v));
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Ok(0.5 * (v[m - 1] + v[m]))
}

fn in_domain(d: &Interval, x: &[f64]) -> Result<()> {
    match x.iter().find(|v| !d.contains(**v)) {
        Some(v) => Err(Error::DomainError { value: *v, domain: d.to_string() }),
        None => Ok(()),
    }
}

impl Aggregate for Aggregator {
    fn aggregate(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        match &self.op {
            Op::Mean(m) => m.evaluate(x),
            Op::Lagrangian(f) => pair(x).and_then(|(a, b)| lagrangian_mean(a, b, f)),
            Op::Logarithmic => pair(x).and_then(|(a, b)| logarithmic_mean(a, b)),
            Op::Cauchy(f, g) => pair(x).and_then(|(a, b)| cauchy_mean(a, b, f, g)),
            Op::Aczelian(f) => aczelian_n(x, f),
            Op::Archimedean(a) => a.eval_n(x),
            Op::Normalized(a) => a.eval_n(x),
            Op::OrdinalSum(a) => a.eval_n(x),
            Op::AlphaBeta(a) => alpha_beta_n(x, a),
            Op::MedianAssoc(alpha) => median_assoc_n(x, *alpha),
            Op::Czogala(a) => {
                in_domain(&self.domain(), x)?;
                fold(x, |p, q| Ok(a.eval(p, q)))
            }
            Op::Choquet(mu) => integrals::choquet(x, mu),
            Op::Sugeno(mu) => integrals::sugeno(x, mu),
            Op::Owa(w) => integrals::owa(x, w),
            Op::Wam(w) => integrals::wam(x, w),
            Op::Pmax(w) => integrals::pmax(x, w),
            Op::Pmin(w) => integrals::pmin(x, w),
            Op::Opmax(w) => integrals::opmax(x, w),
            Op::Opmin(w) => integrals::opmin(x, w),
            Op::LatticePoly(g) => integrals::lattice_polynomial(x, g),
            Op::OrderStatistic(k) => integrals::order_statistic(x, *k),
            Op::Min => Ok(x.iter().copied().fold(f64::INFINITY, f64::min)),
            Op::Max => Ok(x.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
            Op::Median => median(x),
            Op::Product => Ok(x.iter().product()),
            Op::BoundedSum => {
                in_domain(&self.domain(), x)?;
                Ok(x.iter().sum::<f64>().min(1.0))
            }
            Op::Ricci => {
                let last = x[x.len() - 1];
                Ok(last + x.iter().map(|v| last - v).sum::<f64>())
            }
            Op::Projection(k) => x.get(k - 1).copied().ok_or(Error::IndexError { index: *k, n: x.len() }),
            Op::WamGeometric(theta) => integrals::wam(x, &geometric_weights(x.len(), *theta)?),
        }
    }

    fn arity(&self) -> Option<usize> {
        self.arity
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_string(&self.spec).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}
