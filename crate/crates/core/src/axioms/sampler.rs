use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generator::Interval;

/// Configuration shared by all checks: seed, sampling box, admissible
/// domain, sample budget and arities.
///
/// Every check draws from its own stream, derived from the seed and the
/// property name, so a report does not depend on which other checks ran.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampler {
    pub seed: u64,
    /// Finite box inputs are drawn from.
    pub lo: f64,
    pub hi: f64,
    /// Inputs the aggregator accepts; bounds transformed inputs.
    pub domain: Interval,
    /// Random cases per check, on top of the grid cases.
    pub samples: usize,
    /// Grid points per axis for the exhaustive prefix.
    pub grid: usize,
    /// Arity for fixed-arity checks.
    pub n: usize,
    /// Largest arity for sequence-level checks.
    pub n_max: usize,
    /// Replaces every law's default tolerance when set.
    pub tolerance: Option<f64>,
    /// Largest acceptable jump ratio for the continuity smoke test.
    pub lipschitz: f64,
}

impl Default for Sampler {
    fn default() -> Self {
        Self {
            seed: 0,
            lo: 0.0,
            hi: 1.0,
            domain: Interval::closed(0.0, 1.0),
            samples: 1000,
            grid: 3,
            n: 3,
            n_max: 5,
            tolerance: None,
            lipschitz: 1e3,
        }
    }
}

/// Largest grid handed out before falling back to random cases only.
const MAX_GRID_CASES: usize = 256;

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    /// Sets the sampling box; the domain follows unless set afterwards.
    pub fn with_box(mut self, lo: f64, hi: f64) -> Self {
        self.lo = lo;
        self.hi = hi;
        self.domain = Interval::closed(lo, hi);
        self
    }

    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_tolerance(mut self, tolerance: Option<f64>) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidSpec(format!(
                "sampling box [{}, {}] must be finite and nondegenerate",
                self.lo, self.hi
            )));
        }
        if !(self.domain.closure_contains(self.lo) && self.domain.closure_contains(self.hi)) {
            return Err(Error::InvalidSpec(format!(
                "sampling box [{}, {}] is not inside the domain {}",
                self.lo, self.hi, self.domain
            )));
        }
        if self.n == 0 || self.n_max == 0 {
            return Err(Error::InvalidSpec("arity must be positive".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::InvalidSpec(format!("bad tolerance {t}")));
            }
        }
        Ok(())
    }

    pub fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    /// The random stream for one property.
    pub fn rng(&self, property: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(fnv1a(property));
        rng
    }

    /// A point of the box, kept strictly inside an open domain end.
    pub fn value(&self, rng: &mut ChaCha8Rng) -> f64 {
        self.value_in(rng, self.lo, self.hi)
    }

    pub fn value_in(&self, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
        let v = lo + rng.gen::<f64>() * (hi - lo);
        if self.domain.contains(v) {
            v
        } else {
            0.5 * (lo + hi)
        }
    }

    pub fn vector(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.value(rng)).collect()
    }

    pub fn vector_in(&self, rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n).map(|_| self.value_in(rng, lo, hi)).collect()
    }

    /// Evenly spaced box values admissible in the domain.
    pub fn grid_values(&self, count: usize) -> Vec<f64> {
        if count < 2 {
            return vec![0.5 * (self.lo + self.hi)];
        }
        (0..count)
            .map(
                |j| {
                    if j + 1 == count {
                        self.hi
                    } else {
                        self.lo + (self.hi - self.lo) * j as f64 / (count - 1) as f64
                    }
                },
            )
            .filter(|v| self.domain.contains(*v))
            .collect()
    }

    /// All grid vectors of length `n`, or none when there are too many.
    pub fn grid_vectors(&self, n: usize) -> Vec<Vec<f64>> {
        let axis = self.grid_values(self.grid);
        let total = (axis.len() as f64).powi(n as i32);
        if axis.is_empty() || total > MAX_GRID_CASES as f64 {
            return Vec::new();
        }
        let mut out = vec![Vec::with_capacity(n)];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(*v);
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// Grid vectors followed by `samples` random vectors.
    pub fn points(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
        let mut out = self.grid_vectors(n);
        out.extend((0..self.samples).map(|_| self.vector(rng, n)));
        out
    }

    /// A sub-box whose pairwise sums stay in the box.
    pub fn half_box(&self) -> (f64, f64) {
        if self.lo >= 0.0 {
            (self.lo, (0.5 * self.hi).max(self.lo))
        } else if self.hi <= 0.0 {
            ((0.5 * self.lo).min(self.hi), self.hi)
        } else {
            (0.5 * self.lo, 0.5 * self.hi)
        }
    }

    /// Two vectors sharing one sorting permutation.
    pub fn comonotonic_pair(&self, rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut a = self.vector_in(rng, n, lo, hi);
        let mut b = self.vector_in(rng, n, lo, hi);
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        for (rank, &slot) in order.iter().enumerate() {
            x[slot] = a[rank];
            y[slot] = b[rank];
        }
        (x, y)
    }
}

/// Piecewise-linear strictly increasing bijection of a domain onto itself.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinalMap {
    knots: Vec<f64>,
    values: Vec<f64>,
    left_slope: f64,
    right_slope: f64,
}

impl OrdinalMap {
    /// 5–9 random breakpoints in the box, slopes log-uniform in
    /// `[1e-2, 1e2]`; finite domain ends are fixed points.
    pub fn random(rng: &mut ChaCha8Rng, lo: f64, hi: f64, domain: &Interval) -> Self {
        let breaks = rng.gen_range(5..=9);
        let mut knots: Vec<f64> = (0..breaks).map(|_| lo + rng.gen::<f64>() * (hi - lo)).collect();
        knots.push(lo);
        knots.push(hi);
        let lower = domain.lo.is_finite().then_some(domain.lo);
        let upper = domain.hi.is_finite().then_some(domain.hi);
        knots.extend(lower);
        knots.extend(upper);
        knots.sort_by(f64::total_cmp);
        knots.dedup();

        let slopes: Vec<f64> = (1..knots.len()).map(|_| 10f64.powf(rng.gen_range(-2.0..=2.0))).collect();
        let mut cumulative = vec![0.0; knots.len()];
        for j in 1..knots.len() {
            cumulative[j] = cumulative[j - 1] + slopes[j - 1] * (knots[j] - knots[j - 1]);
        }
        let total = cumulative[knots.len() - 1];
        let last = knots.len() - 1;
        let (values, left_slope, right_slope) = match (lower, upper) {
            (Some(a), Some(b)) => {
                let scale = (b - a) / total;
                let mut values: Vec<f64> = cumulative.iter().map(|c| a + scale * c).collect();
                values[last] = b;
                (values, slopes[0] * scale, slopes[last - 1] * scale)
            }
            (Some(a), None) => (cumulative.iter().map(|c| a + c).collect(), slopes[0], slopes[last - 1]),
            (None, Some(b)) => (cumulative.iter().map(|c| b - (total - c)).collect(), slopes[0], slopes[last - 1]),
            (None, None) => (cumulative.iter().map(|c| knots[0] + c).collect(), slopes[0], slopes[last - 1]),
        };
        Self { knots, values, left_slope, right_slope }
    }

    pub fn apply(&self, t: f64) -> f64 {
        let last = self.knots.len() - 1;
        if t <= self.knots[0] {
            return self.values[0] - self.left_slope * (self.knots[0] - t);
        }
        if t >= self.knots[last] {
            return self.values[last] + self.right_slope * (t - self.knots[last]);
        }
        let j = self.knots.partition_point(|k| *k <= t) - 1;
        if t == self.knots[j] {
            return self.values[j];
        }
        let (k0, k1) = (self.knots[j], self.knots[j + 1]);
        let (v0, v1) = (self.values[j], self.values[j + 1]);
        v0 + (t - k0) * (v1 - v0) / (k1 - k0)
    }

    pub fn describe(&self) -> String {
        let pairs: Vec<String> = self.knots.iter().zip(&self.values).map(|(k, v)| format!("{k}->{v}")).collect();
        format!("phi knots [{}]", pairs.join(", "))
    }
}
