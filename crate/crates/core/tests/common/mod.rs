#![allow(dead_code)]

use aggregation::measure::{BinaryMeasure, FuzzyMeasure};
use aggregation::subset;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A monotone normalized measure: raw draws pushed up to the largest value
/// among immediate subsets, optionally snapped to a grid of `1/steps`.
pub fn random_measure(rng: &mut ChaCha8Rng, n: usize, steps: Option<u32>) -> FuzzyMeasure {
    let full = subset::full(n);
    let mut values = vec![0.0; 1 << n];
    let mut order: Vec<u32> = (1..full).collect();
    order.sort_by_key(|s| s.count_ones());
    for s in order {
        let floor = (0..n).filter(|i| s & (1 << i) != 0).map(|i| values[(s & !(1 << i)) as usize]).fold(0.0, f64::max);
        let raw = match steps {
            Some(k) => rng.gen_range(0..=k) as f64 / k as f64,
            None => rng.gen::<f64>(),
        };
        values[s as usize] = raw.max(floor);
    }
    values[full as usize] = 1.0;
    FuzzyMeasure::from_array(values).expect("constructed measure is valid")
}

/// `μ(S) = levels[|S|]` with nondecreasing random levels.
pub fn random_cardinality_measure(rng: &mut ChaCha8Rng, n: usize) -> FuzzyMeasure {
    let mut inner: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(0..=10) as f64 / 10.0).collect();
    inner.sort_by(f64::total_cmp);
    let mut levels = vec![0.0];
    levels.extend(inner);
    levels.push(1.0);
    FuzzyMeasure::cardinality_based(&levels).unwrap()
}

/// Additive measure from random dyadic weights summing to one.
pub fn random_additive_measure(rng: &mut ChaCha8Rng, n: usize) -> FuzzyMeasure {
    let mut cuts: Vec<u32> = (0..n - 1).map(|_| rng.gen_range(0..=16)).collect();
    cuts.sort();
    let mut weights = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts.into_iter().chain([16]) {
        weights.push((c - prev) as f64 / 16.0);
        prev = c;
    }
    let mut values = vec![0.0; 1 << n];
    for (s, v) in values.iter_mut().enumerate() {
        *v = (0..n).filter(|i| s & (1 << i) != 0).map(|i| weights[i]).sum();
    }
    FuzzyMeasure::from_array(values).unwrap()
}

/// Every 0/1 monotone set function on `n` elements with `γ(∅) = 0` and
/// `γ(N) = 1`, by brute force over all indicator vectors.
pub fn upward_closed_families(n: usize) -> Vec<BinaryMeasure> {
    let size = 1usize << n;
    (0u64..1 << size)
        .filter_map(|bits| {
            let indicator: Vec<bool> = (0..size).map(|s| bits >> s & 1 == 1).collect();
            if indicator[0] || !indicator[size - 1] {
                return None;
            }
            let monotone = (0..size).all(|s| !indicator[s] || (0..n).all(|i| indicator[s | 1 << i]));
            monotone.then(|| BinaryMeasure::from_indicator(indicator).unwrap())
        })
        .collect()
}

/// Two vectors in `[lo, hi]ⁿ` sharing one sorting permutation.
pub fn comonotonic_pair(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut a: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    let mut b: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let mut x = vec![0.0; n];
    let mut y = vec![0.0; n];
    for (rank, &i) in perm.iter().enumerate() {
        x[i] = a[rank];
        y[i] = b[rank];
    }
    (x, y)
}

pub fn uniform_vector(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}
