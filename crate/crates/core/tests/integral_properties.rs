mod common;

use aggregation::axioms::{check_symmetry, Sampler};
use aggregation::integrals::{
    choquet, choquet_sorted, owa, owa_to_measure, sugeno, sugeno_disjunctive, sugeno_weighted_median, wam, SortView,
};
use aggregation::measure::{classify_measure, FuzzyMeasure};
use aggregation::subset::{self, Subset};
use aggregation::weights::WeightVector;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dyadic_weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0u32..=8, n).prop_filter_map("nonzero total", |raw| {
        let total: u32 = raw.iter().sum();
        total.is_power_of_two().then(|| raw.iter().map(|&r| r as f64 / total as f64).collect())
    })
}

fn indicator(n: usize, set: Subset, level: f64) -> Vec<f64> {
    (1..=n).map(|i| if subset::contains(set, i) { level } else { 0.0 }).collect()
}

/// All orderings of `0..n` that sort `x` nondecreasingly.
fn sorting_orders(x: &[f64]) -> Vec<Vec<usize>> {
    fn extend(x: &[f64], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == x.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..x.len() {
            let fits = !prefix.contains(&i) && prefix.last().is_none_or(|&p| x[p] <= x[i]);
            if fits {
                prefix.push(i);
                extend(x, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(x, &mut Vec::new(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn choquet_is_comonotonic_additive(seed in any::<u64>(), n in 2usize..6) {
        let mut r = rng(seed);
        let mu = random_measure(&mut r, n, None);
        let (x, y) = comonotonic_pair(&mut r, n, 0.0, 1.0);
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = choquet(&sum, &mu).unwrap();
        let rhs = choquet(&x, &mu).unwrap() + choquet(&y, &mu).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn choquet_on_an_additive_measure_is_the_weighted_mean(
        w in dyadic_weights(4),
        x in prop::collection::vec((0u32..=64).prop_map(|k| f64::from(k) / 64.0), 4),
    ) {
        let weights = WeightVector::sum_one(w).unwrap();
        let mu = FuzzyMeasure::additive(&weights).unwrap();
        prop_assert_eq!(choquet(&x, &mu).unwrap(), wam(&x, &weights).unwrap());
    }

    #[test]
    fn choquet_commutes_with_positive_affine_maps(
        seed in any::<u64>(),
        r in 0.01..=100.0f64,
        s in -100.0..=100.0f64,
    ) {
        let mut g = rng(seed);
        let mu = random_measure(&mut g, 4, None);
        let x = uniform_vector(&mut g, 4, -5.0, 5.0);
        let moved: Vec<f64> = x.iter().map(|v| r * v + s).collect();
        let lhs = choquet(&moved, &mu).unwrap();
        let rhs = r * choquet(&x, &mu).unwrap() + s;
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs().max(rhs.abs())), "{lhs} vs {rhs}");
    }

    #[test]
    fn choquet_ignores_how_ties_are_ordered(seed in any::<u64>(), levels in prop::collection::vec(0u8..3, 4)) {
        let mu = random_measure(&mut rng(seed), 4, None);
        let x: Vec<f64> = levels.iter().map(|&l| f64::from(l) * 0.5).collect();
        let reference = choquet(&x, &mu).unwrap();
        for order in sorting_orders(&x) {
            let value = choquet_sorted(&x, &mu, &SortView::from_order(order.clone()));
            prop_assert_eq!(value, reference, "order {:?}", order);
        }
    }

    #[test]
    fn sugeno_forms_are_identical(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let mu = random_measure(&mut r, n, None);
        let x = uniform_vector(&mut r, n, 0.0, 1.0);
        let a = sugeno(&x, &mu).unwrap();
        prop_assert_eq!(a, sugeno_disjunctive(&x, &mu).unwrap());
        prop_assert_eq!(a, sugeno_weighted_median(&x, &mu).unwrap());
    }

    #[test]
    fn sugeno_comonotonic_and_weak_lattice_laws(seed in any::<u64>(), c in 0.0..=1.0f64) {
        let mut r = rng(seed);
        let mu = random_measure(&mut r, 4, None);
        let (x, y) = comonotonic_pair(&mut r, 4, 0.0, 1.0);
        let meet: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a.min(*b)).collect();
        let join: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a.max(*b)).collect();
        let (sx, sy) = (sugeno(&x, &mu).unwrap(), sugeno(&y, &mu).unwrap());
        prop_assert_eq!(sugeno(&meet, &mu).unwrap(), sx.min(sy));
        prop_assert_eq!(sugeno(&join, &mu).unwrap(), sx.max(sy));

        let capped: Vec<f64> = x.iter().map(|v| v.min(c)).collect();
        let floored: Vec<f64> = x.iter().map(|v| v.max(c)).collect();
        prop_assert_eq!(sugeno(&capped, &mu).unwrap(), sx.min(c));
        prop_assert_eq!(sugeno(&floored, &mu).unwrap(), sx.max(c));
    }

    #[test]
    fn owa_is_choquet_on_its_cardinality_measure(
        w in dyadic_weights(5),
        x in prop::collection::vec(-3.0..=3.0f64, 5),
    ) {
        let weights = WeightVector::sum_one(w).unwrap();
        let mu = owa_to_measure(&weights).unwrap();
        prop_assert_eq!(owa(&x, &weights).unwrap(), choquet(&x, &mu).unwrap());
    }

    #[test]
    fn accepted_measures_are_monotone(seed in any::<u64>(), n in 1usize..5, slot in any::<usize>(), v in 0.0..=1.0f64) {
        let mut values = random_measure(&mut rng(seed), n, Some(4)).values().to_vec();
        let k = slot % values.len();
        values[k] = v;
        if let Ok(mu) = FuzzyMeasure::from_array(values) {
            let full = mu.full_set();
            for s in subset::subsets_of(full) {
                for t in subset::subsets_of(full).filter(|t| t & s == s) {
                    prop_assert!(mu.value(s) <= mu.value(t), "mu({s}) > mu({t})");
                }
            }
        }
    }

    #[test]
    fn additive_measures_classify_as_additive(w in prop::collection::vec(0.0..=1.0f64, 1..7)) {
        let total: f64 = w.iter().sum();
        prop_assume!(total > 1e-6);
        let weights = WeightVector::sum_one(w.iter().map(|v| v / total).collect()).unwrap();
        let mu = FuzzyMeasure::additive(&weights).unwrap();
        prop_assert!(classify_measure(&mu).unwrap().additive);
    }
}

#[test]
fn sugeno_forms_agree_on_exhaustive_lattice_grids() {
    let grid = [0.0, 0.5, 1.0];
    for n in 1..=3 {
        let cases = (0..grid.len().pow(n as u32))
            .map(|code| (0..n).map(|i| grid[code / grid.len().pow(i as u32) % grid.len()]).collect::<Vec<f64>>());
        let inputs: Vec<Vec<f64>> = cases.collect();
        for seed in 0..30 {
            let mu = random_measure(&mut rng(seed), n, Some(2));
            for x in &inputs {
                let a = sugeno(x, &mu).unwrap();
                assert_eq!(a, sugeno_disjunctive(x, &mu).unwrap(), "{x:?}");
                assert_eq!(a, sugeno_weighted_median(x, &mu).unwrap(), "{x:?}");
            }
        }
    }
}

#[test]
fn sugeno_never_compensates() {
    let levels = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
    for seed in 0..20 {
        let mu = random_measure(&mut rng(seed), 3, None);
        for set in 0..=subset::full(3) {
            let base = sugeno(&indicator(3, set, 1.0), &mu).unwrap();
            for &r in &levels {
                let value = sugeno(&indicator(3, set, r), &mu).unwrap();
                assert!(value == base || value == r, "set {set}, r {r}: {value} vs {base}");
            }
        }
    }
}

#[test]
fn sugeno_symmetry_matches_cardinality_flag() {
    let mut r = rng(99);
    let mut measures = Vec::new();
    for _ in 0..10 {
        measures.push(random_cardinality_measure(&mut r, 3));
        measures.push(random_measure(&mut r, 3, Some(4)));
        measures.push(random_additive_measure(&mut r, 3));
    }
    let sampler = Sampler::new(1).with_n(3).with_samples(400);
    for mu in &measures {
        let op = |x: &[f64]| sugeno(x, mu);
        let verdict = check_symmetry(&op, &sampler).holds();
        let flag = classify_measure(mu).unwrap().cardinality_based;
        assert_eq!(verdict, flag, "measure {:?}", mu.values());
    }
}
