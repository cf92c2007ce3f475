//! Fuzzy measures (capacities) on a finite ground set, their validation,
//! standard constructors, classification, and the JSON file format.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::{self, Subset, MAX_GROUND_SET};
use crate::weights::{Normalization, WeightVector, EPS_NORM};

/// Default limit on `n` for the exhaustive classifiers.
pub const DEFAULT_CLASSIFY_CAP: usize = 12;

/// A monotone set function on `2^N` with `μ(∅) = 0` and `μ(N) = 1`.
///
/// Values are indexed by subset bitmask. Construction always validates;
/// every other operation assumes a valid measure.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMeasure {
    n: usize,
    values: Vec<f64>,
}

/// Validates a raw bitmask-indexed array of `2^n` values. Values are never
/// adjusted: anything outside tolerance is rejected.
pub fn validate_measure(raw: &[f64]) -> Result<FuzzyMeasure> {
    FuzzyMeasure::from_array(raw.to_vec())
}

impl FuzzyMeasure {
    pub fn from_array(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge { n, cap: MAX_GROUND_SET });
        }
        for (set, &v) in values.iter().enumerate() {
            if !(-EPS_NORM..=1.0 + EPS_NORM).contains(&v) {
                return Err(Error::RangeViolation {
                    what: format!("mu({})", subset::display_subset(set as Subset)),
                    value: v,
                    lo: 0.0,
                    hi: 1.0,
                });
            }
        }
        for superset in 1..len as Subset {
            for i in subset::elements(superset) {
                let sub = superset & !subset::singleton(i);
                let (a, b) = (values[sub as usize], values[superset as usize]);
                if a > b + EPS_NORM {
                    return Err(Error::MonotonicityViolation {
                        subset: sub,
                        superset,
                        smaller_value: a,
                        larger_value: b,
                    });
                }
            }
        }
        if values[0].abs() > EPS_NORM {
            return Err(Error::BoundaryViolation { subset: 0, value: values[0], expected: 0.0 });
        }
        let top = values[len - 1];
        if (top - 1.0).abs() > EPS_NORM {
            return Err(Error::BoundaryViolation { subset: subset::full(n), value: top, expected: 1.0 });
        }
        Ok(Self { n, values })
    }

    /// `μ(S) = Σ_{i∈S} ωᵢ`.
    pub fn additive(weights: &WeightVector) -> Result<Self> {
        weights.require(Normalization::SumOne)?;
        let w = weights.as_slice();
        let n = w.len();
        check_ground_set(n)?;
        let mut values = vec![0.0; 1 << n];
        for set in 1..values.len() {
            // Extend the value of the set without its lowest element.
            let low = set.trailing_zeros() as usize;
            values[set] = values[set & (set - 1)] + w[low];
        }
        Self::from_array(values)
    }

    /// Measure whose value depends only on the subset size:
    /// `μ(S) = levels[|S|]`, with `levels` of length `n + 1`.
    pub fn cardinality_based(levels: &[f64]) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::BadLength(levels.len()));
        }
        let n = levels.len() - 1;
        check_ground_set(n)?;
        let values = (0..1u32 << n).map(|set| levels[subset::cardinality(set)]).collect();
        Self::from_array(values)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let levels: Vec<f64> = (0..=n).map(|s| s as f64 / n as f64).collect();
        Self::cardinality_based(&levels)
    }

    /// Possibility measure `μ(S) = ⋁_{i∈S} ωᵢ` for max-one weights.
    pub fn possibility(weights: &WeightVector) -> Result<Self> {
        weights.require(Normalization::MaxOne)?;
        let w = weights.as_slice();
        check_ground_set(w.len())?;
        let mut values: Vec<f64> = vec![0.0; 1 << w.len()];
        for set in 1..values.len() {
            let low = set.trailing_zeros() as usize;
            values[set] = values[set & (set - 1)].max(w[low]);
        }
        Self::from_array(values)
    }

    /// Necessity measure `μ(S) = ⋀_{i∉S} ωᵢ` (empty meet is 1) for
    /// min-zero weights.
    pub fn necessity(weights: &WeightVector) -> Result<Self> {
        weights.require(Normalization::MinZero)?;
        let w = weights.as_slice();
        let n = w.len();
        check_ground_set(n)?;
        let full = subset::full(n);
        let values =
            (0..=full).map(|set| subset::elements(full & !set).map(|i| w[i - 1]).fold(1.0, f64::min)).collect();
        Self::from_array(values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, set: Subset) -> f64 {
        self.values[set as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn full_set(&self) -> Subset {
        subset::full(self.n)
    }

    /// First pair of equal-size subsets with different values, if any.
    pub fn cardinality_witness(&self) -> Option<(Subset, Subset)> {
        let mut representative: Vec<Option<Subset>> = vec![None; self.n + 1];
        for set in 0..=self.full_set() {
            let s = subset::cardinality(set);
            match representative[s] {
                None => representative[s] = Some(set),
                Some(rep) => {
                    if (self.value(rep) - self.value(set)).abs() > EPS_NORM {
                        return Some((rep, set));
                    }
                }
            }
        }
        None
    }

    /// Values of a cardinality-based measure by subset size.
    pub fn cardinality_levels(&self) -> Result<Vec<f64>> {
        if let Some((first, second)) = self.cardinality_witness() {
            return Err(Error::NotCardinalityBased { first, second });
        }
        Ok((0..=self.n).map(|s| self.value(subset::full(s))).collect())
    }
}

fn check_ground_set(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadLength(1));
    }
    if n > MAX_GROUND_SET {
        return Err(Error::GroundSetTooLarge { n, cap: MAX_GROUND_SET });
    }
    Ok(())
}

pub fn additive_measure(weights: &WeightVector) -> Result<FuzzyMeasure> {
    FuzzyMeasure::additive(weights)
}

/// Structural flags of a measure, each decided exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureClass {
    pub additive: bool,
    pub possibility: bool,
    pub necessity: bool,
    pub cardinality_based: bool,
    pub binary: bool,
}

pub fn classify_measure(mu: &FuzzyMeasure) -> Result<MeasureClass> {
    classify_measure_with_cap(mu, DEFAULT_CLASSIFY_CAP)
}

/// Classifies `mu` within [`EPS_NORM`]. Refuses ground sets above `cap`.
///
/// Each union/intersection law is reduced to its singleton form, which is
/// equivalent for normalized monotone set functions: a measure is additive
/// iff `μ(S) = Σ_{i∈S} μ({i})`, a possibility iff `μ(S) = ⋁_{i∈S} μ({i})`,
/// and a necessity iff `μ(S) = ⋀_{i∉S} μ(N∖{i})`.
pub fn classify_measure_with_cap(mu: &FuzzyMeasure, cap: usize) -> Result<MeasureClass> {
    let n = mu.n();
    if n > cap {
        return Err(Error::GroundSetTooLarge { n, cap });
    }
    let full = mu.full_set();
    let close = |a: f64, b: f64| (a - b).abs() <= EPS_NORM;

    let mut additive = true;
    let mut possibility = true;
    let mut necessity = true;
    for set in 1..=full {
        let low = set.trailing_zeros() as usize + 1;
        let rest = set & (set - 1);
        let v = mu.value(set);
        let singles_sum: f64 = subset::elements(set).map(|i| mu.value(subset::singleton(i))).sum();
        additive &= close(v, singles_sum);
        if rest != 0 {
            possibility &= close(v, mu.value(rest).max(mu.value(subset::singleton(low))));
        }
    }
    for set in 0..full {
        let meet = subset::elements(full & !set).map(|i| mu.value(full & !subset::singleton(i))).fold(1.0, f64::min);
        necessity &= close(mu.value(set), meet);
    }
    let binary = mu.values().iter().all(|&v| close(v, 0.0) || close(v, 1.0));
    Ok(MeasureClass { additive, possibility, necessity, cardinality_based: mu.cardinality_witness().is_none(), binary })
}

/// A `{0,1}`-valued fuzzy measure, given by its upward-closed family of
/// winning coalitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMeasure {
    n: usize,
    indicator: Vec<bool>,
}

impl BinaryMeasure {
    /// Validates an indicator array indexed by bitmask.
    pub fn from_indicator(indicator: Vec<bool>) -> Result<Self> {
        let len = indicator.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        let n = len.trailing_zeros() as usize;
        check_ground_set(n)?;
        if indicator[0] {
            return Err(Error::BoundaryViolation { subset: 0, value: 1.0, expected: 0.0 });
        }
        if !indicator[len - 1] {
            return Err(Error::BoundaryViolation { subset: subset::full(n), value: 0.0, expected: 1.0 });
        }
        for superset in 1..len as Subset {
            for i in subset::elements(superset) {
                let sub = superset & !subset::singleton(i);
                if indicator[sub as usize] && !indicator[superset as usize] {
                    return Err(Error::MonotonicityViolation {
                        subset: sub,
                        superset,
                        smaller_value: 1.0,
                        larger_value: 0.0,
                    });
                }
            }
        }
        Ok(Self { n, indicator })
    }

    /// Upward closure of the given coalitions. At least one coalition must
    /// be nonempty.
    pub fn from_winning_sets(n: usize, winning: &[Subset]) -> Result<Self> {
        check_ground_set(n)?;
        let full = subset::full(n);
        if winning.iter().any(|&s| s & !full != 0) {
            return Err(Error::InvalidSpec(format!("winning coalition outside the ground set of size {n}")));
        }
        let indicator = (0..=full).map(|set| winning.iter().any(|&w| w & !set == 0)).collect();
        Self::from_indicator(indicator)
    }

    /// Symmetric "at least k of n" measure.
    pub fn k_out_of_n(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::IndexError { index: k, n });
        }
        check_ground_set(n)?;
        Self::from_indicator((0..=subset::full(n)).map(|set| subset::cardinality(set) >= k).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn wins(&self, set: Subset) -> bool {
        self.indicator[set as usize]
    }

    /// Winning coalitions with no winning proper subset.
    pub fn minimal_winning(&self) -> Vec<Subset> {
        (1..=subset::full(self.n))
            .filter(|&set| self.wins(set) && subset::elements(set).all(|i| !self.wins(set & !subset::singleton(i))))
            .collect()
    }

    pub fn to_measure(&self) -> FuzzyMeasure {
        FuzzyMeasure { n: self.n, values: self.indicator.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect() }
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    n: usize,
    #[serde(default)]
    values: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    array: Option<Vec<f64>>,
}

impl<'de> Deserialize<'de> for FuzzyMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMeasure::deserialize(d)?;
        raw.into_measure().map_err(serde::de::Error::custom)
    }
}

impl RawMeasure {
    fn into_measure(self) -> Result<FuzzyMeasure> {
        let n = self.n;
        check_ground_set(n)?;
        let values = match (self.values, self.array) {
            (Some(map), None) => {
                let mut values = vec![f64::NAN; 1 << n];
                for (key, v) in map {
                    let set = subset::parse_subset(&key, n)?;
                    values[set as usize] = v;
                }
                if let Some(missing) = values.iter().position(|v| v.is_nan()) {
                    return Err(Error::Parse(format!(
                        "measure map is missing key {:?}",
                        subset::format_subset(missing as Subset)
                    )));
                }
                values
            }
            (None, Some(array)) => {
                if array.len() != 1 << n {
                    return Err(Error::Parse(format!(
                        "array has {} entries, expected 2^{n} = {}",
                        array.len(),
                        1usize << n
                    )));
                }
                array
            }
            _ => return Err(Error::Parse("measure needs exactly one of \"values\" or \"array\"".into())),
        };
        FuzzyMeasure::from_array(values)
    }
}

/// Writes the map form with keys in bitmask order.
impl Serialize for FuzzyMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut outer = s.serialize_map(Some(2))?;
        outer.serialize_entry("n", &self.n)?;
        outer.serialize_entry("values", &ValueMap(self))?;
        outer.end()
    }
}

struct ValueMap<'a>(&'a FuzzyMeasure);

impl Serialize for ValueMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.values.len()))?;
        for (set, v) in self.0.values.iter().enumerate() {
            map.serialize_entry(&subset::format_subset(set as Subset), v)?;
        }
        map.end()
    }
}

/// The bitmask-indexed array form, `{"n": .., "array": [..]}`.
pub fn to_array_json(mu: &FuzzyMeasure) -> serde_json::Value {
    serde_json::json!({ "n": mu.n, "array": mu.values })
}

pub fn parse_measure_json(text: &str) -> Result<FuzzyMeasure> {
    let raw: RawMeasure = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.into_measure()
}

pub fn measure_from_value(value: serde_json::Value) -> Result<FuzzyMeasure> {
    let raw: RawMeasure = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    raw.into_measure()
}
