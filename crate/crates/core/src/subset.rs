//! Subsets of the ground set `N = {1, …, n}` encoded as bitmasks.
//!
//! Element `i` (1-based) corresponds to bit `i - 1`. A measure on `N` is an
//! array of `2^n` values indexed directly by these masks.

use crate::error::{Error, Result};

/// Bitmask of a subset of `{1, …, n}`.
pub type Subset = u32;

/// Largest ground set supported by the measure types.
pub const MAX_GROUND_SET: usize = 20;

#[inline]
pub fn full(n: usize) -> Subset {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn contains(set: Subset, element: usize) -> bool {
    set & (1 << (element - 1)) != 0
}

#[inline]
pub fn singleton(element: usize) -> Subset {
    1 << (element - 1)
}

#[inline]
pub fn cardinality(set: Subset) -> usize {
    set.count_ones() as usize
}

/// 1-based elements of `set`, ascending.
pub fn elements(set: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| set & (1 << b) != 0).map(|b| b + 1)
}

/// Iterates over all subsets of `set` (including the empty set and `set`
/// itself) in decreasing mask order.
pub fn subsets_of(set: Subset) -> impl Iterator<Item = Subset> {
    let mut next = Some(set);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & set) };
        Some(cur)
    })
}

/// Canonical text form used as a key in measure files: ascending 1-based
/// indices joined by commas, empty string for the empty set.
pub fn format_subset(set: Subset) -> String {
    elements(set).map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Set-builder form for human-readable output, e.g. `{1,3}`.
pub fn display_subset(set: Subset) -> String {
    format!("{{{}}}", format_subset(set))
}

/// Parses a key produced by [`format_subset`]. Indices must be strictly
/// ascending and lie in `1..=n`.
pub fn parse_subset(key: &str, n: usize) -> Result<Subset> {
    let key = key.trim();
    if key.is_empty() {
        return Ok(0);
    }
    let mut set = 0;
    let mut last = 0;
    for part in key.split(',') {
        let i: usize = part.trim().parse().map_err(|_| Error::Parse(format!("bad subset key {key:?}")))?;
        if i == 0 || i > n {
            return Err(Error::Parse(format!("subset key {key:?} has index {i} outside 1..={n}")));
        }
        if i <= last {
            return Err(Error::Parse(format!("subset key {key:?} is not strictly ascending")));
        }
        last = i;
        set |= singleton(i);
    }
    Ok(set)
}

pub fn from_elements(elements: &[usize], n: usize) -> Result<Subset> {
    let mut set = 0;
    for &i in elements {
        if i == 0 || i > n {
            return Err(Error::IndexError { index: i, n });
        }
        set |= singleton(i);
    }
    Ok(set)
}
