use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// A nonnegative-side extended real: a finite value or `+∞`.
///
/// Additive generators of strict Archimedean operations take the value
/// `+∞` at one endpoint; this type keeps that case explicit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    /// Converts an IEEE value, mapping `+inf` to [`ExtendedReal::Infinity`].
    pub fn from_f64(v: f64) -> Result<Self> {
        if v.is_finite() {
            Ok(Self::Finite(v))
        } else if v == f64::INFINITY {
            Ok(Self::Infinity)
        } else {
            Err(Error::RangeError { value: v, range: "(-inf, +inf]".into() })
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::Infinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add for ExtendedReal {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a + b),
            _ => Self::Infinity,
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.partial_cmp(b),
            (Self::Finite(_), Self::Infinity) => Some(Ordering::Less),
            (Self::Infinity, Self::Finite(_)) => Some(Ordering::Greater),
            (Self::Infinity, Self::Infinity) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinity => f.write_str("+inf"),
        }
    }
}
