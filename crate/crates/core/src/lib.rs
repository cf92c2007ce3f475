//! Aggregation functions and an executable catalog of their properties.
//!
//! The crate covers quasi-arithmetic and related means, generator-based
//! associative operations (Archimedean semigroups, ordinal sums, the
//! idempotent associative family), discrete Choquet and Sugeno integrals
//! with their special cases, and a seeded sampling checker for the usual
//! axioms of aggregation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assoc;
pub mod axioms;
pub mod cli;
pub mod error;
pub mod extended;
pub mod generator;
pub mod integrals;
pub mod means;
pub mod measure;
pub mod numeric;
pub mod signature;
pub mod spec;
pub mod subset;
pub mod weights;

pub use error::{Error, Result};
pub use extended::ExtendedReal;
pub use generator::{Family, Generator, Interval};
pub use measure::{BinaryMeasure, FuzzyMeasure, MeasureClass};
pub use signature::{invariant_signature, InvariantSignature, Relation};
pub use weights::{Normalization, WeightVector};
