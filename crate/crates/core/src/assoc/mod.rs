//! Associative aggregation: generator sums, Archimedean operations and
//! their normalized forms, ordinal sums, idempotent lattice operations.

pub mod archimedean;
pub mod connectives;
pub mod lattice;
pub mod normalized;
pub mod ordinal;

pub use archimedean::{aczelian, aczelian_n, ArchimedeanSpec, Orientation};
pub use connectives::{is_tconorm, is_tnorm, is_uninorm, locate_identity};
pub use lattice::{alpha_beta, alpha_beta_n, median_assoc_n, CzogalaDrewniak, IdempotentAssocSpec, TieRule};
pub use normalized::{NormalizedForm, NormalizedKind};
pub use ordinal::{OrdinalComponent, OrdinalSumSpec};
