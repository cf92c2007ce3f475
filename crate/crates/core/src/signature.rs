use std::fmt;

use serde::{Deserialize, Serialize};

/// Relation between consecutive sorted components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Strict,
    Equal,
}

/// The orbit of a vector under strictly increasing bijections of the reals:
/// the sorting permutation plus the pattern of strict/equal steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSignature {
    /// 1-based indices, `x[perm[0]-1] <= x[perm[1]-1] <= …`.
    pub permutation: Vec<usize>,
    pub relations: Vec<Relation>,
}

/// Stable sort (ties keep ascending index order) plus the relation list.
pub fn invariant_signature(x: &[f64]) -> InvariantSignature {
    let order = crate::numeric::sort_permutation(x);
    let relations =
        order.windows(2).map(|w| if x[w[0]] == x[w[1]] { Relation::Equal } else { Relation::Strict }).collect();
    InvariantSignature { permutation: order.into_iter().map(|i| i + 1).collect(), relations }
}

impl fmt::Display for InvariantSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<String> = self.permutation.iter().map(|i| i.to_string()).collect();
        let rel: Vec<&str> = self
            .relations
            .iter()
            .map(|r| match r {
                Relation::Strict => "<",
                Relation::Equal => "=",
            })
            .collect();
        write!(f, "π=({}) rel=({})", perm.join(","), rel.join(","))
    }
}
