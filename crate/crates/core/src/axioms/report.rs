use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::format_g17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnSamples,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsOnSamples => "holds-on-samples",
            Verdict::Fails => "fails",
        })
    }
}

/// A counterexample: the inputs involved and the two sides of the law
/// that disagree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
    pub detail: String,
}

impl Witness {
    pub fn new(inputs: Vec<Vec<f64>>, lhs: f64, rhs: f64, detail: impl Into<String>) -> Self {
        Self { inputs, lhs, rhs, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub samples: usize,
    pub skipped: usize,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSamples
    }
}

fn format_vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format_g17(*x)).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} (samples={}, skipped={}, tolerance={})",
            self.property,
            self.verdict,
            self.samples,
            self.skipped,
            format_g17(self.tolerance)
        )?;
        if let Some(w) = &self.witness {
            let inputs: Vec<String> = w.inputs.iter().map(|v| format_vector(v)).collect();
            writeln!(f, "  witness: {}", inputs.join(" ; "))?;
            writeln!(f, "  lhs = {}, rhs = {}", format_g17(w.lhs), format_g17(w.rhs))?;
            if !w.detail.is_empty() {
                writeln!(f, "  {}", w.detail)?;
            }
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// Running count of a check in progress.
pub(crate) struct Tally {
    property: String,
    tolerance: f64,
    samples: usize,
    skipped: usize,
    first_skip: Option<String>,
    notes: Vec<String>,
    witness: Option<Witness>,
}

impl Tally {
    pub fn new(property: impl Into<String>, tolerance: f64) -> Self {
        Self {
            property: property.into(),
            tolerance,
            samples: 0,
            skipped: 0,
            first_skip: None,
            notes: Vec::new(),
            witness: None,
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.skipped += 1;
        if self.first_skip.is_none() {
            self.first_skip = Some(reason.into());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records one case; returns `true` once a counterexample is found.
    pub fn record(&mut self, outcome: Result<Option<Witness>>) -> bool {
        match outcome {
            Ok(None) => self.samples += 1,
            Ok(Some(w)) => {
                self.samples += 1;
                self.witness = Some(w);
            }
            Err(e) => self.skip(e.to_string()),
        }
        self.failed()
    }

    pub fn finish(mut self) -> PropertyReport {
        if let Some(reason) = self.first_skip.take() {
            self.notes.push(format!("first skipped case: {reason}"));
        }
        if self.samples == 0 {
            self.notes.push("no admissible samples".into());
        }
        PropertyReport {
            property: self.property,
            verdict: if self.witness.is_some() { Verdict::Fails } else { Verdict::HoldsOnSamples },
            witness: self.witness,
            samples: self.samples,
            skipped: self.skipped,
            tolerance: self.tolerance,
            notes: self.notes,
        }
    }
}

/// Evaluates `agg`, turning a NaN output into an error.
pub(crate) fn eval(agg: &dyn super::Aggregate, x: &[f64]) -> Result<f64> {
    let v = agg.aggregate(x)?;
    if v.is_nan() {
        return Err(Error::DomainError { value: v, domain: "non-NaN output".into() });
    }
    Ok(v)
}
