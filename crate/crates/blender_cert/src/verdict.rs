use serde::{Deserialize, Serialize};

/// Outcome of one interval check.
///
/// `Certified` and `Failed` are both backed by interval proofs; `Unresolved`
/// means the subdivision budget ran out before either could be established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Failed,
    Unresolved,
}

impl Verdict {
    pub fn both(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Failed, _) | (_, Failed) => Failed,
            (Unresolved, _) | (_, Unresolved) => Unresolved,
            (Certified, Certified) => Certified,
        }
    }

    pub fn is_certified(self) -> bool {
        self == Verdict::Certified
    }
}

/// Report for a single named condition or clause.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub verdict: Verdict,
    /// Positive interval lower bound on the separation or residual backing
    /// a Certified verdict; the certified violation depth for Failed.
    pub margin: Option<f64>,
    pub depth: u32,
    pub notes: String,
}

impl ConditionReport {
    pub fn new(name: &str, verdict: Verdict, margin: Option<f64>, depth: u32, notes: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            verdict,
            margin,
            depth,
            notes: notes.into(),
        }
    }
}

/// A narrower claim checked alongside the headline conditions, reported
/// separately because it can fail while the condition itself certifies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubClaim {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}
