//! Machine-readable verdicts.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The outcome of one check, carrying enough data to rerun it.
///
/// `subject` is the input the check was run on (a square, a morphism, ...);
/// `counterexample` is the offending diagram when the verdict is a failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub category: Value,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub subject: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    /// Supporting data that is part of the verdict (per-part results).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn pass(check: &str, category: Value, subject: Value) -> Self {
        Witness {
            check: check.to_string(),
            category,
            verdict: Verdict::Pass,
            bound: None,
            subject,
            counterexample: None,
            detail: None,
            note: None,
        }
    }

    pub fn fail(check: &str, category: Value, subject: Value, counterexample: Value) -> Self {
        Witness {
            verdict: Verdict::Fail,
            counterexample: Some(counterexample),
            ..Witness::pass(check, category, subject)
        }
    }

    pub fn from_outcome(check: &str, category: Value, subject: Value, outcome: Option<Value>) -> Self {
        match outcome {
            None => Witness::pass(check, category, subject),
            Some(cex) => Witness::fail(check, category, subject, cex),
        }
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
