//! The machine-readable record produced by every check.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::linalg::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    /// Matrix in the text format of [`Mat::to_text`].
    pub matrix: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_pairs: Option<Vec<(usize, usize, bool)>>,
    pub seed: u64,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(claim_id: &str, seed: u64) -> VerificationReport {
        VerificationReport {
            claim_id: claim_id.to_string(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Unsupported,
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            data: BTreeMap::new(),
            instance: None,
            intersection_order: None,
            central: None,
            distinct_pairs: None,
            seed,
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), v.into());
        self
    }

    pub fn set_data(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    pub fn witness(&mut self, label: &str, m: &Mat) {
        let matrix = m
            .to_text()
            .unwrap_or_else(|e| format!("unserializable: {e}"));
        self.witnesses.push(Witness {
            label: label.to_string(),
            matrix,
        });
    }

    pub fn counterexample(&mut self, v: impl Into<Value>) {
        self.counterexamples.push(v.into());
    }

    /// Pass when there are no counterexamples, fail otherwise.
    pub fn finish(self) -> Self {
        let v = if self.counterexamples.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.finish_with(v)
    }

    /// Close with an explicit verdict. A fail verdict without a recorded
    /// counterexample gets a placeholder entry so the record stays consistent.
    pub fn finish_with(mut self, verdict: Verdict) -> Self {
        if verdict == Verdict::Fail && self.counterexamples.is_empty() {
            self.counterexamples
                .push(Value::String("claim not established".into()));
        }
        self.verdict = verdict;
        if let Some(t) = self.started {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// JSON with `elapsed_ms` zeroed, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.elapsed_ms = 0;
        c.to_json()
    }
}
