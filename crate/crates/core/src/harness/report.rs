//! JSON-lines verification reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Targeted,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// One sweep's outcome. `checked` counts every configuration of the instance
/// space that was covered; `hypothesis_met` counts those that satisfied the
/// statement's hypothesis and therefore had their conclusion tested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    pub params: BTreeMap<String, Value>,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_met: Option<u64>,
    /// Instances abandoned because they ran out of search budget.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub skipped: u64,
    /// False when sampling was used or any instance was skipped.
    pub complete: bool,
    pub violations: Vec<Violation>,
    /// Wall time, only filled in when timing is requested so that reports
    /// stay byte-identical across runs.
    pub elapsed_ms: Option<u64>,
}

fn is_zero(x: &u64) -> bool {
    *x == 0
}

impl VerificationReport {
    pub fn new(target: &str, mode: Mode) -> Self {
        VerificationReport {
            target: target.to_string(),
            params: BTreeMap::new(),
            mode,
            seed: None,
            checked: 0,
            hypothesis_met: None,
            skipped: 0,
            complete: mode != Mode::Sampled,
            violations: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn absorb(&mut self, tally: Tally) {
        self.checked += tally.checked;
        if tally.hypothesis_met > 0 || self.hypothesis_met.is_some() {
            *self.hypothesis_met.get_or_insert(0) += tally.hypothesis_met;
        }
        self.skipped += tally.skipped;
        self.violations.extend(tally.violations);
    }

    /// Sorts violations by graph6 then detail, drops duplicates, and settles
    /// `complete`.
    pub fn finish(mut self) -> Self {
        self.violations.sort_by(|a, b| (&a.graph6, &a.detail).cmp(&(&b.graph6, &b.detail)));
        self.violations.dedup();
        if self.skipped > 0 {
            self.complete = false;
        }
        self
    }

    pub fn timed(mut self, since: Instant) -> Self {
        self.elapsed_ms = Some(since.elapsed().as_millis() as u64);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Partial counts from one worker, merged with [`VerificationReport::absorb`].
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub checked: u64,
    pub hypothesis_met: u64,
    pub skipped: u64,
    pub violations: Vec<Violation>,
}

impl Tally {
    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.hypothesis_met += other.hypothesis_met;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
        self
    }

    pub fn violation(&mut self, graph6: String, detail: impl Into<String>, witness: Option<Value>) {
        self.violations.push(Violation {
            graph6,
            detail: detail.into(),
            witness,
        });
    }
}
