//! JSON reports of verification checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use qkdiff_core::adelic::Verdict;
use qkdiff_core::verify::CheckOutcome;

use crate::doc::SCHEMA_VERSION;
use crate::exit;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: String,
    pub witnesses: Vec<String>,
    pub findings: BTreeMap<String, String>,
    pub truncations: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(out: CheckOutcome, params: BTreeMap<String, Value>, timing_ms: Option<u64>) -> Self {
        CheckReport {
            schema_version: SCHEMA_VERSION,
            check: out.name,
            params,
            verdict: out.verdict.as_str().to_string(),
            witnesses: out.witnesses,
            findings: out.findings,
            truncations: out.truncations,
            timing_ms,
        }
    }

    pub fn exit_code(&self) -> u8 {
        verdict_code(&self.verdict)
    }

    /// One human-readable line.
    pub fn summary(&self) -> String {
        let mut line = format!("{:<18} {}", self.check, self.verdict);
        if let Some(ms) = self.timing_ms {
            line.push_str(&format!(" ({ms} ms)"));
        }
        for w in &self.witnesses {
            line.push_str(&format!("\n    {w}"));
        }
        line
    }
}

fn verdict_code(verdict: &str) -> u8 {
    match verdict {
        v if v == Verdict::Pass.as_str() => exit::PASS,
        v if v == Verdict::Inapplicable.as_str() => exit::INAPPLICABLE,
        _ => exit::FAIL,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub verdict: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<CheckReport>) -> Self {
        let verdict = if checks.iter().any(|c| c.exit_code() == exit::FAIL) {
            Verdict::Fail
        } else if checks.iter().any(|c| c.exit_code() == exit::INAPPLICABLE) {
            Verdict::Inapplicable
        } else {
            Verdict::Pass
        };
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            verdict: verdict.as_str().to_string(),
            checks,
        }
    }

    pub fn exit_code(&self) -> u8 {
        verdict_code(&self.verdict)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
