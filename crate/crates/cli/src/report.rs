//! Structured results. Everything is serialised as JSON; big integers and
//! exact field elements travel as strings.

use std::collections::BTreeMap;
use std::path::Path;

use floorlab_core::identity::{ConditionReport, Expectation, ResidualReport, ScanSummary};
use serde::{Deserialize, Serialize};

use crate::config::CampaignConfig;
use crate::error::CliError;

pub const TOOL: &str = "floorlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Violation {
    pub n: i64,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

impl From<&ResidualReport> for Violation {
    fn from(r: &ResidualReport) -> Self {
        Violation { n: r.n, lhs: r.lhs.to_string(), rhs: r.rhs.to_string(), residual: r.residual.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanEcho {
    pub n_lo: i64,
    pub n_hi: i64,
    pub checked: u64,
    pub skipped: u64,
    pub violation_count: u64,
    pub holds: bool,
    pub first_violation: Option<Violation>,
    pub violations: Vec<Violation>,
    pub cap: usize,
}

impl From<&ScanSummary> for ScanEcho {
    fn from(s: &ScanSummary) -> Self {
        ScanEcho {
            n_lo: s.n_lo,
            n_hi: s.n_hi,
            checked: s.checked,
            skipped: s.skipped,
            violation_count: s.violation_count,
            holds: s.holds(),
            first_violation: s.first_violation.as_ref().map(Violation::from),
            violations: s.violations.iter().map(Violation::from).collect(),
            cap: s.cap,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionEcho {
    pub holds: bool,
    /// `a^(l+k) - m a^l` (or `beta - m alpha`) in `Q[a]`.
    pub value: String,
    pub is_integer: bool,
    pub big_m: Option<String>,
    pub range: String,
    pub in_range: bool,
    pub inputs_positive: bool,
    pub alpha_irrational: Option<bool>,
}

impl From<&ConditionReport> for ConditionEcho {
    fn from(r: &ConditionReport) -> Self {
        ConditionEcho {
            holds: r.holds(),
            value: r.value.to_string(),
            is_integer: r.is_integer,
            big_m: r.big_m.as_ref().map(|m| m.to_string()),
            range: r.range.clone(),
            in_range: r.in_range,
            inputs_positive: r.inputs_positive,
            alpha_irrational: r.alpha_irrational,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationEcho {
    /// `None`: no theorem makes a prediction for this case.
    pub verdict: Option<bool>,
    pub note: String,
    pub condition: Option<ConditionEcho>,
}

impl From<&Expectation> for ExpectationEcho {
    fn from(e: &Expectation) -> Self {
        ExpectationEcho {
            verdict: e.condition,
            note: e.note.clone(),
            condition: e.report.as_ref().map(ConditionEcho::from),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Output of `verify` and `scan`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunResult {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: CampaignConfig,
    /// Canonical form of the case, with alpha reduced to its minimal polynomial.
    pub case: String,
    pub alpha: String,
    pub expectation: Option<ExpectationEcho>,
    pub scan: ScanEcho,
    pub classification: Option<String>,
    /// How each top-level field was obtained: `exact` (certified
    /// arithmetic), `derived` (computed from exact fields) or `measured`.
    pub provenance: BTreeMap<String, String>,
    pub timing: Timing,
}

impl RunResult {
    pub fn provenance_map(with_expectation: bool) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("scan".to_string(), "exact".to_string());
        if with_expectation {
            m.insert("expectation".to_string(), "exact".to_string());
            m.insert("classification".to_string(), "derived".to_string());
        }
        m.insert("timing".to_string(), "measured".to_string());
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialise")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::usage("result", e))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        Self::from_json(&text)
    }

    /// The same result with the timing zeroed, for comparisons.
    pub fn without_timing(&self) -> Self {
        RunResult { timing: Timing::default(), ..self.clone() }
    }
}

/// Writes `text` to `path`.
pub fn save(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}
