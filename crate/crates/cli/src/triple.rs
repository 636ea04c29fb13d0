//! Counterexample search for `[[[n a] a] a] + 1 = [n a^3]` over roots in
//! `(1, 2)` of the cubics `x^3 - a x^2 - b x - c`.

use std::path::Path;

use floorlab_core::exact::isolate_positive_roots;
use floorlab_core::identity::{IdentityCase, Variant};
use floorlab_core::{IntPolynomial, Rational};
use serde::{Deserialize, Serialize};

use crate::commands::identity_usage;
use crate::error::CliError;
use crate::report::{save, Violation, TOOL, VERSION};
use crate::{in_pool, Outcome};

/// Survivors are rescanned over this many times the original bound.
pub const RESCAN_FACTOR: u64 = 10;

pub const NOTE: &str = "Evidence only: a survivor has no violation for 0 < |n| <= scanned_to, \
                        which says nothing about larger n.";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleEntry {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    /// Minimal polynomial and isolating interval of the root.
    pub alpha: String,
    pub alpha_approx: f64,
    /// `violation` or `survivor`.
    pub status: String,
    pub first_violation: Option<Violation>,
    pub scanned_to: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleReport {
    pub tool: String,
    pub version: String,
    pub max_coeff: u32,
    pub n_max: u64,
    pub violations: usize,
    pub survivors: usize,
    pub entries: Vec<TripleEntry>,
    pub note: String,
}

fn scan(case: &IdentityCase, bound: u64) -> Result<Option<Violation>, CliError> {
    let b = i64::try_from(bound).map_err(|_| CliError::usage("n_max", "too large"))?;
    let s = case.prepare().and_then(|p| p.scan(-b, b, 0)).map_err(identity_usage)?;
    Ok(s.first_violation.as_ref().map(Violation::from))
}

pub fn search(max_coeff: u32, n_max: u64, workers: Option<usize>) -> Result<TripleReport, CliError> {
    if max_coeff == 0 {
        return Err(CliError::usage("max_coeff", "must be at least 1"));
    }
    if n_max == 0 {
        return Err(CliError::usage("n_max", "must be at least 1"));
    }
    let (one, two) = (Rational::from_integer(1.into()), Rational::from_integer(2.into()));
    let entries = in_pool(workers, || -> Result<Vec<TripleEntry>, CliError> {
        let mut entries = Vec::new();
        for a in 0..=max_coeff {
            for b in 0..=max_coeff {
                for c in 0..=max_coeff {
                    let p = IntPolynomial::from_i64s(&[-(c as i64), -(b as i64), -(a as i64), 1]);
                    let roots = isolate_positive_roots(&p).map_err(|e| CliError::usage("max_coeff", e))?;
                    for alpha in roots {
                        if alpha.is_rational() || alpha.cmp_rational(&one).is_le() || alpha.cmp_rational(&two).is_ge() {
                            continue;
                        }
                        let case = IdentityCase::new(Variant::Triple, alpha.clone());
                        let mut scanned_to = n_max;
                        let mut first = scan(&case, n_max)?;
                        if first.is_none() {
                            scanned_to = n_max * RESCAN_FACTOR;
                            first = scan(&case, scanned_to)?;
                        }
                        entries.push(TripleEntry {
                            a,
                            b,
                            c,
                            alpha: alpha.to_string(),
                            alpha_approx: alpha.to_f64(),
                            status: if first.is_some() { "violation" } else { "survivor" }.to_string(),
                            first_violation: first,
                            scanned_to,
                        });
                    }
                }
            }
        }
        Ok(entries)
    })??;
    let violations = entries.iter().filter(|e| e.first_violation.is_some()).count();
    Ok(TripleReport {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        max_coeff,
        n_max,
        violations,
        survivors: entries.len() - violations,
        entries,
        note: NOTE.to_string(),
    })
}

pub fn search_triple(max_coeff: u32, n_max: u64, out: Option<&Path>, workers: Option<usize>) -> Result<Outcome, CliError> {
    let report = search(max_coeff, n_max, workers)?;
    let text = serde_json::to_string_pretty(&report).expect("reports serialise");
    if let Some(p) = out {
        save(p, &text)?;
    }
    let summary = format!(
        "{} candidate roots: {} with a violation, {} survivor(s). {}",
        report.entries.len(),
        report.violations,
        report.survivors,
        NOTE
    );
    Ok(Outcome { code: 0, stdout: text, stderr: summary })
}
