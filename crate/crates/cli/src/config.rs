//! Campaign configuration: the textual form of one identity run.

use std::path::Path;

use floorlab_core::exact::parse_rational;
use floorlab_core::identity::{Beta, IdentityCase, Variant, DEFAULT_VIOLATION_CAP};
use floorlab_core::{AlgebraicReal, IntPolynomial, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

fn default_cap() -> usize {
    DEFAULT_VIOLATION_CAP
}

/// Everything needed to reproduce a verify or scan run. Numbers that must be
/// exact (alpha, beta, delta, the polynomial) are kept as text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub variant: String,
    #[serde(default)]
    pub l: Option<u32>,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub m: Option<u32>,
    #[serde(default)]
    pub delta: Option<String>,
    /// Coefficients of `P`, constant term first: `"1,4"` is `4X + 1`.
    #[serde(default)]
    pub poly: Option<String>,
    /// `root([c0,...,cd],lo,hi)` or a rational.
    pub alpha: String,
    #[serde(default)]
    pub beta: Option<String>,
    pub n_lo: i64,
    pub n_hi: i64,
    /// Sample size for statistics, when a run reports any.
    #[serde(default)]
    pub stats_n: Option<u64>,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Campaign {
    pub case: IdentityCase,
    pub n_lo: i64,
    pub n_hi: i64,
    pub cap: usize,
}

pub fn parse_alpha(field: &str, text: &str) -> Result<AlgebraicReal, CliError> {
    text.parse().map_err(|e| CliError::usage(field, e))
}

pub fn parse_exact_rational(field: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::usage(field, e))
}

/// `"1,4"` is `1 + 4X`.
pub fn parse_poly(field: &str, text: &str) -> Result<IntPolynomial, CliError> {
    let coeffs = text
        .split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| CliError::usage(field, format!("bad coefficient `{}`", c.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    let p = IntPolynomial::new(coeffs);
    if p.degree().unwrap_or(0) == 0 {
        return Err(CliError::usage(field, "the polynomial must be non-constant"));
    }
    Ok(p)
}

fn positive(field: &str, v: Option<u32>, default: Option<u32>) -> Result<u32, CliError> {
    match v.or(default) {
        None => Err(CliError::usage(field, "required for this variant")),
        Some(0) => Err(CliError::usage(field, "must be at least 1")),
        Some(x) => Ok(x),
    }
}

impl CampaignConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::usage("config", e))
    }

    /// Parses every field and checks that the variant uses exactly the
    /// parameters it was given.
    pub fn validate(&self) -> Result<Campaign, CliError> {
        let name = self.variant.trim().to_ascii_lowercase();
        let uses: &[&str] = match name.as_str() {
            "z1" | "z2" | "triple" => &[],
            "main" => &["l", "k"],
            "delta" => &["l", "k", "delta"],
            "mvar" => &["l", "k", "m"],
            "pair" => &["m", "beta"],
            "poly" => &["l", "k", "poly"],
            other => {
                return Err(CliError::usage(
                    "variant",
                    format!("unknown variant `{other}` (expected z1, z2, main, delta, mvar, pair, poly or triple)"),
                ))
            }
        };
        let given = [
            ("l", self.l.is_some()),
            ("k", self.k.is_some()),
            ("m", self.m.is_some()),
            ("delta", self.delta.is_some()),
            ("poly", self.poly.is_some()),
            ("beta", self.beta.is_some()),
        ];
        if let Some((field, _)) = given.iter().find(|(f, set)| *set && !uses.contains(f)) {
            return Err(CliError::usage(field, format!("not used by variant {name}")));
        }

        let alpha = parse_alpha("alpha", &self.alpha)?;
        let l = || positive("l", self.l, Some(1));
        let k = || positive("k", self.k, Some(1));
        let variant = match name.as_str() {
            "z1" => Variant::Z1,
            "z2" => Variant::Z2,
            "triple" => Variant::Triple,
            "main" => Variant::Main { l: l()?, k: k()? },
            "delta" => {
                let text = self.delta.as_deref().ok_or_else(|| CliError::usage("delta", "required for variant delta"))?;
                let delta = parse_exact_rational("delta", text)?;
                if delta < Rational::from_integer(0.into()) || delta >= Rational::from_integer(1.into()) {
                    return Err(CliError::usage("delta", format!("{delta} is outside [0, 1)")));
                }
                Variant::Delta { l: l()?, k: k()?, delta }
            }
            "mvar" => Variant::MVar { l: l()?, k: k()?, m: positive("m", self.m, None)? },
            "pair" => Variant::Pair { m: positive("m", self.m, None)? },
            "poly" => {
                let text = self.poly.as_deref().ok_or_else(|| CliError::usage("poly", "required for variant poly"))?;
                Variant::Poly { l: l()?, k: k()?, p: parse_poly("poly", text)? }
            }
            _ => unreachable!(),
        };
        let mut case = IdentityCase::new(variant, alpha);
        if name == "pair" {
            let text = self.beta.as_deref().ok_or_else(|| CliError::usage("beta", "required for variant pair"))?;
            case = case.with_beta(Beta::Independent(parse_alpha("beta", text)?));
        }
        if self.n_lo > self.n_hi {
            return Err(CliError::usage("n_lo", format!("{} exceeds n_hi = {}", self.n_lo, self.n_hi)));
        }
        if self.workers == Some(0) {
            return Err(CliError::usage("workers", "must be at least 1"));
        }
        if self.stats_n == Some(0) {
            return Err(CliError::usage("stats_n", "must be at least 1"));
        }
        Ok(Campaign { case, n_lo: self.n_lo, n_hi: self.n_hi, cap: self.cap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> CampaignConfig {
        CampaignConfig {
            variant: "main".into(),
            l: None,
            k: None,
            m: None,
            delta: None,
            poly: None,
            alpha: "root([-1,-1,1],1,2)".into(),
            beta: None,
            n_lo: -10,
            n_hi: 10,
            stats_n: None,
            output: None,
            workers: None,
            cap: 1000,
        }
    }

    fn field_of(e: CliError) -> String {
        match e {
            CliError::Usage { field, .. } => field,
            other => panic!("{other}"),
        }
    }

    #[test]
    fn defaults_and_errors() {
        let c = base().validate().unwrap();
        assert_eq!(c.case.variant, Variant::Main { l: 1, k: 1 });
        let mut bad = base();
        bad.m = Some(2);
        assert_eq!(field_of(bad.validate().unwrap_err()), "m");
        let mut bad = base();
        bad.variant = "mvar".into();
        assert_eq!(field_of(bad.validate().unwrap_err()), "m");
        let mut bad = base();
        bad.alpha = "root([-1,-1,1],0,1)".into();
        assert_eq!(field_of(bad.validate().unwrap_err()), "alpha");
        let mut bad = base();
        bad.variant = "delta".into();
        bad.delta = Some("1".into());
        assert_eq!(field_of(bad.validate().unwrap_err()), "delta");
        let mut bad = base();
        bad.variant = "poly".into();
        bad.poly = Some("5".into());
        assert_eq!(field_of(bad.validate().unwrap_err()), "poly");
        let mut bad = base();
        bad.n_lo = 11;
        assert_eq!(field_of(bad.validate().unwrap_err()), "n_lo");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"variant":"z2","alpha":"3/2","n_lo":1,"n_hi":5,"colour":"red"}"#;
        assert!(serde_json::from_str::<CampaignConfig>(text).is_err());
        let text = r#"{"variant":"z2","alpha":"3/2","n_lo":1,"n_hi":5}"#;
        let c: CampaignConfig = serde_json::from_str(text).unwrap();
        assert_eq!(c.cap, 1000);
    }
}
