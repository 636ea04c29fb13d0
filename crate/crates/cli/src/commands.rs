use std::path::Path;
use std::time::Instant;

use floorlab_core::exact::{admissible_m_values, construct_characteristic_alpha};
use floorlab_core::identity::{cross_validate, Classification, IdentityCase, IdentityError, Variant};
use floorlab_core::torus::{
    empirical_distribution, orbit_dump, weyl_sum, write_dump, OrbitSampler, RegionSpec, SequenceSpec, TorusError,
};
use floorlab_core::FieldElement;
use serde::{Deserialize, Serialize};

use crate::cli::{CaseArgs, DistArgs, EnumerateArgs, OrbitArgs, WeylArgs};
use crate::config::{parse_alpha, CampaignConfig};
use crate::error::CliError;
use crate::report::{save, ExpectationEcho, RunResult, ScanEcho, Timing, TOOL, VERSION};
use crate::{in_pool, Outcome};

pub fn identity_usage(e: IdentityError) -> CliError {
    let field = match &e {
        IdentityError::BetaMissing => "beta",
        IdentityError::BadDelta(_) => "delta",
        IdentityError::ZeroParameter(name) => name,
        IdentityError::ConstantPolynomial => "poly",
        IdentityError::EmptyRange(..) => "n_lo",
        IdentityError::ZeroN => "n",
        IdentityError::NonPositive
        | IdentityError::RationalAlpha
        | IdentityError::AlphaOutOfHypothesis
        | IdentityError::Exact(_) => "alpha",
    };
    CliError::usage(field, e)
}

pub fn torus_usage(e: TorusError) -> CliError {
    let field = match &e {
        TorusError::RationalAlpha => "alpha",
        TorusError::ZeroFrequency | TorusError::DimensionMismatch { .. } => "k",
        TorusError::ConstantPolynomial => "coeffs",
        TorusError::ZeroParameter(name) => name,
        TorusError::EmptyRange(..) => "n_lo",
    };
    CliError::usage(field, e)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialise")
}

/// Prints `text`, and saves it too when a path is given.
fn deliver(text: String, out: Option<&Path>, summary: String) -> Result<Outcome, CliError> {
    if let Some(p) = out {
        save(p, &text)?;
    }
    Ok(Outcome { code: 0, stdout: text, stderr: summary })
}

impl CaseArgs {
    fn has_case_flags(&self) -> bool {
        self.variant.is_some()
            || self.l.is_some()
            || self.k.is_some()
            || self.m.is_some()
            || self.delta.is_some()
            || self.poly.is_some()
            || self.alpha.is_some()
            || self.beta.is_some()
            || self.n.is_some()
            || self.n_lo.is_some()
            || self.n_hi.is_some()
            || self.cap.is_some()
    }

    /// The config described by the flags, or loaded from `--config`.
    pub fn to_config(&self) -> Result<CampaignConfig, CliError> {
        if let Some(path) = &self.config {
            if self.has_case_flags() {
                return Err(CliError::usage("config", "cannot be combined with case flags"));
            }
            return CampaignConfig::load(path);
        }
        let variant = self.variant.clone().ok_or_else(|| CliError::usage("variant", "required"))?;
        let alpha = self.alpha.clone().ok_or_else(|| CliError::usage("alpha", "required"))?;
        let (n_lo, n_hi) = match (self.n, self.n_lo, self.n_hi) {
            (Some(n), None, None) => {
                let n = i64::try_from(n).map_err(|_| CliError::usage("n", "too large"))?;
                (-n, n)
            }
            (None, Some(lo), Some(hi)) => (lo, hi),
            (Some(_), _, _) => return Err(CliError::usage("n", "give either --n or --n-lo/--n-hi")),
            _ => return Err(CliError::usage("n", "give --n or both --n-lo and --n-hi")),
        };
        Ok(CampaignConfig {
            variant,
            l: self.l,
            k: self.k,
            m: self.m,
            delta: self.delta.clone(),
            poly: self.poly.clone(),
            alpha,
            beta: self.beta.clone(),
            n_lo,
            n_hi,
            stats_n: None,
            output: self.out.as_ref().map(|p| p.display().to_string()),
            workers: None,
            cap: self.cap.unwrap_or(floorlab_core::identity::DEFAULT_VIOLATION_CAP),
        })
    }
}

/// `verify` (with `compare`) or `scan` (without).
pub fn run_case(args: &CaseArgs, workers: Option<usize>, compare: bool) -> Result<Outcome, CliError> {
    let config = args.to_config()?;
    let campaign = config.validate()?;
    let workers = workers.or(config.workers);
    let start = Instant::now();
    let case = &campaign.case;
    let (expectation, scan, classification) = in_pool(workers, || -> Result<_, CliError> {
        if compare {
            let row = cross_validate(std::slice::from_ref(case), campaign.n_lo, campaign.n_hi, campaign.cap)
                .map_err(identity_usage)?
                .remove(0);
            Ok((Some(ExpectationEcho::from(&row.expectation)), row.scan, Some(row.classification)))
        } else {
            let scan = case.prepare().map_err(identity_usage)?.scan(campaign.n_lo, campaign.n_hi, campaign.cap);
            Ok((None, scan.map_err(identity_usage)?, None))
        }
    })??;
    let result = RunResult {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        command: if compare { "verify" } else { "scan" }.to_string(),
        config: config.clone(),
        case: case.variant.to_string(),
        alpha: case.alpha.to_string(),
        expectation,
        scan: ScanEcho::from(&scan),
        classification: classification.map(|c| c.name().to_string()),
        provenance: RunResult::provenance_map(compare),
        timing: Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 },
    };
    let summary = format!(
        "{} {} over [{}, {}]: {} violation(s){}",
        result.command,
        result.case,
        scan.n_lo,
        scan.n_hi,
        scan.violation_count,
        classification.map(|c| format!(", {c}")).unwrap_or_default()
    );
    let out = args.out.clone().or_else(|| config.output.as_ref().map(Into::into));
    let mut outcome = deliver(result.to_json(), out.as_deref(), summary)?;
    outcome.code = exit_code(classification);
    Ok(outcome)
}

/// 2 when a characterised case contradicts its theorem, 0 otherwise.
pub fn exit_code(classification: Option<Classification>) -> i32 {
    match classification {
        Some(Classification::HardDisagreement) => 2,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub l: u32,
    pub k: u32,
    pub m: u32,
    pub big_m: i64,
    /// Exact: minimal polynomial and isolating interval.
    pub alpha: String,
    pub alpha_approx: f64,
    pub quick_n: u64,
    pub quick_violations: u64,
    pub quick_verdict: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub tool: String,
    pub version: String,
    pub l_max: u32,
    pub k_max: u32,
    pub m_max: u32,
    pub families: Vec<FamilyRow>,
}

pub fn enumerate(args: &EnumerateArgs, workers: Option<usize>) -> Result<Outcome, CliError> {
    for (field, v) in [("l_max", args.l_max), ("k_max", args.k_max), ("m_max", args.m_max)] {
        if v == 0 {
            return Err(CliError::usage(field, "must be at least 1"));
        }
    }
    let quick = i64::try_from(args.quick_n).map_err(|_| CliError::usage("quick_n", "too large"))?;
    let families = in_pool(workers, || -> Result<Vec<FamilyRow>, CliError> {
        let mut rows = Vec::new();
        for l in 1..=args.l_max {
            for k in 1..=args.k_max {
                for m in 1..=args.m_max {
                    for big_m in admissible_m_values(l, k, m) {
                        let alpha = construct_characteristic_alpha(l, k, m, big_m)
                            .map_err(|e| CliError::usage("family", e))?;
                        let case = IdentityCase::new(Variant::MVar { l, k, m }, alpha.clone());
                        let scan = case.prepare().and_then(|p| p.scan(-quick, quick, 0)).map_err(identity_usage)?;
                        rows.push(FamilyRow {
                            l,
                            k,
                            m,
                            big_m,
                            alpha_approx: alpha.to_f64(),
                            alpha: alpha.to_string(),
                            quick_n: args.quick_n,
                            quick_violations: scan.violation_count,
                            quick_verdict: if scan.holds() { "holds" } else { "fails" }.to_string(),
                        });
                    }
                }
            }
        }
        Ok(rows)
    })??;
    let summary = format!("{} families", families.len());
    let report = EnumerateReport {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        l_max: args.l_max,
        k_max: args.k_max,
        m_max: args.m_max,
        families,
    };
    deliver(json(&report), args.out.as_deref(), summary)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistReport {
    pub tool: String,
    pub version: String,
    pub alpha: String,
    pub m: u32,
    pub n_max: u64,
    /// `counts[j-1]` counts `r(n) = j`; exact.
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
}

pub fn dist(args: &DistArgs, workers: Option<usize>) -> Result<Outcome, CliError> {
    let alpha = parse_alpha("alpha", &args.alpha)?;
    let d = in_pool(workers, || empirical_distribution(&alpha, args.m, args.n_max))?.map_err(|e| match e {
        TorusError::ZeroParameter("N") => CliError::usage("N", "must be at least 1"),
        e => torus_usage(e),
    })?;
    let summary = format!("r(n) frequencies over n <= {}: {:?}", d.n_max, d.frequencies);
    let report = DistReport {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        alpha: alpha.to_string(),
        m: d.m,
        n_max: d.n_max,
        max_deviation: d.max_deviation(),
        counts: d.counts,
        frequencies: d.frequencies,
        deviations: d.deviations,
    };
    deliver(json(&report), args.out.as_deref(), summary)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    pub tool: String,
    pub version: String,
    /// `x_i(n) = sum_e c_ie n^e`, coefficients listed constant term first.
    pub coordinates: Vec<Vec<String>>,
    pub k: Vec<i64>,
    pub n_bound: u64,
    pub magnitude: f64,
    pub precision: f64,
}

fn weyl_spec(args: &WeylArgs) -> Result<SequenceSpec, CliError> {
    if !args.coeffs.is_empty() {
        let rows = args
            .coeffs
            .iter()
            .map(|row| {
                row.split(';')
                    .map(|c| parse_alpha("coeffs", c).map(|a| FieldElement::generator(&a)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(SequenceSpec::Polynomial(rows));
    }
    if args.theta.is_empty() {
        return Err(CliError::usage("theta", "give --theta or --coeffs"));
    }
    let thetas = args
        .theta
        .iter()
        .map(|t| parse_alpha("theta", t).map(|a| FieldElement::generator(&a)))
        .collect::<Result<Vec<_>, _>>()?;
    match args.degree.unwrap_or(1) {
        0 => Err(CliError::usage("degree", "must be at least 1")),
        1 => Ok(SequenceSpec::Linear(thetas)),
        d => Ok(SequenceSpec::Polynomial(
            thetas
                .into_iter()
                .map(|t| {
                    let mut row = vec![FieldElement::zero(t.base()); d as usize];
                    row.push(t);
                    row
                })
                .collect(),
        )),
    }
}

pub fn weyl(args: &WeylArgs, workers: Option<usize>) -> Result<Outcome, CliError> {
    let spec = weyl_spec(args)?;
    let k = args
        .k
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::usage("k", format!("bad frequency `{}`", x.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    let r = in_pool(workers, || weyl_sum(&spec, &k, args.n_bound))?.map_err(torus_usage)?;
    let coordinates = match &spec {
        SequenceSpec::Linear(t) => t.iter().map(|x| vec!["0".to_string(), x.base().to_string()]).collect(),
        SequenceSpec::Polynomial(rows) => rows
            .iter()
            .map(|row| row.iter().map(|c| if c.is_zero() { "0".to_string() } else { c.base().to_string() }).collect())
            .collect(),
    };
    let summary = format!("|weyl average| = {:.3e} at N = {}", r.magnitude, r.n_bound);
    let report = WeylReport {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        coordinates,
        k: r.k,
        n_bound: r.n_bound,
        magnitude: r.magnitude,
        precision: r.precision,
    };
    deliver(json(&report), args.out.as_deref(), summary)
}

pub fn orbit(args: &OrbitArgs, workers: Option<usize>) -> Result<Outcome, CliError> {
    let alpha = parse_alpha("alpha", &args.alpha)?;
    let (n_lo, n_hi) = match (args.n, args.n_lo, args.n_hi) {
        (Some(n), None, None) => (1, i64::try_from(n).map_err(|_| CliError::usage("n", "too large"))?),
        (None, Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(CliError::usage("n", "give --n or both --n-lo and --n-hi")),
    };
    let sampler = OrbitSampler::new(&alpha, args.l, args.k).map_err(torus_usage)?;
    let region = if args.bands.is_some() || args.coefficient.is_some() {
        let coefficient = match &args.coefficient {
            Some(c) => FieldElement::generator(&parse_alpha("coefficient", c)?),
            None => FieldElement::generator(&alpha).pow(args.k),
        };
        let bands = args.bands.unwrap_or(1);
        if bands == 0 {
            return Err(CliError::usage("bands", "must be at least 1"));
        }
        Some(RegionSpec::new(coefficient, bands))
    } else {
        None
    };
    let rows = in_pool(workers, || orbit_dump(&sampler, n_lo, n_hi, region.as_ref(), args.digits))?
        .map_err(torus_usage)?;
    let mut csv = Vec::new();
    write_dump(&rows, &mut csv).expect("writing to memory");
    let csv = String::from_utf8(csv).expect("ascii output");
    let summary = format!("{} orbit points", rows.len());
    match &args.out {
        Some(p) => {
            save(p, &csv)?;
            Ok(Outcome { code: 0, stdout: String::new(), stderr: format!("{summary} written to {}", p.display()) })
        }
        None => Ok(Outcome { code: 0, stdout: csv, stderr: summary }),
    }
}
