//! Data behind the reference figures: orbit dumps plus the region boundaries
//! and overlay lines, as CSV.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use floorlab_core::exact::parse_rational;
use floorlab_core::torus::{
    band_counts, detect_line_support, orbit_dump, write_dump, DumpRow, FitVerdict, LineSupport, OrbitSampler,
    RegionSpec, DEFAULT_DUMP_DIGITS,
};
use floorlab_core::{AlgebraicReal, FieldElement};
use serde::{Deserialize, Serialize};

use crate::commands::torus_usage;
use crate::error::CliError;
use crate::report::{save, TOOL, VERSION};
use crate::{in_pool, Outcome};

/// Height bounds for the exact line search.
const LINE_HEIGHT: u64 = 50;
/// Region coefficient drawn in all three fig1 panels.
const FIG1_COEFFICIENT: &str = "809017/500000";
/// Points per fig1 panel: left, mid, right.
const FIG1_POINTS: [i64; 3] = [250, 150, 100];
const FIG2_POINTS: i64 = 10_000;
/// Gap separating clusters of sampled intercepts.
const CLUSTER_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    Fig1Left,
    Fig1Mid,
    Fig1Right,
    Fig2,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig1Left, FigureId::Fig1Mid, FigureId::Fig1Right, FigureId::Fig2];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1Left => "fig1-left",
            FigureId::Fig1Mid => "fig1-mid",
            FigureId::Fig1Right => "fig1-right",
            FigureId::Fig2 => "fig2",
        }
    }
}

impl FromStr for FigureId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureId::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| CliError::UnknownFigure(s.to_string()))
    }
}

struct Setup {
    alpha: AlgebraicReal,
    coefficient: FieldElement,
    bands: u32,
    n_hi: i64,
    /// Slopes of the overlay line families.
    overlays: Vec<u32>,
}

fn setup(id: FigureId) -> Setup {
    let parse = |s: &str| -> AlgebraicReal { s.parse().expect("built-in figure parameters parse") };
    let silver = parse("root([-1,-2,1],2,3)");
    let fig1 = |alpha: AlgebraicReal, n_hi| {
        let c = parse_rational(FIG1_COEFFICIENT).unwrap();
        let coefficient = FieldElement::from_rational(&AlgebraicReal::from_rational(c.clone()), c);
        Setup { alpha, coefficient, bands: 1, n_hi, overlays: vec![] }
    };
    match id {
        FigureId::Fig1Left => fig1(parse("root([-4,0,0,1],1,2)"), FIG1_POINTS[0]),
        FigureId::Fig1Mid => fig1(parse("1.914213562"), FIG1_POINTS[1]),
        FigureId::Fig1Right => fig1(silver, FIG1_POINTS[2]),
        // beta = a^2, so beta / a = a and beta - 2a = 1.
        FigureId::Fig2 => Setup {
            coefficient: FieldElement::generator(&silver),
            alpha: silver,
            bands: 2,
            n_hi: FIG2_POINTS,
            overlays: vec![1, 2, 3],
        },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineSupportEcho {
    /// `lines`, `none` or `rational-abscissa`.
    pub kind: String,
    pub slope: Option<String>,
    pub offset: Option<String>,
    pub intercepts: Vec<String>,
    /// `exact` or `empirical`.
    pub verdict: Option<String>,
    pub period: Option<String>,
}

impl From<&LineSupport> for LineSupportEcho {
    fn from(s: &LineSupport) -> Self {
        let none = LineSupportEcho {
            kind: "none".into(),
            slope: None,
            offset: None,
            intercepts: vec![],
            verdict: None,
            period: None,
        };
        match s {
            LineSupport::NoRationalRelation => none,
            LineSupport::RationalAbscissa { period } => {
                LineSupportEcho { kind: "rational-abscissa".into(), period: Some(period.to_string()), ..none }
            }
            LineSupport::Lines(f) => LineSupportEcho {
                kind: "lines".into(),
                slope: Some(f.slope.to_string()),
                offset: Some(f.offset.to_string()),
                intercepts: f.intercepts.iter().map(ToString::to_string).collect(),
                verdict: Some(match f.verdict {
                    FitVerdict::Exact => "exact".into(),
                    FitVerdict::Empirical => "empirical".into(),
                }),
                ..none
            },
        }
    }
}

/// Floating-point clusters of `{y - s x}` for the integer slope `s` giving
/// the fewest clusters. Plot-level evidence only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalLines {
    pub slope: u32,
    pub intercepts_mod_1: Vec<f64>,
    pub gap: f64,
}

pub fn empirical_lines(rows: &[DumpRow], max_slope: u32) -> EmpiricalLines {
    let clusters = |s: u32| -> Vec<f64> {
        let mut t: Vec<f64> = rows
            .iter()
            .map(|r| {
                let v = (r.y_f64 - s as f64 * r.x_f64).rem_euclid(1.0);
                if v > 1.0 - CLUSTER_GAP {
                    0.0
                } else {
                    v
                }
            })
            .collect();
        t.sort_by(f64::total_cmp);
        let mut groups: Vec<Vec<f64>> = Vec::new();
        for v in t {
            match groups.last_mut() {
                Some(g) if v - g[g.len() - 1] <= CLUSTER_GAP => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        groups.iter().map(|g| g.iter().sum::<f64>() / g.len() as f64).collect()
    };
    let (slope, intercepts) = (1..=max_slope)
        .map(|s| (s, clusters(s)))
        .min_by_key(|(s, c)| (c.len(), *s))
        .expect("at least one slope");
    EmpiricalLines { slope, intercepts_mod_1: intercepts, gap: CLUSTER_GAP }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureReport {
    pub tool: String,
    pub version: String,
    pub id: String,
    pub alpha: String,
    pub coefficient: String,
    pub band_count: u32,
    pub n_lo: i64,
    pub n_hi: i64,
    pub points: usize,
    pub line_support: LineSupportEcho,
    pub empirical_lines: Option<EmpiricalLines>,
    /// Exact band tallies.
    pub band_counts: Vec<u64>,
    pub outside: u64,
    pub densities: Vec<f64>,
    pub orbit_file: String,
    pub boundaries_file: String,
}

/// Part of `y = c x + b` inside the unit square, for `c > 0`.
fn clip(c: f64, b: f64) -> Option<[(f64, f64); 2]> {
    let x0 = ((0.0 - b) / c).max(0.0);
    let x1 = ((1.0 - b) / c).min(1.0);
    (x0 < x1).then(|| [(x0, c * x0 + b), (x1, c * x1 + b)])
}

fn boundaries_csv(s: &Setup) -> String {
    let c = s.coefficient.to_f64();
    let mut out = String::from("curve,x,y\n");
    let mut push = |name: String, seg: Option<[(f64, f64); 2]>| {
        if let Some(pts) = seg {
            for (x, y) in pts {
                writeln!(out, "{name},{x:.12},{y:.12}").unwrap();
            }
        }
    };
    for j in 0..=s.bands {
        push(format!("boundary_{j}"), clip(c, -(j as f64)));
    }
    for &slope in &s.overlays {
        for i in 0..slope {
            push(format!("slope{slope}_{i}"), clip(slope as f64, -(i as f64)));
        }
    }
    out
}

pub fn figure(id: &str, dir: &Path, workers: Option<usize>) -> Result<Outcome, CliError> {
    let id: FigureId = id.parse()?;
    let s = setup(id);
    let sampler = OrbitSampler::new(&s.alpha, 1, 1).map_err(torus_usage)?;
    let region = RegionSpec::new(s.coefficient.clone(), s.bands);
    let (rows, counts, support) = in_pool(workers, || -> Result<_, CliError> {
        let rows = orbit_dump(&sampler, 1, s.n_hi, Some(&region), DEFAULT_DUMP_DIGITS).map_err(torus_usage)?;
        let counts = band_counts(&sampler, &region, 1, s.n_hi).map_err(torus_usage)?;
        let support = detect_line_support(&s.alpha, 1, 1, LINE_HEIGHT, LINE_HEIGHT).map_err(torus_usage)?;
        Ok((rows, counts, support))
    })??;

    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
    let orbit_path = dir.join(format!("{}_orbit.csv", id.name()));
    let bounds_path = dir.join(format!("{}_boundaries.csv", id.name()));
    let mut csv = Vec::new();
    write_dump(&rows, &mut csv).expect("writing to memory");
    save(&orbit_path, std::str::from_utf8(&csv).expect("ascii output"))?;
    save(&bounds_path, &boundaries_csv(&s))?;

    let empirical = matches!(support, LineSupport::RationalAbscissa { .. }).then(|| empirical_lines(&rows, 5));
    let report = FigureReport {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        id: id.name().to_string(),
        alpha: s.alpha.to_string(),
        coefficient: s.coefficient.to_string(),
        band_count: s.bands,
        n_lo: 1,
        n_hi: s.n_hi,
        points: rows.len(),
        line_support: LineSupportEcho::from(&support),
        empirical_lines: empirical,
        densities: counts.frequencies(),
        band_counts: counts.counts,
        outside: counts.outside,
        orbit_file: orbit_path.display().to_string(),
        boundaries_file: bounds_path.display().to_string(),
    };
    let summary = format!("{}: {} points, {} outside the bands", report.id, report.points, report.outside);
    Ok(Outcome {
        code: 0,
        stdout: serde_json::to_string_pretty(&report).expect("reports serialise"),
        stderr: summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping() {
        let [a, b] = clip(2.0, -1.0).unwrap();
        assert_eq!((a, b), ((0.5, 0.0), (1.0, 1.0)));
        assert!(clip(1.0, -1.0).is_none());
        assert!(matches!("fig3".parse::<FigureId>(), Err(CliError::UnknownFigure(_))));
    }
}
