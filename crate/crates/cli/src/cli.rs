use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "floorlab", version, about = "Exact experiments with nested-floor identities over real algebraic numbers")]
pub struct Cli {
    /// Worker threads (default: one per core). Overrides a config file's value.
    #[arg(long, global = true, env = "FLOORLAB_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan an identity and compare the outcome with its algebraic condition.
    Verify(CaseArgs),
    /// Scan an identity over a range of n.
    Scan(CaseArgs),
    /// List every characterised family up to the given bounds.
    Enumerate(EnumerateArgs),
    /// Frequencies of r(n) = [nm a] + 1 - m[n a].
    Dist(DistArgs),
    /// Weyl averages of a sequence on the torus.
    Weyl(WeylArgs),
    /// Dump the orbit ({n a^l}, {n a^(l+k)}) as CSV.
    Orbit(OrbitArgs),
    /// Regenerate the data behind one of the reference figures.
    Fig(FigArgs),
    /// Look for counterexamples to the triple-bracket identity among cubic units.
    SearchTriple(TripleArgs),
}

/// One identity case, given by flags or by a JSON config file.
#[derive(Debug, Clone, Default, Args)]
pub struct CaseArgs {
    /// JSON campaign config; cannot be combined with case flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// z1, z2, main, delta, mvar, pair, poly or triple.
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Exact rational shift in [0, 1).
    #[arg(long)]
    pub delta: Option<String>,
    /// Coefficients of P, constant term first ("1,4" is 4X + 1).
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// `root([c0,...,cd],lo,hi)` or a rational.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Scan -N..=N.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_lo: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_hi: Option<i64>,
    /// Violations kept in the report; the total is always exact.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Also write the result here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 3)]
    pub l_max: u32,
    #[arg(long, default_value_t = 3)]
    pub k_max: u32,
    #[arg(long, default_value_t = 3)]
    pub m_max: u32,
    /// Each family is scanned over |n| <= this bound.
    #[arg(long, default_value_t = 1000)]
    pub quick_n: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub m: u32,
    #[arg(long = "N")]
    pub n_max: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct WeylArgs {
    /// Coordinates of theta, one flag per coordinate.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Vec<String>,
    /// x(n) = n theta (the default).
    #[arg(long, conflicts_with_all = ["degree", "coeffs"])]
    pub linear: bool,
    /// x(n) = n^degree theta.
    #[arg(long)]
    pub degree: Option<u32>,
    /// General polynomial coordinates: `c0;c1;...`, one flag per coordinate.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "theta")]
    pub coeffs: Vec<String>,
    /// Frequency vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    #[arg(long = "N")]
    pub n_bound: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Points n = 1..=N.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_lo: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_hi: Option<i64>,
    /// Number of bands to classify points into (coefficient a^k by default).
    #[arg(long)]
    pub bands: Option<u32>,
    /// Region coefficient c of the bands -j <= y - c x < -(j-1).
    #[arg(long, allow_hyphen_values = true)]
    pub coefficient: Option<String>,
    #[arg(long, default_value_t = floorlab_core::torus::DEFAULT_DUMP_DIGITS)]
    pub digits: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigArgs {
    /// fig1-left, fig1-mid, fig1-right or fig2.
    #[arg(long)]
    pub id: String,
    /// Directory receiving `<id>_orbit.csv` and `<id>_boundaries.csv`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TripleArgs {
    /// Bound A on the coefficients of x^3 - a x^2 - b x - c.
    #[arg(long, default_value_t = 3)]
    pub max_coeff: u32,
    /// Scan 0 < |n| <= this bound; survivors are rescanned at ten times it.
    #[arg(long, default_value_t = 10_000)]
    pub n_max: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
