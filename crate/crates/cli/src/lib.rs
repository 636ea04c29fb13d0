//! Command-line front end for `floorlab-core`.
//!
//! Every subcommand returns an [`Outcome`]: the text for stdout (JSON
//! reports, or CSV for `orbit`), a short summary for stderr and the exit
//! code. Codes: 0 success, 1 usage error, 2 a characterised case whose
//! identity failed.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod report;
pub mod triple;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use cli::{Cli, Command};
pub use config::{Campaign, CampaignConfig};
pub use error::CliError;
pub use report::RunResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `f` on a pool of `workers` threads, or on the global pool.
pub fn in_pool<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CliError::usage("workers", "must be at least 1")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build().map_err(|e| CliError::usage("workers", e))?;
            Ok(pool.install(f))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let w = cli.workers;
    match &cli.command {
        Command::Verify(a) => commands::run_case(a, w, true),
        Command::Scan(a) => commands::run_case(a, w, false),
        Command::Enumerate(a) => commands::enumerate(a, w),
        Command::Dist(a) => commands::dist(a, w),
        Command::Weyl(a) => commands::weyl(a, w),
        Command::Orbit(a) => commands::orbit(a, w),
        Command::Fig(a) => figures::figure(&a.id, &a.out, w),
        Command::SearchTriple(a) => triple::search_triple(a.max_coeff, a.n_max, a.out.as_deref(), w),
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}") },
    }
}
