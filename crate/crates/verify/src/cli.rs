//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use grassmann_core::GrassmannConfig;

use crate::error::{Result, VerifyError};
use crate::golden::{self, GoldenMode};
use crate::registry::{Mode, Suite};
use crate::report::Report;
use crate::runner::run_suite;

#[derive(Debug, Parser)]
#[command(name = "grassmann-verify", about = "Run identity checks on the Grassmannian SU(n)/S(U(n+) x U(n-))")]
pub struct Args {
    /// n+
    #[arg(long, default_value_t = 2)]
    pub np: usize,
    /// n-
    #[arg(long, default_value_t = 3)]
    pub nm: usize,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Relative tolerance for float mode
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Golden coefficient file
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GoldenMode::Check, requires = "golden")]
    pub golden_mode: GoldenMode,
}

/// Run the CLI and return the process exit code.
pub fn run(args: &Args) -> Result<i32> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(VerifyError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let cfg = GrassmannConfig::new(args.np, args.nm).map_err(|e| VerifyError::Usage(e.to_string()))?;
    if let (Some(path), GoldenMode::Record) = (&args.golden, args.golden_mode) {
        if args.mode != Mode::Exact {
            return Err(VerifyError::Usage("golden values are recorded in exact mode only".into()));
        }
        golden::record(path, cfg)?;
        eprintln!("recorded golden coefficients for ({}, {}) in {}", args.np, args.nm, path.display());
    }
    let run = run_suite(cfg, args.suite, args.mode, args.seed, args.tol)?;
    let mut checks = run.results;
    if let (Some(path), GoldenMode::Check) = (&args.golden, args.golden_mode) {
        checks.push(golden::check(path, cfg, args.mode, args.seed, args.tol)?);
    }
    let report = Report::new(cfg, args.mode, args.suite, args.seed, args.tol, run.conventions, checks)?;
    match &args.out {
        Some(path) => report.write(path)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.to_json().as_bytes())
                .map_err(|source| VerifyError::Io { path: PathBuf::from("<stdout>"), source })?;
        }
    }
    let s = report.summary;
    eprintln!("{} checks: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
    Ok(if report.all_passed() { 0 } else { 1 })
}
