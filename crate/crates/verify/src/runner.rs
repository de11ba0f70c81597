//! Runs registry checks in parallel and collects results in registry order.

use std::time::Instant;

use grassmann_core::{GrassmannConfig, Rational};
use rayon::prelude::*;

use crate::context::{model, Cached, Model};
use crate::error::{Result, VerifyError};
use crate::registry::{CheckFn, CheckSpec, Env, Mode, Suite, REGISTRY};
use crate::report::{CheckResult, Conventions, Params};
use crate::tally::{Status, Tally};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "GRASSMANN_WORKERS";

/// Results of one run plus the conventions it used.
#[derive(Clone, Debug)]
pub struct Run {
    pub results: Vec<CheckResult>,
    pub conventions: Conventions,
}

fn pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| VerifyError::Usage(format!("{WORKERS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| VerifyError::Usage(format!("cannot start worker pool: {e}")))
}

pub fn conventions<S: Cached>(m: &Model<S>) -> Conventions {
    Conventions { sigma: m.conv.sigma, dx_scale: m.conv.dx_scale, curvature_sign: m.curvature.sign() }
}

fn run_one<S: Cached>(m: &Model<S>, spec: &CheckSpec, f: CheckFn<S>, seed: u64, tol: f64) -> CheckResult {
    let start = Instant::now();
    let env = Env { model: m, seed, tol, id: spec.id };
    let mut tally = Tally::new(tol);
    let res = f(&env, &mut tally);
    let mut out = tally.finish();
    if let Err(e) = res {
        out.status = Status::Fail;
        out.detail = Some(match out.detail {
            Some(d) => format!("error: {e}; {d}"),
            None => format!("error: {e}"),
        });
    }
    CheckResult {
        check_id: spec.id.to_string(),
        claim: spec.claim.to_string(),
        params: Params { np: m.cfg.n_plus(), nm: m.cfg.n_minus(), seed },
        status: out.status,
        lhs: out.lhs,
        rhs: out.rhs,
        max_abs_err: out.max_abs_err,
        elapsed_ms: start.elapsed().as_millis() as u64,
        detail: out.detail,
    }
}

fn run_typed<S: Cached>(
    cfg: GrassmannConfig,
    specs: &[&'static CheckSpec],
    pick: fn(&CheckSpec) -> CheckFn<S>,
    seed: u64,
    tol: f64,
) -> Result<Run> {
    let m = model::<S>(cfg)?;
    let pool = pool()?;
    let results = pool.install(|| {
        if specs.iter().any(|s| s.suite == Suite::Invariants) {
            // warm the shared projections with the whole pool before fanning out
            let _ = m.projections();
        }
        specs.par_iter().map(|spec| run_one(&m, spec, pick(spec), seed, tol)).collect()
    });
    Ok(Run { results, conventions: conventions(&m) })
}

/// Run the given checks; results come back in the order given.
pub fn run_checks(cfg: GrassmannConfig, specs: &[&'static CheckSpec], mode: Mode, seed: u64, tol: f64) -> Result<Run> {
    match mode {
        Mode::Exact => run_typed::<Rational>(cfg, specs, |s| s.exact, seed, tol),
        Mode::Float => run_typed::<f64>(cfg, specs, |s| s.float, seed, tol),
    }
}

/// Every registered check in `suite`, in registry order.
pub fn select(suite: Suite) -> Vec<&'static CheckSpec> {
    REGISTRY.iter().filter(|c| suite.contains(c.suite)).collect()
}

pub fn run_suite(cfg: GrassmannConfig, suite: Suite, mode: Mode, seed: u64, tol: f64) -> Result<Run> {
    run_checks(cfg, &select(suite), mode, seed, tol)
}
