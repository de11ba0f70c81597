//! Golden files: the six headline projection coefficients as exact fractions.

use std::path::Path;
use std::time::Instant;

use grassmann_core::cubics::PointCubic;
use grassmann_core::{GrassmannConfig, Rational, Side};
use serde::{Deserialize, Serialize};

use crate::context::{model, Cached};
use crate::error::{Result, VerifyError};
use crate::registry::Mode;
use crate::report::{CheckResult, ConfigBlock, Params};
use crate::tally::Tally;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GoldenMode {
    Record,
    Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCfg {
    pub np: usize,
    pub nm: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficients {
    pub mu: String,
    pub nu_plus: String,
    pub nu_minus: String,
    pub psi: String,
    pub term1: String,
    pub term2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    pub cfg: GoldenCfg,
    pub coefficients: Coefficients,
}

impl Coefficients {
    fn fields(&self) -> [(&'static str, PointCubic, &str); 6] {
        [
            ("mu", PointCubic::Mu, &self.mu),
            ("nu_plus", PointCubic::Nu(Side::Plus), &self.nu_plus),
            ("nu_minus", PointCubic::Nu(Side::Minus), &self.nu_minus),
            ("psi", PointCubic::Psi, &self.psi),
            ("term1", PointCubic::Term1, &self.term1),
            ("term2", PointCubic::Term2, &self.term2),
        ]
    }
}

/// Compute the golden coefficients exactly.
pub fn compute(cfg: GrassmannConfig) -> Result<GoldenFile> {
    let m = model::<Rational>(cfg)?;
    let p = m.projections()?;
    let s = |k: PointCubic| p.get(k).to_string();
    Ok(GoldenFile {
        cfg: GoldenCfg { np: cfg.n_plus(), nm: cfg.n_minus() },
        coefficients: Coefficients {
            mu: s(PointCubic::Mu),
            nu_plus: s(PointCubic::Nu(Side::Plus)),
            nu_minus: s(PointCubic::Nu(Side::Minus)),
            psi: s(PointCubic::Psi),
            term1: s(PointCubic::Term1),
            term2: s(PointCubic::Term2),
        },
    })
}

pub fn record(path: &Path, cfg: GrassmannConfig) -> Result<GoldenFile> {
    let golden = compute(cfg)?;
    let mut text = serde_json::to_string_pretty(&golden).expect("golden serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| VerifyError::Io { path: path.to_path_buf(), source })?;
    Ok(golden)
}

pub fn load(path: &Path) -> Result<GoldenFile> {
    let text = std::fs::read_to_string(path).map_err(|source| VerifyError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| VerifyError::Json { path: path.to_path_buf(), source })
}

fn compare<S: Cached>(cfg: GrassmannConfig, golden: &GoldenFile, tol: f64) -> Result<Tally<S>> {
    let m = model::<S>(cfg)?;
    let p = m.projections()?;
    let mut t = Tally::new(tol);
    for (name, kind, raw) in golden.coefficients.fields() {
        let want: Rational =
            raw.parse().map_err(|_| VerifyError::Usage(format!("golden field {name} is not a fraction: {raw:?}")))?;
        t.scalar(name, p.get(kind), &S::from_rational(&want));
    }
    let (mu, psi) = (p.get(PointCubic::Mu), p.get(PointCubic::Psi));
    t.headline(
        format!("mu = {mu}, psi = {psi}"),
        format!("mu = {}, psi = {}", golden.coefficients.mu, golden.coefficients.psi),
    );
    Ok(t)
}

/// Compare the current coefficients against a golden file.
pub fn check(path: &Path, cfg: GrassmannConfig, mode: Mode, seed: u64, tol: f64) -> Result<CheckResult> {
    let start = Instant::now();
    let golden = load(path)?;
    let block = ConfigBlock::from(cfg);
    if golden.cfg.np != block.np || golden.cfg.nm != block.nm {
        return Err(VerifyError::Usage(format!(
            "golden file is for ({}, {}), run is for ({}, {})",
            golden.cfg.np, golden.cfg.nm, block.np, block.nm
        )));
    }
    let outcome = match mode {
        Mode::Exact => compare::<Rational>(cfg, &golden, tol)?.finish(),
        Mode::Float => compare::<f64>(cfg, &golden, tol)?.finish(),
    };
    Ok(CheckResult {
        check_id: "GOLDEN".to_string(),
        claim: format!("projection coefficients match {}", path.display()),
        params: Params { np: block.np, nm: block.nm, seed },
        status: outcome.status,
        lhs: outcome.lhs,
        rhs: outcome.rhs,
        max_abs_err: outcome.max_abs_err,
        elapsed_ms: start.elapsed().as_millis() as u64,
        detail: outcome.detail,
    })
}
