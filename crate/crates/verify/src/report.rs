//! JSON report types.

use std::path::Path;

use grassmann_core::GrassmannConfig;
use serde::Serialize;

use crate::error::{Result, VerifyError};
use crate::registry::{Mode, Suite};
use crate::tally::Status;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigBlock {
    pub np: usize,
    pub nm: usize,
}

impl From<GrassmannConfig> for ConfigBlock {
    fn from(c: GrassmannConfig) -> Self {
        ConfigBlock { np: c.n_plus(), nm: c.n_minus() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub np: usize,
    pub nm: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub claim: String,
    pub params: Params,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub max_abs_err: f64,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Calibrated sign and scale conventions, logged with every run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub sigma: i8,
    pub dx_scale: i64,
    pub curvature_sign: i8,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(checks: &[CheckResult]) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        Summary {
            total: checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: ConfigBlock,
    pub mode: Mode,
    pub suite: Suite,
    pub seed: u64,
    pub tol: f64,
    pub conventions: Conventions,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(
        cfg: GrassmannConfig,
        mode: Mode,
        suite: Suite,
        seed: u64,
        tol: f64,
        conventions: Conventions,
        checks: Vec<CheckResult>,
    ) -> Result<Self> {
        if checks.is_empty() {
            return Err(VerifyError::Usage("refusing to write a report with no checks".into()));
        }
        let summary = Summary::of(&checks);
        Ok(Report {
            schema_version: SCHEMA_VERSION,
            config: cfg.into(),
            mode,
            suite,
            seed,
            tol,
            conventions,
            checks,
            summary,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.skipped == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|source| VerifyError::Io { path: path.to_path_buf(), source })
    }
}
