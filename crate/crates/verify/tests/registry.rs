use std::collections::BTreeSet;

use grassmann_core::GrassmannConfig;
use grassmann_verify::report::{Conventions, Report};
use grassmann_verify::runner::select;
use grassmann_verify::{run_suite, Mode, Status, Suite, VerifyError, REGISTRY};

#[test]
fn ids_are_unique_and_grouped() {
    let ids: BTreeSet<&str> = REGISTRY.iter().map(|c| c.id).collect();
    assert_eq!(ids.len(), REGISTRY.len());
    for suite in [Suite::Lie, Suite::Fiber, Suite::Exterior, Suite::Curvature, Suite::Jets, Suite::Invariants] {
        assert!(!select(suite).is_empty(), "{suite:?}");
        assert!(select(suite).iter().all(|c| c.suite == suite));
    }
    assert_eq!(select(Suite::All).len(), REGISTRY.len());
}

#[test]
fn empty_reports_are_refused() {
    let cfg = GrassmannConfig::new(2, 3).unwrap();
    let conv = Conventions { sigma: 1, dx_scale: 2, curvature_sign: -1 };
    let err = Report::new(cfg, Mode::Exact, Suite::Lie, 0, 1e-9, conv, Vec::new()).unwrap_err();
    assert!(matches!(err, VerifyError::Usage(_)));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn results_follow_registry_order() {
    let cfg = GrassmannConfig::new(2, 2).unwrap();
    let run = run_suite(cfg, Suite::Fiber, Mode::Float, 11, 1e-9).unwrap();
    let want: Vec<&str> = select(Suite::Fiber).iter().map(|c| c.id).collect();
    let got: Vec<&str> = run.results.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(got, want);
    assert!(run.results.iter().all(|r| r.status == Status::Pass));
    assert_eq!(run.conventions.curvature_sign, -1);
}

#[test]
fn seeds_change_samples_not_verdicts() {
    let cfg = GrassmannConfig::new(2, 3).unwrap();
    for seed in [1, 2] {
        let run = run_suite(cfg, Suite::Exterior, Mode::Exact, seed, 1e-9).unwrap();
        assert!(run.results.iter().all(|r| r.status == Status::Pass && r.params.seed == seed));
    }
}
