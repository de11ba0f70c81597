use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grassmann-verify"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn grassmann-verify")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grassmann-verify-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join(name).display().to_string()
}

#[test]
fn passing_run_reports_conventions_and_summary() {
    let out = run(&["--np", "2", "--nm", "3", "--suite", "lie"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["config"], serde_json::json!({"np": 2, "nm": 3}));
    assert_eq!(r["mode"], "exact");
    assert_eq!(r["conventions"], serde_json::json!({"sigma": 1, "dx_scale": 2, "curvature_sign": -1}));
    assert_eq!(r["summary"]["failed"], 0);
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["LC-01", "LC-02", "LC-03", "LC-04"]);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["schema_version", "config", "mode", "suite", "seed", "tol", "conventions", "checks", "summary"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--suite", "geometry"]).status.code(), Some(2));
    assert_eq!(run(&["--np", "1", "--nm", "3", "--suite", "lie"]).status.code(), Some(2));
    assert_eq!(run(&["--tol", "-1", "--suite", "lie"]).status.code(), Some(2));
    let out = bin().args(["--suite", "lie"]).env("GRASSMANN_WORKERS", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let rec = run(&["--suite", "lie", "--mode", "float", "--golden", "/tmp/unused.json", "--golden-mode", "record"]);
    assert_eq!(rec.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_4() {
    let out = run(&["--suite", "lie", "--out", "/nonexistent-dir/sub/report.json"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(run(&["--suite", "lie", "--golden", "/nonexistent-dir/g.json"]).status.code(), Some(4));
}

#[test]
fn worker_count_does_not_change_the_report() {
    let strip = |o: &Output| {
        String::from_utf8(o.stdout.clone())
            .unwrap()
            .lines()
            .filter(|l| !l.contains("\"elapsed_ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let args = ["--np", "2", "--nm", "2", "--suite", "exterior", "--seed", "3"];
    let one = bin().args(args).env("GRASSMANN_WORKERS", "1").output().unwrap();
    let many = bin().args(args).env("GRASSMANN_WORKERS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(strip(&one), strip(&many));
}

#[test]
fn shipped_golden_files_check_in_both_modes() {
    for (np, nm) in [("2", "2"), ("2", "3"), ("3", "3"), ("2", "4")] {
        let path = golden(&format!("gr_{np}_{nm}.json"));
        for mode in ["exact", "float"] {
            let out = run(&["--np", np, "--nm", nm, "--suite", "lie", "--mode", mode, "--golden", &path]);
            assert_eq!(out.status.code(), Some(0), "({np},{nm}) {mode}");
            let r = json(&out);
            let last = r["checks"].as_array().unwrap().last().unwrap().clone();
            assert_eq!(last["check_id"], "GOLDEN");
            assert_eq!(last["status"], "pass");
        }
    }
}

#[test]
fn golden_record_then_check_round_trips() {
    let dir = scratch("golden");
    let path = dir.join("g.json");
    let p = path.display().to_string();
    let rec = run(&["--np", "2", "--nm", "3", "--suite", "lie", "--golden", &p, "--golden-mode", "record"]);
    assert_eq!(rec.status.code(), Some(0));
    let recorded = std::fs::read_to_string(&path).unwrap();
    assert_eq!(recorded, std::fs::read_to_string(golden("gr_2_3.json")).unwrap());

    let ok = run(&["--np", "2", "--nm", "3", "--suite", "lie", "--golden", &p]);
    assert_eq!(ok.status.code(), Some(0));

    std::fs::write(&path, recorded.replace("\"-8000/63\"", "\"-8000/64\"")).unwrap();
    let bad = run(&["--np", "2", "--nm", "3", "--suite", "lie", "--golden", &p]);
    assert_eq!(bad.status.code(), Some(1));
    let r = json(&bad);
    assert_eq!(r["summary"]["failed"], 1);
    assert_eq!(r["checks"].as_array().unwrap().last().unwrap()["status"], "fail");

    let other = run(&["--np", "2", "--nm", "2", "--suite", "lie", "--golden", &p]);
    assert_eq!(other.status.code(), Some(2));

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["--np", "2", "--nm", "3", "--suite", "lie", "--golden", &p]).status.code(), Some(4));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn out_flag_writes_report_to_file() {
    let dir = scratch("out");
    let path = dir.join("r.json");
    let out = run(&["--suite", "curvature", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["summary"]["total"], 3);
    assert_eq!(r["suite"], "curvature");
    std::fs::remove_dir_all(dir).ok();
}
