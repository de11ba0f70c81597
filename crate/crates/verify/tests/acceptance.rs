use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use grassmann_core::cubics::{q_classify, PointCubic, VarietyOutcome};
use grassmann_core::lie::{bilinear_gram, casimir_operator, exterior_power_rep, su_basis, FormTag};
use grassmann_core::{CMat, Cx, GrassmannConfig, Mat, Rational, Side};
use grassmann_verify::context::model;
use grassmann_verify::registry::lookup;
use grassmann_verify::{run_checks, run_suite, CheckResult, Mode, Status, Suite};

type Q = Rational;

const SEED: u64 = 0;
const TOL: f64 = 1e-9;
const CONFIGS: [(usize, usize); 4] = [(2, 2), (2, 3), (3, 3), (2, 4)];

fn cfg(p: usize, q: usize) -> GrassmannConfig {
    GrassmannConfig::new(p, q).expect("valid config")
}

/// Accumulates failures for one criterion.
#[derive(Default)]
struct Verdict {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn checks(&mut self, (p, q): (usize, usize), ids: &[&str], mode: Mode) -> Vec<CheckResult> {
        let specs: Vec<_> = ids.iter().map(|id| lookup(id).unwrap_or_else(|| panic!("unknown check {id}"))).collect();
        match run_checks(cfg(p, q), &specs, mode, SEED, TOL) {
            Ok(run) => {
                for r in &run.results {
                    self.expect(
                        r.status == Status::Pass,
                        format!("{} at ({p},{q}): {:?}, {} vs {}", r.check_id, r.status, r.lhs, r.rhs),
                    );
                }
                run.results
            }
            Err(e) => {
                self.failures.push(format!("({p},{q}): {e}"));
                Vec::new()
            }
        }
    }

    fn budget(&mut self, start: Instant, limit: Duration, what: &str) {
        let took = start.elapsed();
        self.expect(took <= limit, format!("{what} took {took:.1?}, budget {limit:?}"));
    }
}

fn ids(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}-{i:02}")).collect()
}

fn as_refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn is_scalar(m: &CMat<Q>, v: &Q) -> bool {
    let want: CMat<Q> = Mat::identity(m.rows()).scale(&Cx::new(v.clone(), Q::from(0)));
    *m == want
}

fn casimirs(v: &mut Verdict) {
    let start = Instant::now();
    v.checks((2, 3), &["LC-01", "LC-02", "LC-03", "LC-04", "FIB-04", "FIB-05", "FIB-06"], Mode::Exact);
    for k in 2..=3usize {
        let basis = su_basis::<Q>(k).unwrap();
        let gram = bilinear_gram(&basis, FormTag::Killing).unwrap().scaled(&Q::from(-1));
        let adj = casimir_operator(&basis.structure().unwrap(), &gram).unwrap();
        v.expect(adj == Mat::identity(adj.rows()), format!("adjoint Casimir of su({k}) is 1"));
        let std = casimir_operator(&exterior_power_rep(&basis, 1).unwrap(), &gram).unwrap();
        let kk = k as i64;
        v.expect(is_scalar(&std, &Q::new(kk * kk - 1, 2 * kk * kk)), format!("Casimir of C^{k}"));
    }
    v.budget(start, Duration::from_secs(10), "Casimir normalizations");
}

fn curvature(v: &mut Verdict) {
    let start = Instant::now();
    let cur = ["CUR-01", "CUR-02", "CUR-03"];
    for r in v.checks((2, 3), &cur, Mode::Exact) {
        if r.check_id == "CUR-01" {
            v.notes.push(format!("(2,3): {}", r.lhs));
        }
    }
    let at33 = Instant::now();
    v.checks((3, 3), &cur, Mode::Exact);
    v.budget(at33, Duration::from_secs(30), "curvature at (3,3)");
    v.budget(start, Duration::from_secs(60), "curvature");
}

fn contraction(v: &mut Verdict) {
    let start = Instant::now();
    let mut all = ids("EXT", 1..=6);
    all.extend(ids("FIB", 1..=7));
    for c in [(2, 2), (2, 3)] {
        v.checks(c, &as_refs(&all), Mode::Exact);
    }
    v.budget(start, Duration::from_secs(120), "contraction calculus");
}

fn jets(v: &mut Verdict) {
    let start = Instant::now();
    let all = ids("KJ", 1..=5);
    v.checks((2, 3), &as_refs(&all), Mode::Exact);
    v.budget(start, Duration::from_secs(300), "jet identities at (2,3)");
    v.checks((2, 2), &as_refs(&all), Mode::Exact);
}

/// Projected coefficients keyed by name, exact.
fn projected(v: &mut Verdict, (p, q): (usize, usize)) -> Option<BTreeMap<&'static str, Q>> {
    let m = match model::<Q>(cfg(p, q)) {
        Ok(m) => m,
        Err(e) => {
            v.failures.push(format!("model at ({p},{q}): {e}"));
            return None;
        }
    };
    let pr = match m.projections() {
        Ok(pr) => pr,
        Err(e) => {
            v.failures.push(format!("projections at ({p},{q}): {e}"));
            return None;
        }
    };
    Some(BTreeMap::from([
        ("mu", pr.get(PointCubic::Mu).clone()),
        ("nu+", pr.get(PointCubic::Nu(Side::Plus)).clone()),
        ("nu-", pr.get(PointCubic::Nu(Side::Minus)).clone()),
        ("term1", pr.get(PointCubic::Term1).clone()),
        ("term2", pr.get(PointCubic::Term2).clone()),
        ("psi", pr.get(PointCubic::Psi).clone()),
    ]))
}

fn ratio_is(v: &mut Verdict, c: &BTreeMap<&str, Q>, num: &str, den: &str, want: Q, at: &str) {
    let got = c[num].clone() / c[den].clone();
    v.expect(got == want, format!("c[{num}]/c[{den}] at {at} is {got}, expected {want}"));
    v.notes.push(format!("{at} c[{num}]/c[{den}] = {got}"));
}

fn obstruction(v: &mut Verdict) {
    let start = Instant::now();
    let all = ids("INV", 11..=15);
    for c in CONFIGS {
        let t = Instant::now();
        v.checks(c, &as_refs(&all), Mode::Exact);
        if c == (2, 3) {
            v.budget(t, Duration::from_secs(600), "obstruction constants at (2,3)");
        }
        if c == (3, 3) {
            v.budget(t, Duration::from_secs(2700), "obstruction constants at (3,3)");
        }
    }
    if let Some(c) = projected(v, (2, 3)) {
        ratio_is(v, &c, "psi", "mu", Q::new(-80, 3), "(2,3)");
        ratio_is(v, &c, "term1", "mu", Q::new(-58, 9), "(2,3)");
        ratio_is(v, &c, "term2", "mu", Q::from(-3), "(2,3)");
    }
    if let Some(c) = projected(v, (2, 2)) {
        ratio_is(v, &c, "psi", "nu+", Q::new(-81, 8), "(2,2)");
        ratio_is(v, &c, "term1", "nu+", Q::new(-27, 16), "(2,2)");
        v.expect(c["term2"] == Q::from(0), "c[term2] = 0 at (2,2)");
    }
    v.budget(start, Duration::from_secs(3600), "obstruction constants");
}

fn relations(v: &mut Verdict) {
    let all = ids("INV", 1..=7);
    for (p, q) in CONFIGS {
        v.checks((p, q), &as_refs(&all), Mode::Exact);
        if let Some(c) = projected(v, (p, q)) {
            let zero = c["mu"] == Q::from(0);
            v.expect(zero == (p == q), format!("c[mu] = 0 iff n+ = n- fails at ({p},{q})"));
            v.expect(c["nu+"] != Q::from(0) && c["nu-"] != Q::from(0), format!("c[nu+-] != 0 at ({p},{q})"));
        }
    }
}

fn rigidity(v: &mut Verdict) {
    let start = Instant::now();
    for n in 2..=7 {
        match q_classify::<Q>(n) {
            Ok(r) => {
                let want = if n % 2 == 0 { VarietyOutcome::ConeFamily } else { VarietyOutcome::Trivial };
                v.expect(r.outcome == want, format!("q_classify({n}) = {:?}", r.outcome));
                v.expect(r.all_witnesses_pass, format!("witnesses at n = {n}"));
            }
            Err(e) => v.failures.push(format!("q_classify({n}): {e}")),
        }
    }
    for r in v.checks((2, 3), &["INV-16"], Mode::Exact) {
        v.notes.push(r.lhs);
    }
    v.budget(start, Duration::from_secs(60), "rigidity endgame");
}

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_grassmann-verify"))
}

fn report_without_timings(v: &mut Verdict, args: &[&str]) -> Option<String> {
    let out = Command::new(binary()).args(args).output().expect("spawn grassmann-verify");
    v.expect(out.status.code() == Some(0), format!("{args:?} exited with {:?}", out.status.code()));
    let text = String::from_utf8(out.stdout).ok()?;
    Some(text.lines().filter(|l| !l.trim_start().starts_with("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n"))
}

fn determinism(v: &mut Verdict) {
    let args = ["--np", "2", "--nm", "3", "--suite", "all", "--seed", "7"];
    let a = report_without_timings(v, &args);
    let b = report_without_timings(v, &args);
    v.expect(a.is_some() && a == b, "CLI-01: repeated runs differ");
    for (p, q) in CONFIGS {
        let exact = run_suite(cfg(p, q), Suite::All, Mode::Exact, SEED, TOL);
        let float = run_suite(cfg(p, q), Suite::All, Mode::Float, SEED, TOL);
        match (exact, float) {
            (Ok(e), Ok(f)) => {
                let se: Vec<_> = e.results.iter().map(|r| (r.check_id.clone(), r.status)).collect();
                let sf: Vec<_> = f.results.iter().map(|r| (r.check_id.clone(), r.status)).collect();
                for ((id, a), (_, b)) in se.iter().zip(&sf) {
                    v.expect(a == b, format!("CLI-02 at ({p},{q}): {id} exact {a:?}, float {b:?}"));
                }
                v.expect(se.len() == sf.len(), format!("CLI-02 at ({p},{q}): different check lists"));
            }
            (e, f) => v.failures.push(format!("CLI-02 at ({p},{q}): {:?} / {:?}", e.err(), f.err())),
        }
    }
}

type Criterion = (&'static str, fn(&mut Verdict));

fn main() {
    let criteria: [Criterion; 8] = [
        ("Casimir normalizations", casimirs),
        ("curvature spectrum", curvature),
        ("contraction calculus", contraction),
        ("jet identities", jets),
        ("obstruction constants", obstruction),
        ("nonvanishing and relations", relations),
        ("rigidity endgame", rigidity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut v = Verdict::default();
        f(&mut v);
        let status = if v.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({:.1?})", i + 1, start.elapsed());
        for n in &v.notes {
            println!("    {n}");
        }
        for e in &v.failures {
            println!("    failed: {e}");
        }
        failed += !v.failures.is_empty() as usize;
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
}
