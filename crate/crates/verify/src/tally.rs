//! Bookkeeping for one check: every comparison feeds a running maximum error.

use grassmann_core::{Cx, Mat, PForm, Scalar};

/// Status of a finished check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Tally<S: Scalar> {
    tol: f64,
    max_err: f64,
    failed: bool,
    comparisons: usize,
    headline: Option<(String, String)>,
    first_failure: Option<(String, String, String)>,
    notes: Vec<String>,
    _scalar: std::marker::PhantomData<S>,
}

fn render<S: Scalar>(v: &S) -> String {
    v.to_string()
}

impl<S: Scalar> Tally<S> {
    pub fn new(tol: f64) -> Self {
        Tally {
            tol,
            max_err: 0.0,
            failed: false,
            comparisons: 0,
            headline: None,
            first_failure: None,
            notes: Vec::new(),
            _scalar: std::marker::PhantomData,
        }
    }

    /// Error of `lhs` against `rhs`, relative to `scale`. Exact mode reports
    /// any nonzero difference as strictly positive.
    fn err(&self, lhs: &S, rhs: &S, scale: f64) -> (f64, bool) {
        let diff = (lhs.clone() - rhs.clone()).to_f64().abs();
        if S::EXACT {
            if lhs == rhs {
                (0.0, true)
            } else {
                (diff.max(f64::MIN_POSITIVE), false)
            }
        } else {
            let e = diff / scale.max(1.0);
            (e, e <= self.tol)
        }
    }

    fn record(&mut self, what: &str, lhs: &S, rhs: &S, scale: f64) -> bool {
        self.comparisons += 1;
        let (e, ok) = self.err(lhs, rhs, scale);
        self.max_err = self.max_err.max(e);
        if !ok {
            self.fail_with(what, render(lhs), render(rhs));
        }
        ok
    }

    fn fail_with(&mut self, what: &str, lhs: String, rhs: String) {
        self.failed = true;
        if self.first_failure.is_none() {
            self.first_failure = Some((what.to_string(), lhs, rhs));
        }
    }

    pub fn scalar(&mut self, what: &str, lhs: &S, rhs: &S) -> bool {
        let scale = rhs.to_f64().abs();
        self.record(what, lhs, rhs, scale)
    }

    pub fn vec(&mut self, what: &str, lhs: &[S], rhs: &[S]) -> bool {
        if lhs.len() != rhs.len() {
            self.fail_with(what, format!("len {}", lhs.len()), format!("len {}", rhs.len()));
            return false;
        }
        let scale = rhs.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        let mut ok = true;
        for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            ok &= self.record(&format!("{what}[{i}]"), a, b, scale);
        }
        ok
    }

    pub fn mat(&mut self, what: &str, lhs: &Mat<S>, rhs: &Mat<S>) -> bool {
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            self.fail_with(what, format!("{}x{}", lhs.rows(), lhs.cols()), format!("{}x{}", rhs.rows(), rhs.cols()));
            return false;
        }
        let scale = rhs.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        let mut ok = true;
        for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                ok &= self.record(&format!("{what}[{r},{c}]"), &lhs[(r, c)], &rhs[(r, c)], scale);
            }
        }
        ok
    }

    pub fn cmat(&mut self, what: &str, lhs: &Mat<Cx<S>>, rhs: &Mat<Cx<S>>) -> bool {
        let re = self.mat(&format!("Re {what}"), &lhs.real_part(), &rhs.real_part());
        let im = self.mat(&format!("Im {what}"), &lhs.imag_part(), &rhs.imag_part());
        re && im
    }

    pub fn form(&mut self, what: &str, lhs: &PForm<S>, rhs: &PForm<S>) -> bool {
        if lhs.degree() != rhs.degree() {
            self.fail_with(what, format!("degree {}", lhs.degree()), format!("degree {}", rhs.degree()));
            return false;
        }
        let scale = rhs.max_abs();
        let mut masks: Vec<u32> = lhs.terms().iter().chain(rhs.terms()).map(|(m, _)| *m).collect();
        masks.sort_unstable();
        masks.dedup();
        let mut ok = true;
        if masks.is_empty() {
            self.comparisons += 1;
        }
        for m in masks {
            ok &= self.record(&format!("{what}[{m:#x}]"), &lhs.coeff(m), &rhs.coeff(m), scale);
        }
        ok
    }

    pub fn zero_mat(&mut self, what: &str, m: &Mat<S>) -> bool {
        self.mat(what, m, &Mat::zeros(m.rows(), m.cols()))
    }

    /// `v` must be nonzero: exactly in exact mode, above the tolerance otherwise.
    pub fn nonzero(&mut self, what: &str, v: &S) -> bool {
        self.comparisons += 1;
        let ok = if S::EXACT { !v.is_zero() } else { v.to_f64().abs() > self.tol };
        if !ok {
            self.fail_with(what, render(v), "nonzero".to_string());
        }
        ok
    }

    pub fn require(&mut self, what: &str, ok: bool) -> bool {
        self.comparisons += 1;
        if !ok {
            self.fail_with(what, "false".to_string(), "true".to_string());
        }
        ok
    }

    /// Value pair shown in the report when the check passes.
    pub fn headline(&mut self, lhs: impl Into<String>, rhs: impl Into<String>) {
        self.headline = Some((lhs.into(), rhs.into()));
    }

    pub fn headline_scalars(&mut self, lhs: &S, rhs: &S) {
        self.headline(render(lhs), render(rhs));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(self) -> Outcome {
        let status = if self.failed {
            Status::Fail
        } else if self.comparisons == 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
        let mut notes = self.notes;
        let (lhs, rhs) = match (self.first_failure, self.headline) {
            (Some((what, l, r)), _) => {
                notes.insert(0, format!("first mismatch at {what}"));
                (l, r)
            }
            (None, Some(h)) => h,
            (None, None) => (String::new(), String::new()),
        };
        let detail = if notes.is_empty() { None } else { Some(notes.join("; ")) };
        Outcome { status, lhs, rhs, max_abs_err: self.max_err, comparisons: self.comparisons, detail }
    }
}

/// What a check reports back to the runner.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub max_abs_err: f64,
    pub comparisons: usize,
    pub detail: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use grassmann_core::Rational;

    #[test]
    fn exact_mode_needs_equality() {
        let mut t = Tally::<Rational>::new(1e-9);
        t.scalar("a", &Rational::new(1, 3), &Rational::new(2, 6));
        assert_eq!(t.clone().finish().status, Status::Pass);
        t.scalar("b", &Rational::new(1, 3), &Rational::new(1, 3 + 1_000_000_000_000));
        let out = t.finish();
        assert_eq!(out.status, Status::Fail);
        assert!(out.max_abs_err > 0.0);
        assert!(out.detail.unwrap().contains("first mismatch at b"));
    }

    #[test]
    fn float_mode_is_relative_to_scale() {
        let mut t = Tally::<f64>::new(1e-9);
        t.scalar("small", &(1.0 + 1e-6), &1.0);
        assert_eq!(t.clone().finish().status, Status::Fail);
        let mut t = Tally::<f64>::new(1e-9);
        t.vec("v", &[1e6 + 1e-4, 1.0], &[1e6, 1.0]);
        assert_eq!(t.finish().status, Status::Pass);
    }

    #[test]
    fn no_comparisons_means_skipped() {
        assert_eq!(Tally::<f64>::new(1e-9).finish().status, Status::Skipped);
    }
}
