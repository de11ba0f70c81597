use alloc::vec::Vec;

use super::{check_traceless, p0_eval3};
use crate::error::{invalid, Result};
use crate::lie::{cayley, su_basis};
use crate::matrix::{CMat, Mat};
use crate::scalar::{Cx, Scalar};

/// Result of testing `X^2 = (tr X^2 / n) I`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMembership<S: Scalar> {
    /// The defining equation holds.
    pub defining: bool,
    /// `P0(X, X, Y) = 0` for every basis `Y`.
    pub gradient: bool,
    /// `X^2 - (tr X^2 / n) I`.
    pub residual: CMat<S>,
}

impl<S: Scalar> QMembership<S> {
    pub fn agree(&self) -> bool {
        self.defining == self.gradient
    }
}

fn negligible<S: Scalar>(v: &S, scale: f64) -> bool {
    if S::EXACT {
        v.is_zero()
    } else {
        v.to_f64().abs() <= 1e-9 * scale.max(1.0)
    }
}

pub fn q_membership<S: Scalar>(x: &CMat<S>) -> Result<QMembership<S>> {
    check_traceless(x)?;
    let n = x.rows();
    let sq = x.matmul(x);
    let shift = sq.trace() * Cx::new(S::ratio(1, n as i64), S::zero());
    let residual = &sq - &Mat::identity(n).scale(&shift);
    let scale = sq.max_modulus();
    let defining = residual.iter().all(|z| negligible(&z.re, scale) && negligible(&z.im, scale));
    let mut gradient = true;
    for y in su_basis::<S>(n)?.elems() {
        if !negligible(&p0_eval3(x, x, y)?, scale) {
            gradient = false;
            break;
        }
    }
    Ok(QMembership { defining, gradient, residual })
}

/// Multiplicities of the eigenvalues `+it` and `-it`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenPattern {
    pub plus: usize,
    pub minus: usize,
    /// Trace zero allows `t != 0`.
    pub admissible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyOutcome {
    /// Only `X = 0`.
    Trivial,
    /// The cone `i t U diag(I_k, -I_k) U^*`, `n = 2k`.
    ConeFamily,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarietyReport<S: Scalar> {
    pub n: usize,
    pub outcome: VarietyOutcome,
    pub patterns: Vec<EigenPattern>,
    pub witnesses: Vec<CMat<S>>,
    pub all_witnesses_pass: bool,
}

/// A fixed unitary for conjugating witnesses.
fn mixing_unitary<S: Scalar>(n: usize) -> Result<CMat<S>> {
    let b = su_basis::<S>(n)?;
    let c: Vec<S> = (0..b.dim()).map(|k| S::ratio((k as i64 % 5) - 2, 3)).collect();
    cayley(&b.combine(&c))
}

/// Classify `X^2 = c I` in `su(n)`: eigenvalues are `+-it`, trace zero
/// forces equal multiplicities unless `t = 0`.
pub fn q_classify<S: Scalar>(n: usize) -> Result<VarietyReport<S>> {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let patterns: Vec<EigenPattern> =
        (0..=n).rev().map(|plus| EigenPattern { plus, minus: n - plus, admissible: plus == n - plus }).collect();
    let mut witnesses = alloc::vec![Mat::zeros(n, n)];
    let u = mixing_unitary::<S>(n)?;
    let u_inv = u.inverse().ok_or_else(|| invalid("mixing matrix is singular"))?;
    for pat in patterns.iter().filter(|p| p.admissible) {
        for t in [S::one(), S::from_i64(2), S::ratio(-1, 3)] {
            let d: Vec<Cx<S>> =
                (0..n).map(|a| Cx::new(S::zero(), if a < pat.plus { t.clone() } else { -t.clone() })).collect();
            let x = Mat::diagonal(&d);
            witnesses.push(u.matmul(&x).matmul(&u_inv));
            witnesses.push(x);
        }
    }
    let mut all_witnesses_pass = true;
    for w in &witnesses {
        let m = q_membership(w)?;
        all_witnesses_pass &= m.defining && m.gradient;
    }
    let outcome =
        if patterns.iter().any(|p| p.admissible) { VarietyOutcome::ConeFamily } else { VarietyOutcome::Trivial };
    Ok(VarietyReport { n, outcome, patterns, witnesses, all_witnesses_pass })
}
