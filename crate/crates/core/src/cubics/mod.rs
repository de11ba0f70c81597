//! Cubic forms on su(n): the invariant cubic `P0`, the auxiliary cubic `P1`,
//! the invariant inner product on `Sym^3`, pointwise obstruction cubics and
//! the variety `X^2 = (tr X^2 / n) I`.

mod pointwise;
mod sym3;
mod variety;

pub use pointwise::{PointCubic, PointwiseCubic, PointwiseEvaluator};
pub use sym3::{SuCubicFrame, Triple};
pub use variety::{q_classify, q_membership, EigenPattern, QMembership, VarietyOutcome, VarietyReport};

use crate::error::{domain, invalid, Result};
use crate::fiber::{GrassmannConfig, Side};
use crate::lie::xi;
use crate::matrix::{CMat, Mat};
use crate::scalar::{Cx, Scalar};

/// A homogeneous cubic `su(n) -> R`.
pub trait CubicForm<S: Scalar> {
    fn eval(&self, x: &CMat<S>) -> Result<S>;
}

impl<S: Scalar, F: Fn(&CMat<S>) -> Result<S>> CubicForm<S> for F {
    fn eval(&self, x: &CMat<S>) -> Result<S> {
        self(x)
    }
}

fn real_part<S: Scalar>(z: Cx<S>) -> Result<S> {
    let tiny = if S::EXACT { z.im.is_zero() } else { z.im.to_f64().abs() <= 1e-9 * (1.0 + z.re.to_f64().abs()) };
    if !tiny {
        return Err(domain("cubic has a nonzero imaginary part"));
    }
    Ok(z.re)
}

fn check_traceless<S: Scalar>(x: &CMat<S>) -> Result<()> {
    if !x.is_square() {
        return Err(invalid("expected a square matrix"));
    }
    let t = x.trace();
    let zero = if S::EXACT {
        t.re.is_zero() && t.im.is_zero()
    } else {
        t.re.to_f64().abs().max(t.im.to_f64().abs()) <= 1e-9 * (1.0 + x.max_modulus())
    };
    if !zero {
        return Err(invalid("input is not traceless"));
    }
    Ok(())
}

/// `P0(X) = i tr(X^3)`.
pub fn p0_eval<S: Scalar>(x: &CMat<S>) -> Result<S> {
    p0_eval3(x, x, x)
}

/// Polarization `(i/2) tr(XYZ + ZYX)`.
pub fn p0_eval3<S: Scalar>(x: &CMat<S>, y: &CMat<S>, z: &CMat<S>) -> Result<S> {
    for m in [x, y, z] {
        check_traceless(m)?;
    }
    if y.rows() != x.rows() || z.rows() != x.rows() {
        return Err(invalid("cubic arguments differ in size"));
    }
    let xy = x.matmul(y);
    let zy = z.matmul(y);
    let t = xy.trace_product(z) + zy.trace_product(x);
    let half_i = Cx::new(S::zero(), S::ratio(1, 2));
    real_part(half_i * t)
}

/// The invariant cubic `P0` as a [`CubicForm`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct P0;

impl<S: Scalar> CubicForm<S> for P0 {
    fn eval(&self, x: &CMat<S>) -> Result<S> {
        p0_eval(x)
    }
}

/// `P1(X) = tr(X_{su(n+-)}^2) tr(xi X)`, with `X_{su(n+-)}` the traceless part
/// of the named diagonal block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P1 {
    pub cfg: GrassmannConfig,
    pub side: Side,
}

impl<S: Scalar> CubicForm<S> for P1 {
    fn eval(&self, x: &CMat<S>) -> Result<S> {
        let (p, q, n) = (self.cfg.n_plus(), self.cfg.n_minus(), self.cfg.n());
        if x.rows() != n {
            return Err(invalid("P1 argument has the wrong size"));
        }
        check_traceless(x)?;
        let (off, k) = match self.side {
            Side::Plus => (0, p),
            Side::Minus => (p, q),
        };
        let block = x.block(off, off, k, k);
        let shift = block.trace() * Cx::new(S::ratio(1, k as i64), S::zero());
        let traceless = &block - &Mat::identity(k).scale(&shift);
        let sq = real_part(traceless.trace_product(&traceless))?;
        let centre = real_part(xi::<S>(p, q).trace_product(x))?;
        Ok(sq * centre)
    }
}
