//! Base-point jets of fundamental vector fields and a small calculus of
//! equivariant fields built from them.
//!
//! Covariant derivatives at the base point are computed with the
//! transvection rule: along the geodesic `exp(tY) o`, the field generated by
//! `X` pulls back to the field generated by `Ad(exp(-tY)) X`, whose Taylor
//! coefficients in `t` are read off by exact polynomial interpolation.

mod calculus;
mod field;

pub use calculus::{
    derivative_along, equivariant_derivative, exterior_ops_at_o, laplacian_at_o, transvect, Interpolator, NODES,
};
pub use field::Field;

use alloc::format;
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::curvature::CurvatureModel;
use crate::error::{invalid, Error, Result};
use crate::exterior::OmegaForms;
use crate::fiber::{k_action, FiberModel, IsotropyVector, Side};
use crate::lie::su_basis;
use crate::matrix::{CMat, Mat};
use crate::scalar::Scalar;

/// Normalization of `dX` relative to `ad(X_k)` restricted to `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JetConvention {
    /// Global sign `sigma`.
    pub sigma: i8,
    /// Magnitude: `dX = sigma * dx_scale * ad(X_k)|_m`.
    pub dx_scale: i64,
}

impl JetConvention {
    /// Candidates in the order they are tried.
    pub const CANDIDATES: [JetConvention; 4] = [
        JetConvention { sigma: 1, dx_scale: 1 },
        JetConvention { sigma: -1, dx_scale: 1 },
        JetConvention { sigma: 1, dx_scale: 2 },
        JetConvention { sigma: -1, dx_scale: 2 },
    ];

    pub fn factor<S: Scalar>(&self) -> S {
        S::from_i64(self.sigma as i64 * self.dx_scale)
    }
}

/// Everything needed to evaluate fields at the base point.
#[derive(Clone, Copy, Debug)]
pub struct JetContext<'a, S: Scalar> {
    pub fiber: &'a FiberModel<S>,
    pub omega: &'a OmegaForms<S>,
    pub curvature: &'a CurvatureModel<S>,
    pub conv: JetConvention,
}

/// The jet `(X_m, dX, z)` of the fundamental field of `X` at the base point.
#[derive(Clone, Debug)]
pub struct KillingJet<S: Scalar> {
    pub x: CMat<S>,
    pub xm: Vec<S>,
    pub dx: Mat<S>,
    pub z: S,
    plus: OnceCell<Mat<S>>,
    minus: OnceCell<Mat<S>>,
}

impl<S: Scalar> KillingJet<S> {
    /// `(dX)+` or `(dX)-`, computed on first use.
    pub fn part(&self, fiber: &FiberModel<S>, side: Side) -> &Mat<S> {
        let cell = match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        };
        cell.get_or_init(|| fiber.project(side, &self.dx))
    }
}

fn check_su<S: Scalar>(n: usize, x: &CMat<S>) -> Result<()> {
    if x.rows() != n || !x.is_square() {
        return Err(invalid(format!("expected an element of su({n})")));
    }
    if !x.is_skew_hermitian() {
        return Err(invalid("X is not skew-Hermitian"));
    }
    let t = x.trace();
    if !t.re.near(&S::zero()) || !t.im.near(&S::zero()) {
        return Err(invalid("X is not traceless"));
    }
    Ok(())
}

/// Jet of `X in su(n)` under a given convention.
pub fn jet_with<S: Scalar>(fiber: &FiberModel<S>, conv: JetConvention, x: &CMat<S>) -> Result<KillingJet<S>> {
    let cfg = fiber.cfg();
    check_su(cfg.n(), x)?;
    let (p, q) = (cfg.n_plus(), cfg.n_minus());
    let dx = k_action(cfg, &x.block(0, 0, p, p), &x.block(p, p, q, q))?.scale(&conv.factor());
    let xm = IsotropyVector::from_su(cfg, x)?.coords();
    let z = fiber.lam2_inner(&dx, fiber.j())?;
    Ok(KillingJet { x: x.clone(), xm, dx, z, plus: OnceCell::new(), minus: OnceCell::new() })
}

/// Jet of `X` at the base point.
pub fn jet_at_o<S: Scalar>(ctx: &JetContext<'_, S>, x: &CMat<S>) -> Result<KillingJet<S>> {
    jet_with(ctx.fiber, ctx.conv, x)
}

/// `e_X = ((n-^2 - 1)/n-) (dX)+ - ((n+^2 - 1)/n+) (dX)-`.
pub fn e_form<S: Scalar>(fiber: &FiberModel<S>, jet: &KillingJet<S>) -> Mat<S> {
    let cfg = fiber.cfg();
    let (p, q) = (cfg.n_plus() as i64, cfg.n_minus() as i64);
    &jet.part(fiber, Side::Plus).scale(&S::ratio(q * q - 1, q))
        - &jet.part(fiber, Side::Minus).scale(&S::ratio(p * p - 1, p))
}

/// Outcome of trying one candidate convention.
#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationAttempt {
    pub conv: JetConvention,
    pub passed: bool,
    pub max_abs_err: f64,
}

/// Pick the convention for which `nabla_Y z = omega(X_m, Y)` holds for every
/// basis `X in su(n)` and every frame vector `Y`.
pub fn calibrate<S: Scalar>(
    fiber: &FiberModel<S>,
    omega: &OmegaForms<S>,
    curvature: &CurvatureModel<S>,
) -> Result<(JetConvention, Vec<CalibrationAttempt>)> {
    let su = su_basis::<S>(fiber.cfg().n())?;
    let mut attempts = Vec::new();
    for conv in JetConvention::CANDIDATES {
        let ctx = JetContext { fiber, omega, curvature, conv };
        let err = potential_gradient_defect(&ctx, su.elems())?;
        let passed = if S::EXACT { err == 0.0 } else { err <= 1e-9 };
        attempts.push(CalibrationAttempt { conv, passed, max_abs_err: err });
        if passed {
            return Ok((conv, attempts));
        }
    }
    Err(Error::ConventionFailure(format!("no jet convention satisfies d z = X -| omega at {:?}", fiber.cfg())))
}

/// Largest deviation of `nabla_Y z` from `g(J X_m, Y)`.
pub fn potential_gradient_defect<S: Scalar>(ctx: &JetContext<'_, S>, xs: &[CMat<S>]) -> Result<f64> {
    let d = ctx.fiber.dim();
    let interp = Interpolator::<S>::new();
    let mut worst: f64 = 0.0;
    for x in xs {
        let jet = jet_at_o(ctx, x)?;
        let jx = ctx.fiber.j().matvec(&jet.xm);
        for i in 0..d {
            let mut y = alloc::vec![S::zero(); d];
            y[i] = S::one();
            let lhs = calculus::derivative_with(ctx, &interp, &Field::Potential, x, &y, 1)?.as_scalar()?;
            let rhs = ctx.fiber.metric().inner_vec(&jx, &y);
            let diff = lhs - rhs;
            if S::EXACT && !diff.is_zero() {
                worst = worst.max(diff.to_f64().abs().max(f64::MIN_POSITIVE));
            } else {
                worst = worst.max(diff.to_f64().abs());
            }
        }
    }
    Ok(worst)
}
