use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{Field, JetContext};
use crate::error::{invalid, Error, Result};
use crate::exterior::PForm;
use crate::fiber::IsotropyVector;
use crate::matrix::{CMat, Mat};
use crate::scalar::Scalar;

/// Interpolation nodes in `t`.
pub const NODES: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

/// Exact Taylor coefficients from values at [`NODES`], valid for polynomials
/// of degree at most six.
#[derive(Clone, Debug)]
pub struct Interpolator<S: Scalar> {
    /// Row `k` maps node values to the `k`-th derivative at `t = 0`.
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> Default for Interpolator<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> Interpolator<S> {
    pub fn new() -> Self {
        let k = NODES.len();
        let v = Mat::from_fn(k, k, |j, p| {
            let t = S::from_i64(NODES[j]);
            let mut acc = S::one();
            for _ in 0..p {
                acc *= t.clone();
            }
            acc
        });
        let inv = v.inverse().expect("distinct nodes");
        let mut rows = Vec::with_capacity(3);
        let mut fact = S::one();
        for order in 0..3 {
            if order > 0 {
                fact *= S::from_i64(order as i64);
            }
            rows.push((0..k).map(|j| fact.clone() * inv[(order, j)].clone()).collect());
        }
        Interpolator { rows }
    }

    /// Weights for the derivative of the given order (0, 1 or 2).
    pub fn weights(&self, order: usize) -> &[S] {
        &self.rows[order]
    }

    /// `k`-th derivative at zero of the polynomial through `(NODES, values)`.
    pub fn derivative(&self, order: usize, values: &[S]) -> S {
        self.rows[order].iter().zip(values).map(|(w, v)| w.clone() * v.clone()).sum()
    }
}

/// Truncated `Ad(exp(-t Y)) X = X - t [Y, X] + t^2/2 [Y, [Y, X]]`.
pub fn transvect<S: Scalar>(x: &CMat<S>, yhat: &CMat<S>, t: &S) -> CMat<S> {
    let c1 = yhat.commutator(x);
    let c2 = yhat.commutator(&c1);
    let t1 = crate::scalar::Cx::new(-t.clone(), S::zero());
    let t2 = crate::scalar::Cx::new(t.clone() * t.clone() / S::from_i64(2), S::zero());
    &(x + &c1.scale(&t1)) + &c2.scale(&t2)
}

fn check_field<S: Scalar>(field: &Field<S>) -> Result<()> {
    let deg = field.x_degree();
    if deg > 3 {
        return Err(Error::Unsupported(format!("field of degree {deg} in X exceeds the interpolation range")));
    }
    Ok(())
}

pub(super) fn derivative_with<S: Scalar>(
    ctx: &JetContext<'_, S>,
    interp: &Interpolator<S>,
    field: &Field<S>,
    x: &CMat<S>,
    y: &[S],
    order: usize,
) -> Result<PForm<S>> {
    derivative_inner(ctx, interp, field, x, y, order, None)
}

fn derivative_inner<S: Scalar>(
    ctx: &JetContext<'_, S>,
    interp: &Interpolator<S>,
    field: &Field<S>,
    x: &CMat<S>,
    y: &[S],
    order: usize,
    base: Option<&PForm<S>>,
) -> Result<PForm<S>> {
    if !(1..=2).contains(&order) {
        return Err(Error::Unsupported(format!("derivative of order {order}")));
    }
    check_field(field)?;
    let yhat = IsotropyVector::from_coords(ctx.fiber.cfg(), y)?.embed();
    let mut acc: Option<PForm<S>> = None;
    for (w, &t) in interp.weights(order).iter().zip(&NODES) {
        if w.is_zero() {
            continue;
        }
        let value = match (t, base) {
            (0, Some(b)) => b.clone(),
            _ => field.eval_at(ctx, &transvect(x, &yhat, &S::from_i64(t)))?,
        };
        acc = Some(match acc {
            None => value.scale(w),
            Some(a) => a.add_scaled(&value, w)?,
        });
    }
    Ok(acc.unwrap_or_else(|| PForm::zero(0)))
}

/// `nabla_Y^k F` at the base point along frame coordinates `y` (`k = 1, 2`).
pub fn derivative_along<S: Scalar>(
    ctx: &JetContext<'_, S>,
    field: &Field<S>,
    x: &CMat<S>,
    y: &[S],
    order: usize,
) -> Result<PForm<S>> {
    if y.len() != ctx.fiber.dim() {
        return Err(invalid("direction has the wrong length"));
    }
    derivative_with(ctx, &Interpolator::new(), field, x, y, order)
}

/// `nabla_Y^k F` for `Y` given as an element of the `m`-block of `su(n)`.
pub fn equivariant_derivative<S: Scalar>(
    ctx: &JetContext<'_, S>,
    field: &Field<S>,
    x: &CMat<S>,
    y: &CMat<S>,
    order: usize,
) -> Result<PForm<S>> {
    let cfg = ctx.fiber.cfg();
    let (p, n) = (cfg.n_plus(), cfg.n());
    if y.rows() != n || !y.is_square() {
        return Err(invalid("direction must be an n x n matrix"));
    }
    let off_block =
        (0..n).all(|i| (0..n).all(|j| (i < p) != (j < p) || y[(i, j)].re.is_zero() && y[(i, j)].im.is_zero()));
    if !off_block || !y.is_skew_hermitian() {
        return Err(invalid("direction is not in the m-block".to_string()));
    }
    let coords = IsotropyVector::from_su(cfg, y)?.coords();
    derivative_along(ctx, field, x, &coords, order)
}

fn unit<S: Scalar>(d: usize, i: usize) -> Vec<S> {
    let mut y = alloc::vec![S::zero(); d];
    y[i] = S::one();
    y
}

/// `(dF, d*F)` at the base point with `d = sum e^i ^ nabla_i` and
/// `d* = -sum w_i b_i -| nabla_i`. `d*` of a function is reported as zero.
pub fn exterior_ops_at_o<S: Scalar>(
    ctx: &JetContext<'_, S>,
    field: &Field<S>,
    x: &CMat<S>,
) -> Result<(PForm<S>, PForm<S>)> {
    check_field(field)?;
    let degree = field.eval_at(ctx, x)?.degree();
    if degree > 4 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let d = ctx.fiber.dim();
    let m = ctx.fiber.metric();
    let interp = Interpolator::new();
    let mut ext = PForm::zero(degree + 1);
    let mut co = PForm::zero(degree.saturating_sub(1));
    for i in 0..d {
        let grad = derivative_with(ctx, &interp, field, x, &unit(d, i), 1)?;
        if grad.is_zero() {
            continue;
        }
        ext = ext.add(&PForm::basis(&[i])?.wedge(&grad)?)?;
        if degree > 0 {
            co = co.add_scaled(&grad.contract_basis(i)?, &-m.weight(i).clone())?;
        }
    }
    Ok((ext, co))
}

/// Hodge Laplacian `-sum w_i nabla^2_ii F + K(R) F` at the base point.
pub fn laplacian_at_o<S: Scalar>(ctx: &JetContext<'_, S>, field: &Field<S>, x: &CMat<S>) -> Result<PForm<S>> {
    check_field(field)?;
    let base = field.eval_at(ctx, x)?;
    let d = ctx.fiber.dim();
    let m = ctx.fiber.metric();
    let interp = Interpolator::new();
    let mut out = PForm::zero(base.degree());
    for i in 0..d {
        let hess = derivative_inner(ctx, &interp, field, x, &unit(d, i), 2, Some(&base))?;
        out = out.add_scaled(&hess, &-m.weight(i).clone())?;
    }
    let curv = match base.degree() {
        0 => PForm::zero(0),
        2 => {
            let a = m.form_to_endo(&base)?;
            m.endo_to_form(&ctx.curvature.weitzenboeck_lambda2(ctx.fiber, &a)?)
        }
        _ => ctx.curvature.weitzenboeck_form(ctx.fiber, &base)?,
    };
    out.add(&curv)
}
