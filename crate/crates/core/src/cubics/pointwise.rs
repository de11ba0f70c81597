use alloc::vec::Vec;

use super::CubicForm;
use crate::error::Result;
use crate::exterior::PForm;
use crate::fiber::Side;
use crate::jets::{e_form, jet_at_o, JetContext, KillingJet};
use crate::matrix::{CMat, Mat};
use crate::scalar::Scalar;

/// Cubics in `X` read off the jet of its fundamental field at the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointCubic {
    /// `z^3`.
    Mu,
    /// `|(dX)+-|^2 z`.
    Nu(Side),
    /// `<omega ^ beta, e_X ^ beta>` with `beta = X -| Omega`.
    Term1,
    /// `<e_X ^ e_X, e_X ^ omega>`.
    Term2,
    /// `6 term1 - 4 term2`.
    Psi,
    /// `|X|^2 z`.
    NormSqPotential,
    /// `|dX|^2 z`.
    DxNormSqPotential,
    /// `(dX)+-(JX, X) = g((dX)+- J X, X)`.
    DxPartJxx(Side),
    /// `<(dX)_a^2 J, (dX)_b>` in the `Lambda^2` inner product.
    DxSquareJ { square: Side, with: Side },
}

/// Evaluates several [`PointCubic`]s from one jet.
#[derive(Clone, Debug)]
pub struct PointwiseEvaluator<'a, S: Scalar> {
    ctx: JetContext<'a, S>,
    kahler: PForm<S>,
}

impl<'a, S: Scalar> PointwiseEvaluator<'a, S> {
    pub fn new(ctx: JetContext<'a, S>) -> Self {
        let kahler = ctx.fiber.metric().endo_to_form(ctx.fiber.j());
        PointwiseEvaluator { ctx, kahler }
    }

    pub fn ctx(&self) -> &JetContext<'a, S> {
        &self.ctx
    }

    pub fn eval(&self, x: &CMat<S>, kinds: &[PointCubic]) -> Result<Vec<S>> {
        self.eval_jet(&jet_at_o(&self.ctx, x)?, kinds)
    }

    pub fn eval_jet(&self, jet: &KillingJet<S>, kinds: &[PointCubic]) -> Result<Vec<S>> {
        let fiber = self.ctx.fiber;
        let m = fiber.metric();
        let mut e: Option<(Mat<S>, PForm<S>)> = None;
        let mut terms: Option<(S, S)> = None;
        let mut out = Vec::with_capacity(kinds.len());
        for kind in kinds {
            let v = match *kind {
                PointCubic::Mu => jet.z.clone() * jet.z.clone() * jet.z.clone(),
                PointCubic::Nu(s) => {
                    let p = jet.part(fiber, s);
                    fiber.lam2_inner(p, p)? * jet.z.clone()
                }
                PointCubic::NormSqPotential => m.inner_vec(&jet.xm, &jet.xm) * jet.z.clone(),
                PointCubic::DxNormSqPotential => fiber.lam2_inner(&jet.dx, &jet.dx)? * jet.z.clone(),
                PointCubic::DxPartJxx(s) => {
                    let jx = fiber.j().matvec(&jet.xm);
                    m.inner_vec(&jet.part(fiber, s).matvec(&jx), &jet.xm)
                }
                PointCubic::DxSquareJ { square, with } => {
                    let a = jet.part(fiber, square);
                    let sq = a.matmul(a).matmul(fiber.j());
                    crate::fiber::lam2_raw(&sq, jet.part(fiber, with))
                }
                PointCubic::Term1 | PointCubic::Term2 | PointCubic::Psi => {
                    if terms.is_none() {
                        if e.is_none() {
                            let ex = e_form(fiber, jet);
                            let ef = m.endo_to_form(&ex);
                            e = Some((ex, ef));
                        }
                        let (_, ef) = e.as_ref().expect("set above");
                        terms = Some(self.obstruction_terms(jet, ef)?);
                    }
                    let (t1, t2) = terms.clone().expect("set above");
                    match kind {
                        PointCubic::Term1 => t1,
                        PointCubic::Term2 => t2,
                        _ => S::from_i64(6) * t1 - S::from_i64(4) * t2,
                    }
                }
            };
            out.push(v);
        }
        Ok(out)
    }

    fn obstruction_terms(&self, jet: &KillingJet<S>, e: &PForm<S>) -> Result<(S, S)> {
        let m = self.ctx.fiber.metric();
        let beta = self.ctx.omega.omega.vec_contract(&jet.xm)?;
        let t1 = m.graded_inner(&self.kahler.wedge(&beta)?, &e.wedge(&beta)?)?;
        let t2 = m.graded_inner(&e.wedge(e)?, &e.wedge(&self.kahler)?)?;
        Ok((t1, t2))
    }

    /// One pointwise cubic as a [`CubicForm`].
    pub fn cubic(&self, kind: PointCubic) -> PointwiseCubic<'_, 'a, S> {
        PointwiseCubic { eval: self, kind }
    }
}

/// Adapter from [`PointCubic`] to [`CubicForm`].
#[derive(Clone, Copy, Debug)]
pub struct PointwiseCubic<'e, 'a, S: Scalar> {
    eval: &'e PointwiseEvaluator<'a, S>,
    kind: PointCubic,
}

impl<S: Scalar> CubicForm<S> for PointwiseCubic<'_, '_, S> {
    fn eval(&self, x: &CMat<S>) -> Result<S> {
        Ok(self.eval.eval(x, &[self.kind])?.remove(0))
    }
}
