use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{e_form, jet_at_o, JetContext, KillingJet};
use crate::error::Result;
use crate::exterior::PForm;
use crate::fiber::Side;
use crate::scalar::Scalar;

/// A tensor field on the Grassmannian built polynomially from the
/// fundamental field of `X`, evaluated at the base point.
///
/// Scalars are degree-0 forms. Every leaf is linear or quadratic in `X`.
#[derive(Clone, Debug, PartialEq)]
pub enum Field<S: Scalar> {
    /// The Hamiltonian potential `z`.
    Potential,
    /// `|X|^2`.
    NormSq,
    /// The 1-form `g(X, .)`.
    Flat,
    /// `dX` as a 2-form.
    Dx,
    /// `(dX)+-` as a 2-form.
    DxPart(Side),
    /// `|dX|^2` in the `Lambda^2` inner product.
    DxNormSq,
    /// `f+- = |(dX)+-|^2`.
    DxPartNormSq(Side),
    /// The 2-form `e_X`.
    EForm,
    /// `X -| Omega`.
    OmegaContract,
    /// The Kahler form.
    Kahler,
    Const(S),
    Scale(S, Box<Field<S>>),
    Sum(Vec<Field<S>>),
    Wedge(Box<Field<S>>, Box<Field<S>>),
    /// Graded inner product of two fields of equal degree.
    Inner(Box<Field<S>>, Box<Field<S>>),
}

impl<S: Scalar> Field<S> {
    pub fn scaled(self, c: S) -> Self {
        Field::Scale(c, Box::new(self))
    }

    pub fn wedge(self, other: Field<S>) -> Self {
        Field::Wedge(Box::new(self), Box::new(other))
    }

    pub fn inner(self, other: Field<S>) -> Self {
        Field::Inner(Box::new(self), Box::new(other))
    }

    /// Polynomial degree in `X`.
    pub fn x_degree(&self) -> usize {
        match self {
            Field::Potential | Field::Flat | Field::Dx | Field::DxPart(_) | Field::EForm | Field::OmegaContract => 1,
            Field::NormSq | Field::DxNormSq | Field::DxPartNormSq(_) => 2,
            Field::Kahler | Field::Const(_) => 0,
            Field::Scale(_, f) => f.x_degree(),
            Field::Sum(fs) => fs.iter().map(Field::x_degree).max().unwrap_or(0),
            Field::Wedge(a, b) | Field::Inner(a, b) => a.x_degree() + b.x_degree(),
        }
    }

    /// Value at the base point for the generator `x`.
    pub fn eval_at(&self, ctx: &JetContext<'_, S>, x: &crate::matrix::CMat<S>) -> Result<PForm<S>> {
        self.eval(ctx, &jet_at_o(ctx, x)?)
    }

    pub fn eval(&self, ctx: &JetContext<'_, S>, jet: &KillingJet<S>) -> Result<PForm<S>> {
        let fiber = ctx.fiber;
        let m = fiber.metric();
        Ok(match self {
            Field::Potential => PForm::scalar(jet.z.clone()),
            Field::NormSq => PForm::scalar(m.inner_vec(&jet.xm, &jet.xm)),
            Field::Flat => m.flat(&jet.xm),
            Field::Dx => m.endo_to_form(&jet.dx),
            Field::DxPart(s) => m.endo_to_form(jet.part(fiber, *s)),
            Field::DxNormSq => PForm::scalar(fiber.lam2_inner(&jet.dx, &jet.dx)?),
            Field::DxPartNormSq(s) => {
                let p = jet.part(fiber, *s);
                PForm::scalar(fiber.lam2_inner(p, p)?)
            }
            Field::EForm => m.endo_to_form(&e_form(fiber, jet)),
            Field::OmegaContract => ctx.omega.omega.vec_contract(&jet.xm)?,
            Field::Kahler => m.endo_to_form(fiber.j()),
            Field::Const(c) => PForm::scalar(c.clone()),
            Field::Scale(c, f) => f.eval(ctx, jet)?.scale(c),
            Field::Sum(fs) => {
                let mut acc: Option<PForm<S>> = None;
                for f in fs {
                    let v = f.eval(ctx, jet)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => a.add(&v)?,
                    });
                }
                acc.unwrap_or_else(|| PForm::zero(0))
            }
            Field::Wedge(a, b) => a.eval(ctx, jet)?.wedge(&b.eval(ctx, jet)?)?,
            Field::Inner(a, b) => PForm::scalar(m.graded_inner(&a.eval(ctx, jet)?, &b.eval(ctx, jet)?)?),
        })
    }
}
