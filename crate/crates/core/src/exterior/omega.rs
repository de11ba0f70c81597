use alloc::vec::Vec;

use crate::error::Result;
use crate::exterior::PForm;
use crate::fiber::{FiberModel, Side};
use crate::matrix::Mat;
use crate::scalar::Scalar;

/// The invariant 4-forms `Omega+`, `Omega-` and the primitive combination `Omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaForms<S: Scalar> {
    pub plus: PForm<S>,
    pub minus: PForm<S>,
    pub omega: PForm<S>,
}

impl<S: Scalar> OmegaForms<S> {
    pub fn side(&self, side: Side) -> &PForm<S> {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }
}

/// `sum_a (w_a ^ w_a) / |w_a|^2` over an orthogonal basis.
pub fn omega_from_basis<S: Scalar>(fiber: &FiberModel<S>, orthogonal: &[Mat<S>], norms: &[S]) -> Result<PForm<S>> {
    let metric = fiber.metric();
    let mut out = PForm::zero(4);
    for (o, n) in orthogonal.iter().zip(norms) {
        let f = metric.endo_to_form(o);
        out = out.add_scaled(&f.wedge(&f)?, &(S::one() / n.clone()))?;
    }
    Ok(out)
}

pub fn build_omega_forms<S: Scalar>(fiber: &FiberModel<S>) -> Result<OmegaForms<S>> {
    let cfg = fiber.cfg();
    let sides: Vec<PForm<S>> = Side::BOTH
        .iter()
        .map(|&s| {
            let span = fiber.span(s);
            omega_from_basis(fiber, &span.orthogonal, &span.norms)
        })
        .collect::<Result<_>>()?;
    let (p, q, n) = (cfg.n_plus() as i64, cfg.n_minus() as i64, cfg.n() as i64);
    let omega = sides[0].scale(&S::ratio(q * q - 1, 2 * n)).add_scaled(&sides[1], &-S::ratio(p * p - 1, 2 * n))?;
    let mut it = sides.into_iter();
    let plus = it.next().expect("plus");
    let minus = it.next().expect("minus");
    Ok(OmegaForms { plus, minus, omega })
}
