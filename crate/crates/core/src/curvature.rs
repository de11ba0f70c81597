//! Curvature of the symmetric metric at the base point.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::exterior::{bits, PForm};
use crate::fiber::{k_action, FiberModel, IsotropyVector, Side};
use crate::lie::bracket;
use crate::matrix::Mat;
use crate::scalar::Scalar;

/// Bundle on which the Weitzenboeck operator acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    Tangent,
    Lambda2,
    E(Side),
}

/// `R(X,Y)Z = s [[X,Y],Z]` with the sign `s` fixed by `R(omega) = -omega/2`.
#[derive(Clone, Debug)]
pub struct CurvatureModel<S: Scalar> {
    sign: i8,
    pairs: Vec<(usize, usize)>,
    /// `R(b_i, b_j)` for `i < j`, in pair order.
    endos: Vec<Mat<S>>,
    /// Curvature operator on 2-form coefficients in the pair basis.
    operator: Mat<S>,
    /// Nonzero terms of the Weitzenboeck sum.
    terms: Vec<(Mat<S>, Mat<S>)>,
}

impl<S: Scalar> CurvatureModel<S> {
    pub fn new(fiber: &FiberModel<S>) -> Result<Self> {
        let cfg = fiber.cfg();
        let d = fiber.dim();
        let (p, q) = (cfg.n_plus(), cfg.n_minus());
        let (frame, _) = fiber.isotropy_frame();
        let hats: Vec<_> = frame.iter().map(IsotropyVector::embed).collect();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let mut endos = Vec::with_capacity(pairs.len());
        for &(i, j) in &pairs {
            let k = bracket(&hats[i], &hats[j])?;
            endos.push(k_action(cfg, &k.block(0, 0, p, p), &k.block(p, p, q, q))?);
        }
        let mut model = CurvatureModel { sign: 1, pairs, endos, operator: Mat::zeros(0, 0), terms: Vec::new() };
        model.operator = model.build_operator(fiber);
        let omega = fiber.metric().endo_to_form(fiber.j());
        let target = omega.scale(&-S::ratio(1, 2));
        let image = model.apply_form(&omega)?;
        if image == target || (!S::EXACT && image.max_diff(&target) < 1e-9) {
            model.terms = model.build_terms(fiber)?;
            return Ok(model);
        }
        if image.neg() == target || (!S::EXACT && image.neg().max_diff(&target) < 1e-9) {
            model.sign = -1;
            model.endos = model.endos.iter().map(|e| -e).collect();
            model.operator = -&model.operator;
            model.terms = model.build_terms(fiber)?;
            return Ok(model);
        }
        Err(Error::ConventionFailure(format!("neither curvature sign gives R(omega) = -omega/2 at {cfg:?}")))
    }

    /// The calibrated global sign `s`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.binary_search(&(i.min(j), i.max(j))).ok().filter(|_| i != j)
    }

    fn build_operator(&self, fiber: &FiberModel<S>) -> Mat<S> {
        let m = fiber.metric();
        let n = self.pairs.len();
        let mut op = Mat::zeros(n, n);
        for (col, &(i, j)) in self.pairs.iter().enumerate() {
            let wij = m.weight(i).clone() * m.weight(j).clone();
            let r = &self.endos[col];
            for (row, &(k, l)) in self.pairs.iter().enumerate() {
                // R_ijkl = g(R(b_i, b_j) b_k, b_l)
                let v = &r[(l, k)];
                if !v.is_zero() {
                    op[(row, col)] = wij.clone() * m.norm_sq(l).clone() * v.clone();
                }
            }
        }
        op
    }

    /// `R(b_i, b_j)` as an endomorphism.
    pub fn r_endo(&self, i: usize, j: usize) -> Option<Mat<S>> {
        let idx = self.pair_index(i, j)?;
        Some(if i < j { self.endos[idx].clone() } else { -&self.endos[idx] })
    }

    /// `R(X, Y)` for coordinate vectors.
    pub fn r_xy(&self, x: &[S], y: &[S]) -> Mat<S> {
        let d = x.len();
        let mut out = Mat::zeros(d, d);
        for (idx, &(i, j)) in self.pairs.iter().enumerate() {
            let c = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
            if !c.is_zero() {
                out = &out + &self.endos[idx].scale(&c);
            }
        }
        out
    }

    /// `R(X, Y) Z`.
    pub fn apply(&self, x: &[S], y: &[S], z: &[S]) -> Vec<S> {
        self.r_xy(x, y).matvec(z)
    }

    /// Matrix of the curvature operator on 2-form coefficients.
    pub fn operator_matrix(&self) -> &Mat<S> {
        &self.operator
    }

    /// Curvature operator applied to a 2-form.
    pub fn apply_form(&self, alpha: &PForm<S>) -> Result<PForm<S>> {
        if alpha.degree() != 2 {
            return Err(Error::UnsupportedDegree(alpha.degree()));
        }
        let mut v = alloc::vec![S::zero(); self.pairs.len()];
        for (m, c) in alpha.terms() {
            let mut it = bits(*m);
            let (i, j) = (it.next().expect("bit"), it.next().expect("bit"));
            v[self.pair_index(i, j).expect("pair")] = c.clone();
        }
        let out = self.operator.matvec(&v);
        let terms = self
            .pairs
            .iter()
            .zip(out)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(k, l), c)| ((1u32 << k) | (1u32 << l), c))
            .collect();
        PForm::from_terms(2, terms)
    }

    /// Curvature operator on a skew endomorphism.
    pub fn apply_endo(&self, fiber: &FiberModel<S>, a: &Mat<S>) -> Result<Mat<S>> {
        let m = fiber.metric();
        m.form_to_endo(&self.apply_form(&m.endo_to_form(a))?)
    }

    /// Ricci endomorphism: `g(Ric Y, Z) = sum_i w_i g(R(b_i, Y) Z, b_i)`.
    pub fn ricci(&self, fiber: &FiberModel<S>) -> Mat<S> {
        let m = fiber.metric();
        let d = fiber.dim();
        let mut ric = Mat::zeros(d, d);
        for y in 0..d {
            for z in 0..d {
                let mut acc = S::zero();
                for i in 0..d {
                    if let Some(r) = self.r_endo(i, y) {
                        acc += m.weight(i).clone() * m.norm_sq(i).clone() * r[(i, z)].clone();
                    }
                }
                ric[(z, y)] = acc * m.weight(z).clone();
            }
        }
        ric
    }

    /// Pairs `(A_ij / (w_i w_j), endo of R(e^i ^ e^j))` with a nonzero second entry.
    fn build_terms(&self, fiber: &FiberModel<S>) -> Result<Vec<(Mat<S>, Mat<S>)>> {
        let m = fiber.metric();
        let mut out = Vec::new();
        for (col, &(i, j)) in self.pairs.iter().enumerate() {
            let image = PForm::from_terms(
                2,
                self.pairs
                    .iter()
                    .enumerate()
                    .filter(|(row, _)| !self.operator[(*row, col)].is_zero())
                    .map(|(row, &(k, l))| ((1u32 << k) | (1u32 << l), self.operator[(row, col)].clone()))
                    .collect(),
            )?;
            if image.is_zero() {
                continue;
            }
            let beta = m.form_to_endo(&PForm::basis(&[i, j])?)?;
            let scale = S::one() / (m.weight(i).clone() * m.weight(j).clone());
            out.push((beta.scale(&scale), m.form_to_endo(&image)?));
        }
        Ok(out)
    }

    /// `K(R) = sum_a rho(beta_a) rho(R beta_a) / |beta_a|^2` on 2-forms (endomorphism view).
    pub fn weitzenboeck_lambda2(&self, fiber: &FiberModel<S>, a: &Mat<S>) -> Result<Mat<S>> {
        let d = fiber.dim();
        let mut out = Mat::zeros(d, d);
        for (beta, r) in &self.terms {
            out = &out + &beta.commutator(&r.commutator(a));
        }
        Ok(out)
    }

    /// `K(R)` on forms of any degree through the derivation action.
    pub fn weitzenboeck_form(&self, fiber: &FiberModel<S>, phi: &PForm<S>) -> Result<PForm<S>> {
        if phi.degree() == 0 {
            return Ok(PForm::zero(0));
        }
        let m = fiber.metric();
        let mut out = PForm::zero(phi.degree());
        for (beta, r) in &self.terms {
            let inner = m.derivation(r, phi)?;
            out = out.add(&m.derivation(beta, &inner)?)?;
        }
        Ok(out)
    }

    /// Matrix of `K(R)` on the named bundle.
    ///
    /// Tangent: a `D x D` endomorphism. `Lambda2`: acts on pair coefficients.
    /// `E(side)`: acts on coordinates against the orthogonal basis of `E+-`.
    pub fn weitzenboeck(&self, fiber: &FiberModel<S>, bundle: Bundle) -> Result<Mat<S>> {
        let terms = &self.terms;
        let d = fiber.dim();
        let m = fiber.metric();
        match bundle {
            Bundle::Tangent => {
                let mut out = Mat::zeros(d, d);
                for (beta, r) in terms {
                    out = &out + &beta.matmul(r);
                }
                Ok(out)
            }
            Bundle::Lambda2 => {
                let n = self.pairs.len();
                let mut out = Mat::zeros(n, n);
                for (col, &(i, j)) in self.pairs.iter().enumerate() {
                    let a = m.form_to_endo(&PForm::basis(&[i, j])?)?;
                    let mut img = Mat::zeros(d, d);
                    for (beta, r) in terms {
                        img = &img + &beta.commutator(&r.commutator(&a));
                    }
                    let f = m.endo_to_form(&img);
                    for (mask, c) in f.terms() {
                        let mut it = bits(*mask);
                        let (k, l) = (it.next().expect("bit"), it.next().expect("bit"));
                        out[(self.pair_index(k, l).expect("pair"), col)] = c.clone();
                    }
                }
                Ok(out)
            }
            Bundle::E(side) => {
                let span = fiber.span(side);
                let mut columns = Vec::with_capacity(span.dim());
                for o in &span.orthogonal {
                    let mut img = Mat::zeros(d, d);
                    for (beta, r) in terms {
                        img = &img + &beta.commutator(&r.commutator(o));
                    }
                    let back = span.project(&img);
                    if back != img && (S::EXACT || crate::matrix::max_diff(&back, &img) > 1e-9) {
                        return Err(invalid("K(R) does not preserve the E-bundle"));
                    }
                    columns.push(span.coords(&img));
                }
                Ok(Mat::from_columns(span.dim(), &columns))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::GrassmannConfig;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn sign_is_negative_and_einstein() {
        let f = FiberModel::<Q>::new(GrassmannConfig::new(2, 2).unwrap()).unwrap();
        let c = CurvatureModel::new(&f).unwrap();
        assert_eq!(c.sign(), -1);
        assert_eq!(c.ricci(&f), Mat::identity(8).scale(&Q::new(1, 2)));
    }

    #[test]
    fn operator_is_symmetric() {
        let f = FiberModel::<Q>::new(GrassmannConfig::new(2, 3).unwrap()).unwrap();
        let c = CurvatureModel::new(&f).unwrap();
        assert!(c.operator_matrix().is_symmetric());
    }
}
