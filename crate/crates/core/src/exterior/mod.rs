//! Sparse exterior algebra over the realified isotropy module.

mod form;
mod omega;

pub use form::{bits, PForm, MAX_DEGREE};
pub use omega::{build_omega_forms, omega_from_basis, OmegaForms};

use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

/// Norms of an orthogonal frame `b_i` and the dual weights `w_i = 1/g(b_i, b_i)`.
///
/// Forms are stored in the coframe `e^i` dual to `b_i`, so contraction with
/// a vector never needs the metric; everything else goes through here.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameMetric<S: Scalar> {
    norms: Vec<S>,
    weights: Vec<S>,
}

impl<S: Scalar> FrameMetric<S> {
    pub fn new(norms: Vec<S>) -> Result<Self> {
        if norms.iter().any(|n| *n <= S::zero()) {
            return Err(domain("frame norms must be positive"));
        }
        let weights = norms.iter().map(|n| S::one() / n.clone()).collect();
        Ok(FrameMetric { norms, weights })
    }

    pub fn dim(&self) -> usize {
        self.norms.len()
    }

    /// `g(b_i, b_i)`.
    pub fn norm_sq(&self, i: usize) -> &S {
        &self.norms[i]
    }

    /// `1 / g(b_i, b_i)`.
    pub fn weight(&self, i: usize) -> &S {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// Product of the weights over a mask.
    pub fn mask_weight(&self, mask: u32) -> S {
        let mut w = S::one();
        for i in bits(mask) {
            w *= self.weights[i].clone();
        }
        w
    }

    /// `g(x, y)` for coordinate vectors.
    pub fn inner_vec(&self, x: &[S], y: &[S]) -> S {
        x.iter().zip(y).zip(&self.norms).map(|((a, b), g)| a.clone() * b.clone() * g.clone()).sum()
    }

    /// The 1-form `g(x, .)`.
    pub fn flat(&self, x: &[S]) -> PForm<S> {
        let c: Vec<S> = x.iter().zip(&self.norms).map(|(a, g)| a.clone() * g.clone()).collect();
        PForm::one_form(&c)
    }

    /// The vector `v` with `g(v, .) = phi`.
    pub fn sharp(&self, phi: &PForm<S>) -> Result<Vec<S>> {
        if phi.degree() != 1 {
            return Err(domain("sharp needs a 1-form"));
        }
        let mut x = alloc::vec![S::zero(); self.dim()];
        for (m, c) in phi.terms() {
            let i = m.trailing_zeros() as usize;
            x[i] = c.clone() * self.weights[i].clone();
        }
        Ok(x)
    }

    /// Inner product that makes an orthonormal coframe orthonormal in every degree.
    pub fn graded_inner(&self, phi: &PForm<S>, psi: &PForm<S>) -> Result<S> {
        if phi.degree() != psi.degree() {
            return Err(domain("graded inner product of different degrees"));
        }
        let (a, b) = (phi.terms(), psi.terms());
        let (mut i, mut j) = (0, 0);
        let mut acc = S::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    acc += a[i].1.clone() * b[j].1.clone() * self.mask_weight(a[i].0);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(acc)
    }

    pub fn norm_sq_form(&self, phi: &PForm<S>) -> S {
        self.graded_inner(phi, phi).expect("same degree")
    }

    /// `g`-skew test: `g(Ax, y) = -g(x, Ay)`.
    pub fn is_skew(&self, a: &Mat<S>) -> bool {
        let d = self.dim();
        a.rows() == d
            && a.cols() == d
            && (0..d).all(|i| {
                (i..d).all(|j| {
                    (self.norms[i].clone() * a[(i, j)].clone()).near(&-(self.norms[j].clone() * a[(j, i)].clone()))
                })
            })
    }

    pub fn is_symmetric(&self, a: &Mat<S>) -> bool {
        let d = self.dim();
        a.rows() == d
            && a.cols() == d
            && (0..d).all(|i| {
                (i + 1..d).all(|j| {
                    (self.norms[i].clone() * a[(i, j)].clone()).near(&(self.norms[j].clone() * a[(j, i)].clone()))
                })
            })
    }

    /// Metric adjoint `A*` with `g(Ax, y) = g(x, A*y)`.
    pub fn adjoint(&self, a: &Mat<S>) -> Mat<S> {
        let d = self.dim();
        Mat::from_fn(d, d, |i, j| a[(j, i)].clone() * self.norms[j].clone() * self.weights[i].clone())
    }

    /// 2-form `alpha(x, y) = g(A x, y)` of an endomorphism (skew part only survives).
    pub fn endo_to_form(&self, a: &Mat<S>) -> PForm<S> {
        let d = self.dim();
        let mut raw = Vec::new();
        let half = S::one() / S::from_i64(2);
        for i in 0..d {
            for j in i + 1..d {
                // alpha_ij = g(A b_i, b_j) - g(A b_j, b_i), halved
                let v = (a[(j, i)].clone() * self.norms[j].clone() - a[(i, j)].clone() * self.norms[i].clone())
                    * half.clone();
                if !v.is_zero() {
                    raw.push(((1u32 << i) | (1u32 << j), v));
                }
            }
        }
        PForm::from_terms(2, raw).expect("degree 2")
    }

    /// Skew endomorphism of a 2-form.
    pub fn form_to_endo(&self, phi: &PForm<S>) -> Result<Mat<S>> {
        if phi.degree() != 2 {
            return Err(domain("endomorphism view needs a 2-form"));
        }
        let d = self.dim();
        let mut a = Mat::zeros(d, d);
        for (m, c) in phi.terms() {
            let mut it = bits(*m);
            let (i, j) = (it.next().expect("two bits"), it.next().expect("two bits"));
            a[(j, i)] = c.clone() * self.weights[j].clone();
            a[(i, j)] = -c.clone() * self.weights[i].clone();
        }
        Ok(a)
    }

    /// Contraction of a 4-form with the bivector dual to the 2-form `alpha`:
    /// `sum_{i<j} alpha(b_i, b_j) w_i w_j  e_j -| e_i -| phi`.
    pub fn form_contract(&self, alpha: &PForm<S>, phi: &PForm<S>) -> Result<PForm<S>> {
        if alpha.degree() != 2 || phi.degree() < 2 {
            return Err(domain("form_contract needs a 2-form and a form of degree >= 2"));
        }
        let mut out = PForm::zero(phi.degree() - 2);
        for (m, c) in alpha.terms() {
            let mut it = bits(*m);
            let (i, j) = (it.next().expect("two bits"), it.next().expect("two bits"));
            let w = c.clone() * self.weights[i].clone() * self.weights[j].clone();
            let inner = phi.contract_basis(i)?.contract_basis(j)?;
            out = out.add_scaled(&inner, &w)?;
        }
        Ok(out)
    }

    /// `form_contract` for a skew endomorphism.
    pub fn endo_contract(&self, a: &Mat<S>, phi: &PForm<S>) -> Result<PForm<S>> {
        if !self.is_skew(a) {
            return Err(domain("form_contract needs a skew endomorphism"));
        }
        self.form_contract(&self.endo_to_form(a), phi)
    }

    /// `h_*(phi) = sum_i w_i (h b_i)^flat ^ (b_i -| phi)`.
    pub fn derivation(&self, h: &Mat<S>, phi: &PForm<S>) -> Result<PForm<S>> {
        if phi.degree() > MAX_DEGREE {
            return Err(crate::Error::UnsupportedDegree(phi.degree()));
        }
        let d = self.dim();
        if h.rows() != d || h.cols() != d {
            return Err(domain("endomorphism has the wrong size"));
        }
        if phi.degree() == 0 {
            return Ok(PForm::zero(0));
        }
        let mut raw = Vec::new();
        for i in 0..d {
            let inner = phi.contract_basis(i)?;
            if inner.is_zero() {
                continue;
            }
            for k in 0..d {
                let hk = &h[(k, i)];
                if hk.is_zero() {
                    continue;
                }
                let c = hk.clone() * self.norms[k].clone() * self.weights[i].clone();
                let bit = 1u32 << k;
                for (m, v) in inner.terms() {
                    if m & bit != 0 {
                        continue;
                    }
                    let val = c.clone() * v.clone();
                    let neg = (m & (bit - 1)).count_ones() % 2 == 1;
                    raw.push((m | bit, if neg { -val } else { val }));
                }
            }
        }
        PForm::from_terms(phi.degree(), raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn unit_metric(d: usize) -> FrameMetric<Q> {
        FrameMetric::new(alloc::vec![Q::from(1); d]).unwrap()
    }

    #[test]
    fn unit_frame_semantics() {
        let m = unit_metric(5);
        let e = PForm::<Q>::basis(&[0, 1, 2, 3]).unwrap();
        assert_eq!(m.graded_inner(&e, &e).unwrap(), Q::from(1));
    }

    #[test]
    fn rank_one_wedgein_identity() {
        // alpha = beta = gamma = e1 ^ e2: both sides vanish
        let m = unit_metric(4);
        let b = PForm::<Q>::basis(&[0, 1]).unwrap();
        let lhs = m.form_contract(&b, &b.wedge(&b).unwrap()).unwrap();
        assert!(lhs.is_zero());
        let a = m.form_to_endo(&b).unwrap();
        let rhs = &(&a.scale(&Q::from(2)) + &a.matmul(&a).matmul(&a).scale(&Q::from(2))) + &Mat::zeros(4, 4);
        assert!(rhs.is_zero());
    }

    #[test]
    fn derivation_of_identity_doubles_a_two_form() {
        let m = FrameMetric::new(alloc::vec![Q::from(3), Q::from(5), Q::from(7)]).unwrap();
        let phi = PForm::<Q>::basis(&[0, 2]).unwrap().add(&PForm::basis(&[1, 2]).unwrap()).unwrap();
        let out = m.derivation(&Mat::identity(3), &phi).unwrap();
        assert_eq!(out, phi.scale(&Q::from(2)));
    }

    #[test]
    fn endo_round_trip_with_uneven_norms() {
        let m = FrameMetric::new(alloc::vec![Q::from(2), Q::from(3), Q::from(5)]).unwrap();
        let phi = PForm::<Q>::from_terms(2, alloc::vec![(0b011, Q::from(4)), (0b110, Q::new(-1, 3))]).unwrap();
        let a = m.form_to_endo(&phi).unwrap();
        assert!(m.is_skew(&a));
        assert_eq!(m.endo_to_form(&a), phi);
    }
}
