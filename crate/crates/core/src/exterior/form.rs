use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Highest degree any form may reach.
pub const MAX_DEGREE: usize = 5;

/// Sparse alternating form in the coframe dual to the fixed real basis.
///
/// An index set is a bitmask, so the underlying space has dimension at most 32.
/// Terms are kept sorted by mask with no explicit zeros.
#[derive(Clone, PartialEq)]
pub struct PForm<S: Scalar> {
    degree: usize,
    terms: Vec<(u32, S)>,
}

impl<S: Scalar> fmt::Debug for PForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PForm<{}>{{", self.degree)?;
        for (m, c) in &self.terms {
            write!(f, " {c}*e{:?}", bits(*m).collect::<Vec<_>>())?;
        }
        write!(f, " }}")
    }
}

/// Indices set in a mask, ascending.
pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Sign of `e_A ^ e_B` relative to `e_{A u B}`: parity of pairs `a > b`.
fn wedge_sign(a: u32, b: u32) -> bool {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        count += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    count % 2 == 1
}

fn normalize<S: Scalar>(mut raw: Vec<(u32, S)>) -> Vec<(u32, S)> {
    raw.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(u32, S)> = Vec::with_capacity(raw.len());
    for (m, c) in raw {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl<S: Scalar> PForm<S> {
    pub fn zero(degree: usize) -> Self {
        PForm { degree, terms: Vec::new() }
    }

    pub fn scalar(c: S) -> Self {
        PForm::from_terms(0, alloc::vec![(0, c)]).expect("degree 0")
    }

    /// `e^{i_1} ^ ... ^ e^{i_p}` in the given (not necessarily sorted) order.
    pub fn basis(indices: &[usize]) -> Result<Self> {
        let mut out = PForm::scalar(S::one());
        for &i in indices {
            if i >= 32 {
                return Err(domain("basis index beyond 32"));
            }
            out = out.wedge(&PForm { degree: 1, terms: alloc::vec![(1 << i, S::one())] })?;
        }
        Ok(out)
    }

    /// Build from `(mask, coefficient)` pairs; duplicates are summed.
    pub fn from_terms(degree: usize, raw: Vec<(u32, S)>) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        if raw.iter().any(|(m, _)| m.count_ones() as usize != degree) {
            return Err(domain("term mask does not match degree"));
        }
        Ok(PForm { degree, terms: normalize(raw) })
    }

    /// 1-form with the given coefficients.
    pub fn one_form(coeffs: &[S]) -> Self {
        let terms =
            coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (1u32 << i, c.clone())).collect();
        PForm { degree: 1, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(u32, S)] {
        &self.terms
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> S {
        match self.terms.binary_search_by_key(&mask, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    /// Value of a degree-0 form.
    pub fn as_scalar(&self) -> Result<S> {
        if self.degree != 0 {
            return Err(domain("not a degree-0 form"));
        }
        Ok(self.coeff(0))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return PForm::zero(self.degree);
        }
        PForm { degree: self.degree, terms: self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        PForm { degree: self.degree, terms: self.terms.iter().map(|(m, x)| (*m, -x.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &S::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &-S::one())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &S) -> Result<Self> {
        if other.is_zero() || c.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(PForm { degree: other.degree, terms: other.scale(c).terms });
        }
        if self.degree != other.degree {
            return Err(domain("adding forms of different degree"));
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            match (a, b) {
                (Some((ma, ca)), Some((mb, cb))) if ma == mb => {
                    let v = ca.clone() + cb.clone() * c.clone();
                    if !v.is_zero() {
                        out.push((*ma, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ma, ca)), Some((mb, _))) if ma < mb => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                (Some((ma, ca)), None) => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                (_, Some((mb, cb))) => {
                    out.push((*mb, cb.clone() * c.clone()));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(PForm { degree: self.degree, terms: out })
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let degree = self.degree + other.degree;
        if degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let v = x.clone() * y.clone();
                raw.push((a | b, if wedge_sign(*a, *b) { -v } else { v }));
            }
        }
        Ok(PForm { degree, terms: normalize(raw) })
    }

    /// Contraction with the `i`-th basis vector.
    pub fn contract_basis(&self, i: usize) -> Result<Self> {
        if self.degree == 0 {
            return Err(domain("cannot contract a degree-0 form"));
        }
        let bit = 1u32 << i;
        let below = bit - 1;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m & bit != 0)
            .map(|(m, c)| (m ^ bit, if (m & below).count_ones() % 2 == 1 { -c.clone() } else { c.clone() }))
            .collect();
        // removing one fixed bit keeps masks sorted
        Ok(PForm { degree: self.degree - 1, terms })
    }

    /// Interior product with the vector `sum_i x_i b_i`.
    pub fn vec_contract(&self, x: &[S]) -> Result<Self> {
        if self.degree == 0 {
            return Err(domain("cannot contract a degree-0 form"));
        }
        let mut raw = Vec::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut parity = false;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                if let Some(xi) = x.get(i) {
                    if !xi.is_zero() {
                        let v = c.clone() * xi.clone();
                        raw.push((m ^ (1 << i), if parity { -v } else { v }));
                    }
                }
                parity = !parity;
                rest &= rest - 1;
            }
        }
        Ok(PForm { degree: self.degree - 1, terms: normalize(raw) })
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Largest absolute coefficient of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.is_zero() && other.is_zero() {
            return 0.0;
        }
        match self.sub(other) {
            Ok(d) => d.max_abs(),
            Err(_) => f64::INFINITY,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn e(ix: &[usize]) -> PForm<Q> {
        PForm::basis(ix).unwrap()
    }

    #[test]
    fn disjoint_merge_sign() {
        let w = e(&[1, 2]).wedge(&e(&[3, 4])).unwrap();
        assert_eq!(w, e(&[1, 2, 3, 4]));
        assert_eq!(w.coeff(0b11110), Q::from(1));
        let v = e(&[3, 4]).wedge(&e(&[1, 2])).unwrap();
        assert_eq!(v, w);
        let u = e(&[2]).wedge(&e(&[1])).unwrap();
        assert_eq!(u.coeff(0b110), Q::from(-1));
    }

    #[test]
    fn rank_one_squares_vanish() {
        let b = e(&[1, 2]);
        assert!(b.wedge(&b).unwrap().is_zero());
        let odd = e(&[0]).add(&e(&[3])).unwrap();
        assert!(odd.wedge(&odd).unwrap().is_zero());
    }

    #[test]
    fn contraction_of_basis() {
        assert_eq!(e(&[1, 2]).contract_basis(1).unwrap(), e(&[2]));
        assert_eq!(e(&[1, 2]).contract_basis(2).unwrap(), e(&[1]).neg());
        let mut x = alloc::vec![Q::from(0); 5];
        x[1] = Q::from(1);
        assert_eq!(e(&[1, 2]).vec_contract(&x).unwrap(), e(&[2]));
        assert!(PForm::<Q>::scalar(Q::from(1)).contract_basis(0).is_err());
    }

    #[test]
    fn degree_overflow() {
        assert!(matches!(e(&[0, 1, 2]).wedge(&e(&[3, 4, 5])), Err(Error::UnsupportedDegree(6))));
    }
}
