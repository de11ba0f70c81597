//! Matrix Lie algebras: bases, brackets, invariant forms, Casimir operators
//! and the Freudenthal eigenvalue for type `A_{k-1}`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::matrix::{CMat, Coeff, Mat};
use crate::scalar::{Cx, Scalar};

/// Which algebra a [`LieBasis`] spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraTag {
    Su(usize),
    U(usize),
    /// `s(u(n+) + u(n-))` inside `su(n)`.
    Isotropy {
        n_plus: usize,
        n_minus: usize,
    },
    /// Off-diagonal block `m` of `su(n)`; not bracket-closed.
    MBlock {
        n_plus: usize,
        n_minus: usize,
    },
    /// The line spanned by the centre generator of `s(u(n+) + u(n-))`.
    Center {
        n_plus: usize,
        n_minus: usize,
    },
    /// `su(k)` placed in a diagonal block of `su(n)`.
    Embedded {
        inner: usize,
        n: usize,
        upper: bool,
    },
    /// Arbitrary recombination of another basis.
    Recombined,
}

fn cx<S: Scalar>(re: i64, im: i64) -> Cx<S> {
    Cx::new(S::from_i64(re), S::from_i64(im))
}

fn unit<S: Scalar>(k: usize, a: usize, b: usize, v: Cx<S>) -> CMat<S> {
    let mut m = Mat::zeros(k, k);
    m[(a, b)] = v;
    m
}

/// Real coordinates of a complex matrix: `(re, im)` interleaved row-major.
fn realify<S: Scalar>(m: &CMat<S>) -> Vec<S> {
    let mut out = Vec::with_capacity(2 * m.rows() * m.cols());
    for z in m.iter() {
        out.push(z.re.clone());
        out.push(z.im.clone());
    }
    out
}

/// Ordered basis of a real matrix Lie algebra.
#[derive(Clone, Debug)]
pub struct LieBasis<S: Scalar> {
    tag: AlgebraTag,
    size: usize,
    elems: Vec<CMat<S>>,
    rows: Vec<usize>,
    solver: Mat<S>,
}

impl<S: Scalar> LieBasis<S> {
    /// Validate and index a list of skew-Hermitian matrices.
    pub fn new(tag: AlgebraTag, elems: Vec<CMat<S>>) -> Result<Self> {
        let Some(first) = elems.first() else {
            return Err(invalid("empty basis"));
        };
        let size = first.rows();
        for e in &elems {
            if e.rows() != size || !e.is_square() {
                return Err(invalid("basis elements must be square of equal size"));
            }
            if !e.is_skew_hermitian() {
                return Err(invalid("basis element is not skew-Hermitian"));
            }
            if matches!(tag, AlgebraTag::Su(_) | AlgebraTag::Embedded { .. }) && !e.trace().is_zero() {
                return Err(invalid("su basis element is not traceless"));
            }
        }
        let columns: Vec<Vec<S>> = elems.iter().map(realify).collect();
        let len = 2 * size * size;
        let v = Mat::from_columns(len, &columns);
        let (rank, rows) = v.transpose().row_echelon_pivots();
        if rank < elems.len() {
            return Err(invalid("basis elements are linearly dependent"));
        }
        let square = Mat::from_fn(rank, rank, |r, c| columns[c][rows[r]].clone());
        let solver = square.inverse().ok_or_else(|| invalid("basis elements are linearly dependent"))?;
        Ok(LieBasis { tag, size, elems, rows, solver })
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    /// Matrix size of the elements.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[CMat<S>] {
        &self.elems
    }

    /// Coordinates of `m` in this basis, or `None` if `m` is outside the span.
    pub fn coords(&self, m: &CMat<S>) -> Option<Vec<S>> {
        if m.rows() != self.size || m.cols() != self.size {
            return None;
        }
        let flat = realify(m);
        let rhs: Vec<S> = self.rows.iter().map(|&r| flat[r].clone()).collect();
        let c = self.solver.matvec(&rhs);
        let back = self.combine(&c);
        let err = crate::matrix::max_diff(&back, m);
        let tol = if S::EXACT { 0.0 } else { 1e-9 * m.max_modulus().max(1.0) };
        if err > tol || (S::EXACT && back != *m) {
            return None;
        }
        Some(c)
    }

    /// `sum_i c_i b_i`.
    pub fn combine(&self, c: &[S]) -> CMat<S> {
        let mut out = Mat::zeros(self.size, self.size);
        for (ci, b) in c.iter().zip(&self.elems) {
            if !ci.is_zero() {
                out = &out + &b.scale_real(ci);
            }
        }
        out
    }

    /// `ad(x)` restricted to the span, as a matrix in this basis.
    pub fn ad_matrix(&self, x: &CMat<S>) -> Result<Mat<S>> {
        let mut columns = Vec::with_capacity(self.dim());
        for b in &self.elems {
            let br = bracket(x, b)?;
            let c = self
                .coords(&br)
                .ok_or_else(|| Error::NotASubalgebra(format!("bracket leaves the span of {:?}", self.tag)))?;
            columns.push(c);
        }
        Ok(Mat::from_columns(self.dim(), &columns))
    }

    /// Adjoint representation: `ad(b_i)` for every basis element.
    pub fn structure(&self) -> Result<Vec<Mat<S>>> {
        self.elems.iter().map(|b| self.ad_matrix(b)).collect()
    }

    /// New basis `b'_j = sum_i u_ij b_i`; `u` must be invertible.
    pub fn recombine(&self, u: &Mat<S>) -> Result<Self> {
        if u.rows() != self.dim() || !u.is_square() {
            return Err(invalid("recombination matrix has the wrong shape"));
        }
        let elems = (0..u.cols()).map(|j| self.combine(&u.column(j))).collect();
        LieBasis::new(AlgebraTag::Recombined, elems)
    }
}

/// `XY - YX`.
pub fn bracket<T: Coeff>(x: &Mat<T>, y: &Mat<T>) -> Result<Mat<T>> {
    if !x.is_square() || !y.is_square() || x.rows() != y.rows() {
        return Err(invalid("bracket needs square matrices of equal size"));
    }
    Ok(x.commutator(y))
}

/// Standard basis of `su(k)`: off-diagonal pairs, then `i(E_aa - E_{a+1,a+1})`.
pub fn su_basis<S: Scalar>(k: usize) -> Result<LieBasis<S>> {
    if k < 2 {
        return Err(invalid(format!("su({k}) needs k >= 2")));
    }
    let mut elems = Vec::with_capacity(k * k - 1);
    for a in 0..k {
        for b in a + 1..k {
            elems.push(&unit(k, a, b, cx(1, 0)) - &unit(k, b, a, cx(1, 0)));
            elems.push(&unit(k, a, b, cx(0, 1)) + &unit(k, b, a, cx(0, 1)));
        }
    }
    for a in 0..k - 1 {
        elems.push(&unit(k, a, a, cx(0, 1)) - &unit(k, a + 1, a + 1, cx(0, 1)));
    }
    LieBasis::new(AlgebraTag::Su(k), elems)
}

/// Trace-orthogonal basis of `su(k)`: off-diagonal pairs, then
/// `i(E_11 + ... + E_jj - j E_{j+1,j+1})`.
pub fn su_orthogonal_basis<S: Scalar>(k: usize) -> Result<LieBasis<S>> {
    if k < 2 {
        return Err(invalid(format!("su({k}) needs k >= 2")));
    }
    let mut elems = Vec::with_capacity(k * k - 1);
    for a in 0..k {
        for b in a + 1..k {
            elems.push(&unit(k, a, b, cx(1, 0)) - &unit(k, b, a, cx(1, 0)));
            elems.push(&unit(k, a, b, cx(0, 1)) + &unit(k, b, a, cx(0, 1)));
        }
    }
    for j in 1..k {
        let mut m = Mat::zeros(k, k);
        for a in 0..j {
            m[(a, a)] = cx(0, 1);
        }
        m[(j, j)] = cx(0, -(j as i64));
        elems.push(m);
    }
    LieBasis::new(AlgebraTag::Su(k), elems)
}

/// Basis of `u(k)`: the `su(k)` basis followed by `i I`.
pub fn u_basis<S: Scalar>(k: usize) -> Result<LieBasis<S>> {
    let mut elems = su_basis::<S>(k)?.elems;
    elems.push(Mat::identity(k).scale(&cx(0, 1)));
    LieBasis::new(AlgebraTag::U(k), elems)
}

/// Cayley transform `(I - A)^{-1} (I + A)`, unitary for skew-Hermitian `A`.
pub fn cayley<S: Scalar>(a: &CMat<S>) -> Result<CMat<S>> {
    if !a.is_square() || !a.is_skew_hermitian() {
        return Err(invalid("Cayley transform needs a skew-Hermitian matrix"));
    }
    let id = Mat::identity(a.rows());
    let inv = (&id - a).inverse().ok_or_else(|| invalid("I - A is singular"))?;
    Ok(inv.matmul(&(&id + a)))
}

/// Where [`block_embed`] places things inside `su(n)`.
#[derive(Clone, Copy, Debug)]
pub enum EmbedSlot<'a, S: Scalar> {
    Upper(&'a LieBasis<S>),
    Lower(&'a LieBasis<S>),
    MBlock { n_plus: usize },
    Center { n_plus: usize },
}

/// The centre generator `i diag(n-, ..., n-, -n+, ..., -n+)`.
pub fn xi<S: Scalar>(n_plus: usize, n_minus: usize) -> CMat<S> {
    let n = n_plus + n_minus;
    let mut m = Mat::zeros(n, n);
    for a in 0..n {
        m[(a, a)] = if a < n_plus { cx(0, n_minus as i64) } else { cx(0, -(n_plus as i64)) };
    }
    m
}

/// Embed `m`-matrices `M` (size `n+ x n-`) as `[[0, M], [-M^*, 0]]`.
pub fn m_embed<S: Scalar>(m: &CMat<S>) -> CMat<S> {
    let (p, q) = (m.rows(), m.cols());
    let n = p + q;
    let mut out = Mat::zeros(n, n);
    for a in 0..p {
        for b in 0..q {
            out[(a, p + b)] = m[(a, b)].clone();
            out[(p + b, a)] = -m[(a, b)].conj();
        }
    }
    out
}

pub fn block_embed<S: Scalar>(n: usize, slot: EmbedSlot<'_, S>) -> Result<LieBasis<S>> {
    match slot {
        EmbedSlot::Upper(inner) | EmbedSlot::Lower(inner) => {
            let k = inner.size();
            if k > n {
                return Err(invalid(format!("block of size {k} does not fit in {n}x{n}")));
            }
            let upper = matches!(slot, EmbedSlot::Upper(_));
            let off = if upper { 0 } else { n - k };
            let elems = inner
                .elems()
                .iter()
                .map(|e| {
                    let mut m = Mat::zeros(n, n);
                    for a in 0..k {
                        for b in 0..k {
                            m[(off + a, off + b)] = e[(a, b)].clone();
                        }
                    }
                    m
                })
                .collect();
            LieBasis::new(AlgebraTag::Embedded { inner: k, n, upper }, elems)
        }
        EmbedSlot::MBlock { n_plus } => {
            if n_plus == 0 || n_plus >= n {
                return Err(invalid("m-block needs 0 < n+ < n"));
            }
            let n_minus = n - n_plus;
            let mut elems = Vec::with_capacity(2 * n_plus * n_minus);
            for p in 0..n_plus {
                for q in 0..n_minus {
                    for v in [cx(1, 0), cx(0, 1)] {
                        let mut m = Mat::zeros(n_plus, n_minus);
                        m[(p, q)] = v;
                        elems.push(m_embed(&m));
                    }
                }
            }
            LieBasis::new(AlgebraTag::MBlock { n_plus, n_minus }, elems)
        }
        EmbedSlot::Center { n_plus } => {
            if n_plus == 0 || n_plus >= n {
                return Err(invalid("centre needs 0 < n+ < n"));
            }
            let n_minus = n - n_plus;
            LieBasis::new(AlgebraTag::Center { n_plus, n_minus }, alloc::vec![xi(n_plus, n_minus)])
        }
    }
}

/// Which invariant form a [`BilinearGram`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormTag {
    Killing,
    Trace,
    Lambda2,
    Scaled,
}

/// Gram matrix of a symmetric bilinear form in a given basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearGram<S: Scalar> {
    pub tag: FormTag,
    pub gram: Mat<S>,
}

impl<S: Scalar> BilinearGram<S> {
    pub fn new(tag: FormTag, gram: Mat<S>) -> Result<Self> {
        if !gram.is_square() {
            return Err(invalid("gram matrix must be square"));
        }
        Ok(BilinearGram { tag, gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn scaled(&self, c: &S) -> Self {
        BilinearGram { tag: FormTag::Scaled, gram: self.gram.scale(c) }
    }

    /// Evaluate on two coordinate vectors.
    pub fn eval(&self, x: &[S], y: &[S]) -> S {
        let gy = self.gram.matvec(y);
        x.iter().zip(gy).map(|(a, b)| a.clone() * b).sum()
    }

    /// Sign test through leading principal minors.
    pub fn is_negative_definite(&self) -> bool {
        self.gram.is_symmetric()
            && self.gram.leading_minors().iter().enumerate().all(|(k, d)| {
                let z = S::zero();
                if k % 2 == 0 {
                    *d < z
                } else {
                    *d > z
                }
            })
    }

    /// `gram([Z,X],Y) + gram(X,[Z,Y])` for every basis triple.
    pub fn invariance_residuals(&self, basis: &LieBasis<S>) -> Result<Vec<S>> {
        if basis.dim() != self.dim() {
            return Err(invalid("gram and basis dimensions differ"));
        }
        let ads = basis.structure()?;
        let mut out = Vec::new();
        for ad in &ads {
            // column j of ad is [Z, b_j]; invariance is ad^T G + G ad = 0
            let r = &ad.transpose().matmul(&self.gram) + &self.gram.matmul(ad);
            out.extend(r.iter().cloned());
        }
        Ok(out)
    }
}

/// Gram matrix of the Killing or trace form.
pub fn bilinear_gram<S: Scalar>(basis: &LieBasis<S>, tag: FormTag) -> Result<BilinearGram<S>> {
    let d = basis.dim();
    let gram = match tag {
        FormTag::Killing => {
            let ads = basis.structure()?;
            Mat::from_fn(d, d, |i, j| ads[i].trace_product(&ads[j]))
        }
        FormTag::Trace => {
            let e = basis.elems();
            Mat::from_fn(d, d, |i, j| e[i].trace_product(&e[j]).re)
        }
        FormTag::Lambda2 | FormTag::Scaled => {
            return Err(invalid("only killing and trace forms are intrinsic to a basis"));
        }
    };
    BilinearGram::new(tag, gram)
}

/// `-sum_ij (G^-1)_ij rho(b_i) rho(b_j)`.
pub fn casimir_operator<T: Coeff>(rep: &[Mat<T>], gram: &BilinearGram<T::Real>) -> Result<Mat<T>> {
    if rep.len() != gram.dim() || rep.is_empty() {
        return Err(invalid("representation and gram sizes differ"));
    }
    let size = rep[0].rows();
    if rep.iter().any(|r| r.rows() != size || !r.is_square()) {
        return Err(invalid("representation matrices must be square of equal size"));
    }
    let mut out = Mat::zeros(size, size);
    if gram.gram.is_diagonal() {
        for (i, r) in rep.iter().enumerate() {
            let g = &gram.gram[(i, i)];
            if g.is_zero() {
                return Err(Error::DegenerateForm);
            }
            let w = T::from_real(T::Real::one() / g.clone());
            out = &out - &r.matmul(r).scale(&w);
        }
        return Ok(out);
    }
    let inv = gram.gram.inverse().ok_or(Error::DegenerateForm)?;
    for (i, ri) in rep.iter().enumerate() {
        for (j, rj) in rep.iter().enumerate() {
            let c = &inv[(i, j)];
            if c.is_zero() {
                continue;
            }
            out = &out - &ri.matmul(rj).scale(&T::from_real(c.clone()));
        }
    }
    Ok(out)
}

/// Exterior power `Lambda^j` of the defining representation.
pub fn exterior_power_rep<S: Scalar>(basis: &LieBasis<S>, j: usize) -> Result<Vec<CMat<S>>> {
    let k = basis.size();
    if j == 0 || j > k {
        return Err(invalid(format!("exterior power {j} of C^{k}")));
    }
    let subsets: Vec<u32> = (0u32..(1 << k)).filter(|m| m.count_ones() as usize == j).collect();
    let index = |m: u32| subsets.binary_search(&m).ok();
    let dim = subsets.len();
    let rep = basis
        .elems()
        .iter()
        .map(|x| {
            let mut out: CMat<S> = Mat::zeros(dim, dim);
            for (col, &s) in subsets.iter().enumerate() {
                for src in (0..k).filter(|b| s >> b & 1 == 1) {
                    for r in 0..k {
                        let v = &x[(r, src)];
                        if v.is_zero() {
                            continue;
                        }
                        if r == src {
                            out[(col, col)] = out[(col, col)].clone() + v.clone();
                            continue;
                        }
                        if s >> r & 1 == 1 {
                            continue;
                        }
                        let t = (s & !(1 << src)) | (1 << r);
                        let (lo, hi) = if r < src { (r, src) } else { (src, r) };
                        let between = (s & !(1 << src)) & ((1u32 << hi) - 1) & !((1u32 << (lo + 1)) - 1);
                        let sign = if between.count_ones().is_multiple_of(2) { v.clone() } else { -v.clone() };
                        let row = index(t).expect("subset");
                        out[(row, col)] = out[(row, col)].clone() + sign;
                    }
                }
            }
            out
        })
        .collect();
    Ok(rep)
}

/// Weight of `A_{k-1}` in epsilon coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector<S: Scalar> {
    pub coords: Vec<S>,
}

impl<S: Scalar> WeightVector<S> {
    /// `omega_j = sum_{i <= j} eps_i - (j/k) sum eps`.
    pub fn fundamental(k: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= k {
            return Err(invalid(format!("fundamental weight {j} of A_{}", k - 1)));
        }
        let shift = S::ratio(j as i64, k as i64);
        let coords = (0..k).map(|i| if i < j { S::one() - shift.clone() } else { -shift.clone() }).collect();
        Ok(WeightVector { coords })
    }

    /// `eps_1 - eps_k`, the highest weight of the adjoint representation.
    pub fn highest_root(k: usize) -> Self {
        let coords = (0..k)
            .map(|i| {
                if i == 0 {
                    S::one()
                } else if i == k - 1 {
                    -S::one()
                } else {
                    S::zero()
                }
            })
            .collect();
        WeightVector { coords }
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }
}

/// `Q*(gamma, gamma + 2 delta)` for `Q = scale * (-B)` on `su(k)`.
pub fn freudenthal_eigenvalue<S: Scalar>(k: usize, gamma: &WeightVector<S>, scale: &S) -> Result<S> {
    if k < 2 || gamma.coords.len() != k {
        return Err(invalid("weight length must equal k >= 2"));
    }
    if !gamma.is_dominant() {
        return Err(Error::InvalidWeight(format!("{:?}", gamma.coords)));
    }
    if scale.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let kk = S::from_i64(k as i64);
    let shifted: Vec<S> =
        gamma.coords.iter().enumerate().map(|(i, g)| g.clone() + S::from_i64(k as i64 - 1 - 2 * i as i64)).collect();
    let dot: S = gamma.coords.iter().zip(&shifted).map(|(a, b)| a.clone() * b.clone()).sum();
    let sa: S = gamma.coords.iter().cloned().sum();
    let sb: S = shifted.iter().cloned().sum();
    let val = (dot - sa * sb / kk.clone()) / (S::from_i64(2) * kk);
    Ok(val / scale.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn su_dimensions() {
        assert_eq!(su_basis::<Q>(2).unwrap().dim(), 3);
        assert_eq!(su_basis::<Q>(3).unwrap().dim(), 8);
        assert!(su_basis::<Q>(1).is_err());
    }

    #[test]
    fn killing_of_su2_diag() {
        let b = su_basis::<Q>(2).unwrap();
        let g = bilinear_gram(&b, FormTag::Killing).unwrap();
        // the diagonal element i diag(1,-1) is the last basis vector
        assert_eq!(g.gram[(2, 2)], Q::from(-8));
    }

    #[test]
    fn exterior_power_top_is_trace() {
        let b = su_basis::<Q>(3).unwrap();
        let rep = exterior_power_rep(&b, 3).unwrap();
        for r in rep {
            assert!(r.is_zero());
        }
        let rep1 = exterior_power_rep(&b, 1).unwrap();
        assert_eq!(rep1[0], b.elems()[0]);
    }

    #[test]
    fn exterior_power_is_a_representation() {
        let b = su_basis::<Q>(4).unwrap();
        let rep = exterior_power_rep(&b, 2).unwrap();
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let br = bracket(&b.elems()[i], &b.elems()[j]).unwrap();
                let c = b.coords(&br).unwrap();
                let mut lhs = Mat::zeros(6, 6);
                for (ck, rk) in c.iter().zip(&rep) {
                    lhs = &lhs + &rk.scale_real(ck);
                }
                assert_eq!(lhs, rep[i].commutator(&rep[j]));
            }
        }
    }

    #[test]
    fn non_dominant_weight_rejected() {
        let w = WeightVector { coords: alloc::vec![Q::from(-1), Q::from(1)] };
        assert!(matches!(freudenthal_eigenvalue(2, &w, &Q::from(1)), Err(Error::InvalidWeight(_))));
    }
}
