//! The isotropy module `m` at the base point: frame, metric, complex
//! structure, the splitting of `Lambda^{1,1}` and the operators `C+-`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{domain, invalid, Error, Result};
use crate::exterior::{FrameMetric, PForm};
use crate::lie::{self, block_embed, su_basis, EmbedSlot, LieBasis};
use crate::matrix::{CMat, Mat};
use crate::scalar::{Cx, Scalar};

/// Shape `(n+, n-)` of the Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassmannConfig {
    n_plus: usize,
    n_minus: usize,
}

impl GrassmannConfig {
    pub fn new(n_plus: usize, n_minus: usize) -> Result<Self> {
        if n_plus < 2 || n_minus < 2 {
            return Err(invalid(format!("need n+, n- >= 2, got ({n_plus}, {n_minus})")));
        }
        Ok(GrassmannConfig { n_plus, n_minus })
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn n(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// Real dimension `2 n+ n-`.
    pub fn real_dim(&self) -> usize {
        2 * self.n_plus * self.n_minus
    }

    pub fn einstein_constant<S: Scalar>(&self) -> S {
        S::ratio(1, 2)
    }

    pub fn side_dim(&self, side: Side) -> usize {
        match side {
            Side::Plus => self.n_plus,
            Side::Minus => self.n_minus,
        }
    }

    /// Real index of `E_pq` (`imag = false`) or `i E_pq`.
    pub fn index(&self, p: usize, q: usize, imag: bool) -> usize {
        2 * (p * self.n_minus + q) + imag as usize
    }
}

/// One of the two factors `su(n+)`, `su(n-)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Side::Plus => "+",
            Side::Minus => "-",
        }
    }
}

/// An element of `m` as an `n+ x n-` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropyVector<S: Scalar> {
    mat: CMat<S>,
}

impl<S: Scalar> IsotropyVector<S> {
    pub fn new(cfg: &GrassmannConfig, mat: CMat<S>) -> Result<Self> {
        if mat.rows() != cfg.n_plus || mat.cols() != cfg.n_minus {
            return Err(invalid("isotropy vector has the wrong shape"));
        }
        Ok(IsotropyVector { mat })
    }

    pub fn from_coords(cfg: &GrassmannConfig, x: &[S]) -> Result<Self> {
        if x.len() != cfg.real_dim() {
            return Err(invalid("coordinate vector has the wrong length"));
        }
        let mat = Mat::from_fn(cfg.n_plus, cfg.n_minus, |p, q| {
            Cx::new(x[cfg.index(p, q, false)].clone(), x[cfg.index(p, q, true)].clone())
        });
        Ok(IsotropyVector { mat })
    }

    /// The `m`-block of an `su(n)` matrix.
    pub fn from_su(cfg: &GrassmannConfig, x: &CMat<S>) -> Result<Self> {
        if x.rows() != cfg.n() || !x.is_square() {
            return Err(invalid("expected an n x n matrix"));
        }
        Ok(IsotropyVector { mat: x.block(0, cfg.n_plus, cfg.n_plus, cfg.n_minus) })
    }

    pub fn mat(&self) -> &CMat<S> {
        &self.mat
    }

    pub fn coords(&self) -> Vec<S> {
        let mut x = Vec::with_capacity(2 * self.mat.rows() * self.mat.cols());
        for z in self.mat.iter() {
            x.push(z.re.clone());
            x.push(z.im.clone());
        }
        x
    }

    /// `[[0, M], [-M^*, 0]]` in `su(n)`.
    pub fn embed(&self) -> CMat<S> {
        lie::m_embed(&self.mat)
    }
}

/// `g(M, N) = 4n Re tr(M N^*)`.
pub fn isotropy_metric<S: Scalar>(cfg: &GrassmannConfig, x: &IsotropyVector<S>, y: &IsotropyVector<S>) -> S {
    let t = x.mat.trace_product(&y.mat.conj_transpose()).re;
    S::from_i64(4 * cfg.n() as i64) * t
}

/// Real endomorphism `M -> a M - M b` of `m`.
pub fn k_action<S: Scalar>(cfg: &GrassmannConfig, a: &CMat<S>, b: &CMat<S>) -> Result<Mat<S>> {
    let (p, q) = (cfg.n_plus, cfg.n_minus);
    if a.rows() != p || a.cols() != p || b.rows() != q || b.cols() != q {
        return Err(invalid("k_action blocks have the wrong size"));
    }
    let d = cfg.real_dim();
    let mut out = Mat::zeros(d, d);
    let put = |out: &mut Mat<S>, row_p: usize, row_q: usize, col: usize, v: Cx<S>| {
        let re = cfg.index(row_p, row_q, false);
        out[(re, col)] = out[(re, col)].clone() + v.re;
        out[(re + 1, col)] = out[(re + 1, col)].clone() + v.im;
    };
    for pp in 0..p {
        for qq in 0..q {
            for imag in [false, true] {
                let col = cfg.index(pp, qq, imag);
                let c = if imag { Cx::new(S::zero(), S::one()) } else { Cx::new(S::one(), S::zero()) };
                for r in 0..p {
                    let v = &a[(r, pp)];
                    if !v.re.is_zero() || !v.im.is_zero() {
                        put(&mut out, r, qq, col, v.clone() * c.clone());
                    }
                }
                for s in 0..q {
                    let v = &b[(qq, s)];
                    if !v.re.is_zero() || !v.im.is_zero() {
                        put(&mut out, pp, s, col, -(c.clone() * v.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Spanning set of a subspace of skew endomorphisms with a `lam2`-orthogonal basis.
#[derive(Clone, Debug)]
pub struct SpanSet<S: Scalar> {
    pub spanning: Vec<Mat<S>>,
    pub orthogonal: Vec<Mat<S>>,
    pub norms: Vec<S>,
}

impl<S: Scalar> SpanSet<S> {
    /// Gram-Schmidt in the given order; dependent elements are dropped.
    pub fn new(spanning: Vec<Mat<S>>, order: &[usize]) -> Self {
        let mut orthogonal: Vec<Mat<S>> = Vec::new();
        let mut norms: Vec<S> = Vec::new();
        for &k in order {
            let mut v = spanning[k].clone();
            for (o, n) in orthogonal.iter().zip(&norms) {
                let c = lam2_raw(&v, o) / n.clone();
                if !c.is_zero() {
                    v = &v - &o.scale(&c);
                }
            }
            let n = lam2_raw(&v, &v);
            let tol = if S::EXACT { 0.0 } else { 1e-10 };
            if n.to_f64() > tol && !n.is_zero() {
                orthogonal.push(v);
                norms.push(n);
            }
        }
        SpanSet { spanning, orthogonal, norms }
    }

    pub fn dim(&self) -> usize {
        self.orthogonal.len()
    }

    /// `lam2`-orthogonal projection.
    pub fn project(&self, a: &Mat<S>) -> Mat<S> {
        let d = a.rows();
        let mut out = Mat::zeros(d, d);
        for (o, n) in self.orthogonal.iter().zip(&self.norms) {
            let c = lam2_raw(a, o) / n.clone();
            if !c.is_zero() {
                out = &out + &o.scale(&c);
            }
        }
        out
    }

    /// Coordinates against the orthogonal basis.
    pub fn coords(&self, a: &Mat<S>) -> Vec<S> {
        self.orthogonal.iter().zip(&self.norms).map(|(o, n)| lam2_raw(a, o) / n.clone()).collect()
    }
}

pub(crate) fn lam2_raw<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> S {
    -a.trace_product(b) / S::from_i64(2)
}

/// Decomposition `alpha = sym + c_omega omega + plus + minus + f + anti`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneOneParts<S: Scalar> {
    pub c_omega: S,
    pub plus: Mat<S>,
    pub minus: Mat<S>,
    pub f: Mat<S>,
    pub anti: Mat<S>,
    pub sym: Mat<S>,
}

impl<S: Scalar> OneOneParts<S> {
    pub fn part(&self, side: Side) -> &Mat<S> {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }
}

/// Fixed data of `m` for one configuration.
#[derive(Clone, Debug)]
pub struct FiberModel<S: Scalar> {
    cfg: GrassmannConfig,
    metric: FrameMetric<S>,
    j: Mat<S>,
    su_plus: LieBasis<S>,
    su_minus: LieBasis<S>,
    plus: SpanSet<S>,
    minus: SpanSet<S>,
}

impl<S: Scalar> FiberModel<S> {
    /// Build the frame, deriving the metric from the Killing form of `su(n)`.
    pub fn new(cfg: GrassmannConfig) -> Result<Self> {
        let d = cfg.real_dim();
        if d > 32 {
            return Err(Error::Unsupported(format!("real dimension {d} exceeds 32")));
        }
        let norms = killing_norms::<S>(&cfg)?;
        let metric = FrameMetric::new(norms)?;
        let j = k_action(
            &cfg,
            &Mat::identity(cfg.n_plus).scale(&Cx::new(S::zero(), S::one())),
            &Mat::zeros(cfg.n_minus, cfg.n_minus),
        )?;
        let su_plus = su_basis::<S>(cfg.n_plus)?;
        let su_minus = su_basis::<S>(cfg.n_minus)?;
        let span_plus: Vec<Mat<S>> = su_plus
            .elems()
            .iter()
            .map(|a| k_action(&cfg, a, &Mat::zeros(cfg.n_minus, cfg.n_minus)))
            .collect::<Result<_>>()?;
        let span_minus: Vec<Mat<S>> = su_minus
            .elems()
            .iter()
            .map(|b| k_action(&cfg, &Mat::zeros(cfg.n_plus, cfg.n_plus), b))
            .collect::<Result<_>>()?;
        let plus = SpanSet::new(span_plus, &(0..su_plus.dim()).collect::<Vec<_>>());
        let minus = SpanSet::new(span_minus, &(0..su_minus.dim()).collect::<Vec<_>>());
        Ok(FiberModel { cfg, metric, j, su_plus, su_minus, plus, minus })
    }

    pub fn cfg(&self) -> &GrassmannConfig {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.cfg.real_dim()
    }

    pub fn metric(&self) -> &FrameMetric<S> {
        &self.metric
    }

    /// The complex structure, multiplication by `i`.
    pub fn j(&self) -> &Mat<S> {
        &self.j
    }

    pub fn su(&self, side: Side) -> &LieBasis<S> {
        match side {
            Side::Plus => &self.su_plus,
            Side::Minus => &self.su_minus,
        }
    }

    pub fn span(&self, side: Side) -> &SpanSet<S> {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    /// Isotropy frame `{E_pq, i E_pq}` with weights `1/g(b_i, b_i)`.
    pub fn isotropy_frame(&self) -> (Vec<IsotropyVector<S>>, Vec<S>) {
        let d = self.dim();
        let basis = (0..d)
            .map(|i| {
                let mut x = alloc::vec![S::zero(); d];
                x[i] = S::one();
                IsotropyVector::from_coords(&self.cfg, &x).expect("length")
            })
            .collect();
        (basis, self.metric.weights().to_vec())
    }

    /// `M -> a M - M b` for `a` in one factor and `b = 0` in the other.
    pub fn side_action(&self, side: Side, a: &CMat<S>) -> Result<Mat<S>> {
        let (p, q) = (self.cfg.n_plus, self.cfg.n_minus);
        match side {
            Side::Plus => k_action(&self.cfg, a, &Mat::zeros(q, q)),
            Side::Minus => k_action(&self.cfg, &Mat::zeros(p, p), a),
        }
    }

    /// `-1/2 tr(alpha beta)` for `g`-skew endomorphisms.
    pub fn lam2_inner(&self, a: &Mat<S>, b: &Mat<S>) -> Result<S> {
        if !self.metric.is_skew(a) || !self.metric.is_skew(b) {
            return Err(domain("lam2_inner needs skew endomorphisms"));
        }
        Ok(lam2_raw(a, b))
    }

    pub fn commutes_with_j(&self, a: &Mat<S>) -> bool {
        a.matmul(&self.j).approx_eq(&self.j.matmul(a))
    }

    /// Projection of a skew endomorphism onto `E+` or `E-`.
    pub fn project(&self, side: Side, a: &Mat<S>) -> Mat<S> {
        self.span(side).project(a)
    }

    pub fn decompose_oneone(&self, a: &Mat<S>) -> OneOneParts<S> {
        let half = S::ratio(1, 2);
        let adj = self.metric.adjoint(a);
        let sym = (a + &adj).scale(&half);
        let skew = a - &sym;
        let jaj = self.j.matmul(&skew).matmul(&self.j);
        let anti = (&skew + &jaj).scale(&half);
        let comm = &skew - &anti;
        let c_omega = lam2_raw(&comm, &self.j) / lam2_raw(&self.j, &self.j);
        let rest = &comm - &self.j.scale(&c_omega);
        let plus = self.plus.project(&rest);
        let minus = self.minus.project(&rest);
        let f = &(&rest - &plus) - &minus;
        OneOneParts { c_omega, plus, minus, f, anti, sym }
    }

    /// `C+-(A) = sum_a w_a A w_a / |w_a|^2` over an orthogonal basis of `E+-`.
    pub fn c_pm(&self, side: Side, a: &Mat<S>) -> Mat<S> {
        let span = self.span(side);
        let d = self.dim();
        let mut out = Mat::zeros(d, d);
        for (o, n) in span.orthogonal.iter().zip(&span.norms) {
            out = &out + &o.matmul(a).matmul(o).scale(&(S::one() / n.clone()));
        }
        out
    }

    /// Derivation action of an endomorphism on forms.
    pub fn h_star(&self, h: &Mat<S>, phi: &PForm<S>) -> Result<PForm<S>> {
        self.metric.derivation(h, phi)
    }

    /// `X -> JX` as a vector map.
    pub fn apply(&self, a: &Mat<S>, x: &[S]) -> Vec<S> {
        a.matvec(x)
    }
}

/// `-B(b_i, b_i)` for the real m-block frame, asserting orthogonality.
fn killing_norms<S: Scalar>(cfg: &GrassmannConfig) -> Result<Vec<S>> {
    let n = cfg.n();
    let su = su_basis::<S>(n)?;
    let mblock = block_embed::<S>(n, EmbedSlot::MBlock { n_plus: cfg.n_plus })?;
    let ads: Vec<Mat<S>> = mblock.elems().iter().map(|e| su.ad_matrix(e)).collect::<Result<_>>()?;
    let d = ads.len();
    let mut norms = Vec::with_capacity(d);
    for i in 0..d {
        for k in 0..d {
            let v = -ads[i].trace_product(&ads[k]);
            if i == k {
                norms.push(v);
            } else if !v.near(&S::zero()) {
                return Err(Error::ConventionFailure(format!("m-block frame is not Killing-orthogonal at ({i}, {k})")));
            }
        }
    }
    let expect = S::from_i64(4 * n as i64);
    if norms.iter().any(|v| !v.near(&expect)) {
        return Err(Error::ConventionFailure(format!("Killing norms on m differ from 4n = {expect}")));
    }
    Ok(norms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn frame_sizes_and_norms() {
        for (p, q, d, nn) in [(2, 2, 8, 16), (2, 3, 12, 20)] {
            let f = FiberModel::<Q>::new(GrassmannConfig::new(p, q).unwrap()).unwrap();
            let (basis, weights) = f.isotropy_frame();
            assert_eq!(basis.len(), d);
            for (b, w) in basis.iter().zip(weights) {
                assert_eq!(isotropy_metric(f.cfg(), b, b), Q::from(nn));
                assert_eq!(w, Q::new(1, nn));
            }
        }
    }

    #[test]
    fn real_and_imaginary_units_are_orthogonal() {
        let cfg = GrassmannConfig::new(2, 3).unwrap();
        let f = FiberModel::<Q>::new(cfg).unwrap();
        let (b, _) = f.isotropy_frame();
        assert_eq!(isotropy_metric(&cfg, &b[0], &b[1]), Q::from(0));
    }

    #[test]
    fn xi_acts_as_n_times_j() {
        let cfg = GrassmannConfig::new(2, 3).unwrap();
        let f = FiberModel::<Q>::new(cfg).unwrap();
        let xi = lie::xi::<Q>(2, 3);
        let a = xi.block(0, 0, 2, 2);
        let b = xi.block(2, 2, 3, 3);
        assert_eq!(k_action(&cfg, &a, &b).unwrap(), f.j().scale(&Q::from(5)));
        assert!(k_action::<Q>(&cfg, &Mat::zeros(2, 2), &Mat::zeros(3, 3)).unwrap().is_zero());
    }

    #[test]
    fn omega_norm() {
        let f = FiberModel::<Q>::new(GrassmannConfig::new(2, 3).unwrap()).unwrap();
        assert_eq!(f.lam2_inner(f.j(), f.j()).unwrap(), Q::from(6));
        assert!(f.lam2_inner(&Mat::identity(12), f.j()).is_err());
    }

    #[test]
    fn decompose_omega() {
        let f = FiberModel::<Q>::new(GrassmannConfig::new(2, 3).unwrap()).unwrap();
        let p = f.decompose_oneone(f.j());
        assert_eq!(p.c_omega, Q::from(1));
        assert!(p.plus.is_zero() && p.minus.is_zero() && p.f.is_zero() && p.anti.is_zero() && p.sym.is_zero());
    }
}
