//! Dense matrices over real or Gaussian scalars.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Num;

use crate::scalar::{Cx, Scalar};

/// Matrix entry type: a real [`Scalar`] or its Gaussian extension.
pub trait Coeff: Clone + Num + Neg<Output = Self> + fmt::Debug + Send + Sync {
    type Real: Scalar;

    fn from_real(r: Self::Real) -> Self;
    /// Size used for pivot selection.
    fn modulus(&self) -> f64;
    fn conj(&self) -> Self;
}

impl<S: Scalar> Coeff for S {
    type Real = S;

    fn from_real(r: S) -> S {
        r
    }

    fn modulus(&self) -> f64 {
        let v = self.to_f64();
        if v < 0.0 {
            -v
        } else {
            v
        }
    }

    fn conj(&self) -> S {
        self.clone()
    }
}

impl<S: Scalar> Coeff for Cx<S> {
    type Real = S;

    fn from_real(r: S) -> Self {
        Cx::new(r, S::zero())
    }

    fn modulus(&self) -> f64 {
        self.re.modulus() + self.im.modulus()
    }

    fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Complex matrix over a real scalar.
pub type CMat<S> = Mat<Cx<S>>;

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Mat<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone> Mat<T> {
    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }
}

impl<T: Coeff> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Mat::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { T::zero() })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Mat::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn scale_real(&self, s: &T::Real) -> Self {
        let s = T::from_real(s.clone());
        self.scale(&s)
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t + self[(i, i)].clone();
        }
        t
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> T {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut t = T::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                t = t + a.clone() * other[(k, i)].clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape");
        let mut out: Mat<T> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *d = d.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.matmul(other) + &other.matmul(self)
    }

    pub fn conj_transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(Coeff::modulus).fold(0.0, f64::max)
    }

    /// Exact equality, or agreement to 1e-9 relative to the larger entry in float mode.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        if T::Real::EXACT {
            return self == other;
        }
        let scale = self.max_modulus().max(other.max_modulus()).max(1.0);
        max_diff(self, other) <= 1e-9 * scale
    }

    /// Row-reduce a copy and return `(rank, pivot columns)`.
    pub fn row_echelon_pivots(&self) -> (usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = m.pick_pivot(row, col) else { continue };
            m.swap_rows(row, p);
            m.eliminate_below(row, col);
            pivots.push(col);
            row += 1;
        }
        (row, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon_pivots().0
    }

    fn pick_pivot(&self, from: usize, col: usize) -> Option<usize> {
        let scale = self.max_modulus().max(1.0);
        let tol = <T::Real as Scalar>::PIVOT_TOL * scale;
        let mut best: Option<(usize, f64)> = None;
        for r in from..self.rows {
            let x = &self[(r, col)];
            if x.is_zero() {
                continue;
            }
            let m = x.modulus();
            if m <= tol {
                continue;
            }
            if <T::Real as Scalar>::EXACT {
                return Some(r);
            }
            if best.is_none_or(|(_, b)| m > b) {
                best = Some((r, m));
            }
        }
        best.map(|(r, _)| r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn eliminate_below(&mut self, row: usize, col: usize) {
        let piv = self[(row, col)].clone();
        for r in row + 1..self.rows {
            let x = self[(r, col)].clone();
            if x.is_zero() {
                continue;
            }
            let f = x / piv.clone();
            for c in col..self.cols {
                let v = self[(row, c)].clone();
                if !v.is_zero() {
                    self[(r, c)] = self[(r, c)].clone() - f.clone() * v;
                }
            }
            self[(r, col)] = T::zero();
        }
    }

    /// Solve `self * X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows, "solve shape");
        let n = self.rows;
        let m = rhs.cols;
        let mut a = Mat::from_fn(n, n + m, |r, c| if c < n { self[(r, c)].clone() } else { rhs[(r, c - n)].clone() });
        for col in 0..n {
            let p = a.pick_pivot(col, col)?;
            a.swap_rows(col, p);
            let piv = a[(col, col)].clone();
            for c in col..n + m {
                a[(col, c)] = a[(col, c)].clone() / piv.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n + m {
                    let v = a[(col, c)].clone();
                    if !v.is_zero() {
                        a[(r, c)] = a[(r, c)].clone() - f.clone() * v;
                    }
                }
            }
        }
        Some(a.block(0, n, n, m))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.solve(&Mat::identity(self.rows))
    }

    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant needs a square matrix");
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..a.rows {
            let Some(p) = a.pick_pivot(col, col) else { return T::zero() };
            if p != col {
                a.swap_rows(col, p);
                det = -det;
            }
            det = det * a[(col, col)].clone();
            a.eliminate_below(col, col);
        }
        det
    }

    /// Determinants of the leading principal submatrices, sizes 1..=n.
    pub fn leading_minors(&self) -> Vec<T> {
        (1..=self.rows).map(|k| self.block(0, 0, k, k).determinant()).collect()
    }
}

impl<S: Scalar> Mat<S> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self[(r, c)].near(&self[(c, r)])))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// Embed a real matrix into the complex matrices.
    pub fn complexify(&self) -> CMat<S> {
        self.map(|x| Cx::new(x.clone(), S::zero()))
    }
}

impl<S: Scalar> CMat<S> {
    pub fn is_skew_hermitian(&self) -> bool {
        self.is_square() && self.approx_eq(&-&self.conj_transpose())
    }

    pub fn real_part(&self) -> Mat<S> {
        self.map(|x| x.re.clone())
    }

    pub fn imag_part(&self) -> Mat<S> {
        self.map(|x| x.im.clone())
    }
}

impl<T: Coeff> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "add shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Coeff> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "sub shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Coeff> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        self.matmul(rhs)
    }
}

impl<T: Coeff> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Coeff> Add for Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: Mat<T>) -> Mat<T> {
        &self + &rhs
    }
}

impl<T: Coeff> Sub for Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: Mat<T>) -> Mat<T> {
        &self - &rhs
    }
}

/// Largest entrywise modulus of `a - b`.
pub fn max_diff<T: Coeff>(a: &Mat<T>, b: &Mat<T>) -> f64 {
    (a - b).max_modulus()
}

/// Solve the square system with one right-hand side.
pub fn solve_vec<T: Coeff>(a: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    let rhs = Mat::from_fn(b.len(), 1, |r, _| b[r].clone());
    a.solve(&rhs).map(|x| x.column(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn inverse_round_trip() {
        let a =
            Mat::from_vec(3, 3, vec![q(2, 1), q(1, 1), q(0, 1), q(1, 3), q(0, 1), q(1, 1), q(0, 1), q(5, 2), q(1, 1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(3));
        assert_eq!(a.determinant() * inv.determinant(), Rational::from(1));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = Mat::from_vec(2, 2, vec![q(1, 1), q(2, 1), q(2, 1), q(4, 1)]);
        assert!(a.inverse().is_none());
        assert_eq!(a.rank(), 1);
        assert_eq!(a.determinant(), Rational::from(0));
    }

    #[test]
    fn leading_minors_of_negative_definite() {
        let a = Mat::from_vec(2, 2, vec![q(-2, 1), q(1, 1), q(1, 1), q(-2, 1)]);
        assert_eq!(a.leading_minors(), vec![q(-2, 1), q(3, 1)]);
    }

    #[test]
    fn complex_solve() {
        let i = Cx::new(q(0, 1), q(1, 1));
        let one = Cx::new(q(1, 1), q(0, 1));
        let a: CMat<Rational> =
            Mat::from_vec(2, 2, vec![one.clone(), i.clone(), -i.clone(), one.clone() + one.clone()]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(2));
    }
}
