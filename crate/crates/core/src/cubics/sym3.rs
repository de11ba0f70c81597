use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{p0_eval3, CubicForm};
use crate::error::{domain, Result};
use crate::lie::{su_orthogonal_basis, LieBasis};
use crate::matrix::{CMat, Mat};
use crate::scalar::Scalar;

/// A sorted index triple `i <= j <= k` in the `P0` support.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple<S: Scalar> {
    pub idx: [usize; 3],
    /// Number of distinct orderings.
    pub mult: i64,
    /// `P0(b_i, b_j, b_k)`.
    pub p0: S,
    /// `mult * w_i w_j w_k * p0`.
    pub weight: S,
    /// Evaluation points for `ijk, ij, ik, jk, i, j, k`.
    points: [usize; 7],
}

/// Trace-orthogonal frame of `su(n)` with everything needed to project a
/// cubic onto the invariant line spanned by `P0`.
///
/// The inner product on `Sym^3` is the full contraction against the inverse
/// Gram matrix of `-tr(XY)`. Only triples where `P0` is nonzero contribute to
/// `<F, P0>`, so [`SuCubicFrame::points`] lists the sums of basis vectors at
/// which a cubic has to be evaluated.
#[derive(Clone, Debug)]
pub struct SuCubicFrame<S: Scalar> {
    n: usize,
    basis: LieBasis<S>,
    weights: Vec<S>,
    support: Vec<Triple<S>>,
    p0_norm: S,
    points: Vec<Vec<usize>>,
}

fn multiplicity(i: usize, j: usize, k: usize) -> i64 {
    match (i == j, j == k) {
        (true, true) => 1,
        (false, false) => 6,
        _ => 3,
    }
}

fn polar_keys(i: usize, j: usize, k: usize) -> [Vec<usize>; 7] {
    [
        alloc::vec![i, j, k],
        alloc::vec![i, j],
        alloc::vec![i, k],
        alloc::vec![j, k],
        alloc::vec![i],
        alloc::vec![j],
        alloc::vec![k],
    ]
}

fn polarize<S: Scalar>(v: [&S; 7]) -> S {
    (v[0].clone() - v[1].clone() - v[2].clone() - v[3].clone() + v[4].clone() + v[5].clone() + v[6].clone())
        / S::from_i64(6)
}

impl<S: Scalar> SuCubicFrame<S> {
    pub fn new(n: usize) -> Result<Self> {
        let basis = su_orthogonal_basis::<S>(n)?;
        let elems = basis.elems();
        let dim = elems.len();
        let weights: Vec<S> = elems.iter().map(|b| S::one() / -b.trace_product(b).re).collect();
        let mut support = Vec::new();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut points = Vec::new();
        let mut p0_norm = S::zero();
        for i in 0..dim {
            for j in i..dim {
                for k in j..dim {
                    let p0 = p0_eval3(&elems[i], &elems[j], &elems[k])?;
                    if p0.is_zero() {
                        continue;
                    }
                    let mult = multiplicity(i, j, k);
                    let w = weights[i].clone() * weights[j].clone() * weights[k].clone() * S::from_i64(mult);
                    let weight = w * p0.clone();
                    p0_norm += weight.clone() * p0.clone();
                    let keys = polar_keys(i, j, k);
                    let mut pts = [0usize; 7];
                    for (slot, key) in pts.iter_mut().zip(keys) {
                        *slot = *index.entry(key.clone()).or_insert_with(|| {
                            points.push(key);
                            points.len() - 1
                        });
                    }
                    support.push(Triple { idx: [i, j, k], mult, p0, weight, points: pts });
                }
            }
        }
        if p0_norm.is_zero() {
            return Err(domain("P0 vanishes identically"));
        }
        Ok(SuCubicFrame { n, basis, weights, support, p0_norm, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &LieBasis<S> {
        &self.basis
    }

    /// `1 / (-tr b_i^2)`.
    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn support(&self) -> &[Triple<S>] {
        &self.support
    }

    /// `<P0, P0>`.
    pub fn p0_norm(&self) -> &S {
        &self.p0_norm
    }

    /// Multisets of basis indices whose sums are the evaluation points.
    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    /// The matrix `sum_{e in key} b_e` for one evaluation point.
    pub fn point_matrix(&self, idx: usize) -> CMat<S> {
        self.sum_of(&self.points[idx])
    }

    fn sum_of(&self, key: &[usize]) -> CMat<S> {
        let mut out = Mat::zeros(self.n, self.n);
        for &e in key {
            out = &out + &self.basis.elems()[e];
        }
        out
    }

    /// `<F, P0>` from the values of `F` at [`Self::points`].
    pub fn inner_with_p0(&self, values: &[S]) -> Result<S> {
        if values.len() != self.points.len() {
            return Err(domain("one value per evaluation point expected"));
        }
        Ok(self
            .support
            .iter()
            .map(|t| {
                let v = t.points.map(|p| &values[p]);
                t.weight.clone() * polarize(v)
            })
            .sum())
    }

    /// `c_F = <F, P0> / <P0, P0>` from the values of `F` at [`Self::points`].
    pub fn project(&self, values: &[S]) -> Result<S> {
        Ok(self.inner_with_p0(values)? / self.p0_norm.clone())
    }

    /// Several cubics at once: `values[p][f]` is cubic `f` at point `p`.
    pub fn project_many(&self, values: &[Vec<S>]) -> Result<Vec<S>> {
        let count = values.first().map_or(0, Vec::len);
        if values.len() != self.points.len() || values.iter().any(|v| v.len() != count) {
            return Err(domain("ragged evaluation table"));
        }
        let mut out = alloc::vec![S::zero(); count];
        for t in &self.support {
            for (f, acc) in out.iter_mut().enumerate() {
                let v = t.points.map(|p| &values[p][f]);
                *acc += t.weight.clone() * polarize(v);
            }
        }
        Ok(out.into_iter().map(|c| c / self.p0_norm.clone()).collect())
    }

    /// Coefficient of the invariant projection `c_F P0`.
    pub fn invariant_coeff(&self, f: &dyn CubicForm<S>) -> Result<S> {
        let values = (0..self.points.len()).map(|p| f.eval(&self.point_matrix(p))).collect::<Result<Vec<_>>>()?;
        self.project(&values)
    }

    /// Full polarized coefficient table `F(b_i, b_j, b_k)`, `i <= j <= k`, nonzero entries only.
    pub fn coefficient_table(&self, f: &dyn CubicForm<S>) -> Result<BTreeMap<[usize; 3], S>> {
        let dim = self.basis.dim();
        let mut cache = BTreeMap::new();
        let mut out = BTreeMap::new();
        for i in 0..dim {
            for j in i..dim {
                for k in j..dim {
                    let c = self.polarized(f, [i, j, k], &mut cache)?;
                    if !c.is_zero() {
                        out.insert([i, j, k], c);
                    }
                }
            }
        }
        Ok(out)
    }

    fn polarized(&self, f: &dyn CubicForm<S>, t: [usize; 3], cache: &mut BTreeMap<Vec<usize>, S>) -> Result<S> {
        let keys = polar_keys(t[0], t[1], t[2]);
        let mut vals: Vec<S> = Vec::with_capacity(7);
        for key in keys {
            let v = match cache.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let v = f.eval(&self.sum_of(&key))?;
                    cache.insert(key, v.clone());
                    v
                }
            };
            vals.push(v);
        }
        Ok(polarize([&vals[0], &vals[1], &vals[2], &vals[3], &vals[4], &vals[5], &vals[6]]))
    }

    /// Invariant inner product of two cubics: the full table of `g` is built,
    /// then `f` is polarized only where `g` is nonzero.
    pub fn sym3_inner(&self, f: &dyn CubicForm<S>, g: &dyn CubicForm<S>) -> Result<S> {
        let table = self.coefficient_table(g)?;
        let mut cache = BTreeMap::new();
        let mut acc = S::zero();
        for ([i, j, k], gv) in table {
            let fv = self.polarized(f, [i, j, k], &mut cache)?;
            let w = self.weights[i].clone() * self.weights[j].clone() * self.weights[k].clone();
            acc += S::from_i64(multiplicity(i, j, k)) * w * fv * gv;
        }
        Ok(acc)
    }
}
