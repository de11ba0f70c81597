use grassmann_core::lie::{
    bilinear_gram, block_embed, casimir_operator, exterior_power_rep, freudenthal_eigenvalue, su_basis, BilinearGram,
    EmbedSlot, FormTag, LieBasis, WeightVector,
};
use grassmann_core::{CMat, Cx, Mat, Result, Scalar};

use crate::registry::Env;
use crate::sample;
use crate::tally::Tally;

const MAX_K: usize = 5;

fn neg_killing<S: Scalar>(basis: &LieBasis<S>) -> Result<BilinearGram<S>> {
    Ok(bilinear_gram(basis, FormTag::Killing)?.scaled(&-S::one()))
}

fn cscalar<S: Scalar>(v: S) -> Cx<S> {
    Cx::new(v, S::zero())
}

/// Freudenthal against the matrix Casimir on every exterior power and the adjoint.
pub fn lc01<S: Scalar>(_env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let mut shown = Vec::new();
    for k in 2..=MAX_K {
        let basis = su_basis::<S>(k)?;
        let gram = neg_killing(&basis)?;
        for j in 1..k {
            let cas = casimir_operator(&exterior_power_rep(&basis, j)?, &gram)?;
            let ev = freudenthal_eigenvalue(k, &WeightVector::fundamental(k, j)?, &S::one())?;
            let want: CMat<S> = Mat::identity(cas.rows()).scale(&cscalar(ev.clone()));
            t.cmat(&format!("Cas(Lambda^{j} C^{k})"), &cas, &want);
            if j == 1 {
                let kk = k as i64;
                t.scalar(&format!("Cas(C^{k})"), &ev, &S::ratio(kk * kk - 1, 2 * kk * kk));
                if k <= 3 {
                    shown.push(format!("C^{k}: {ev}"));
                }
            }
        }
        let cas = casimir_operator(&basis.structure()?, &gram)?;
        let ev = freudenthal_eigenvalue(k, &WeightVector::highest_root(k), &S::one())?;
        t.mat(&format!("Cas(ad su({k}))"), &cas, &Mat::identity(cas.rows()).scale(&ev));
        t.scalar(&format!("Cas(ad su({k}))"), &ev, &S::one());
    }
    t.headline(shown.join(", ") + ", ad: 1", "(k^2-1)/(2k^2), 1");
    Ok(())
}

/// The Casimir commutes with the representation.
pub fn lc02<S: Scalar>(_env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    for k in 2..=MAX_K {
        let basis = su_basis::<S>(k)?;
        let gram = neg_killing(&basis)?;
        for j in 1..k {
            let rep = exterior_power_rep(&basis, j)?;
            let cas = casimir_operator(&rep, &gram)?;
            for (i, r) in rep.iter().enumerate() {
                let c = cas.commutator(r);
                t.cmat(&format!("[Cas, rho(b_{i})] on Lambda^{j} C^{k}"), &c, &Mat::zeros(c.rows(), c.cols()));
            }
        }
        let ad = basis.structure()?;
        let cas = casimir_operator(&ad, &gram)?;
        for (i, r) in ad.iter().enumerate() {
            t.zero_mat(&format!("[Cas, ad b_{i}] on su({k})"), &cas.commutator(r));
        }
    }
    Ok(())
}

/// Killing form facts: definiteness, invariance, `B = 2k tr`, and restriction to block subalgebras.
pub fn lc03<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    for k in 2..=MAX_K {
        let basis = su_basis::<S>(k)?;
        let killing = bilinear_gram(&basis, FormTag::Killing)?;
        t.require(&format!("B negative definite on su({k})"), killing.is_negative_definite());
        let res = killing.invariance_residuals(&basis)?;
        t.vec(&format!("B invariance on su({k})"), &res, &vec![S::zero(); res.len()]);
        let trace = bilinear_gram(&basis, FormTag::Trace)?;
        t.mat(&format!("B = 2k tr on su({k})"), &killing.gram, &trace.gram.scale(&S::from_i64(2 * k as i64)));
    }
    let cfg = env.model.cfg;
    let n = cfg.n();
    let big = su_basis::<S>(n)?;
    let mut ratios = Vec::new();
    for (k, upper) in [(cfg.n_plus(), true), (cfg.n_minus(), false)] {
        let small = su_basis::<S>(k)?;
        let slot = if upper { EmbedSlot::Upper(&small) } else { EmbedSlot::Lower(&small) };
        let embedded = block_embed(n, slot)?;
        let ads: Vec<Mat<S>> = embedded.elems().iter().map(|e| big.ad_matrix(e)).collect::<Result<_>>()?;
        let restricted = Mat::from_fn(ads.len(), ads.len(), |i, j| ads[i].trace_product(&ads[j]));
        let own = bilinear_gram(&small, FormTag::Killing)?.gram;
        let ratio = S::ratio(n as i64, k as i64);
        t.mat(&format!("B_su({n}) on su({k})"), &restricted, &own.scale(&ratio));
        ratios.push(restricted[(0, 0)].clone() / own[(0, 0)].clone());
    }
    t.headline(
        format!("{}, {}", ratios[0], ratios[1]),
        format!("{}, {}", S::ratio(n as i64, cfg.n_plus() as i64), S::ratio(n as i64, cfg.n_minus() as i64)),
    );
    Ok(())
}

/// Casimir operators agree over a unimodular recombination of the basis.
pub fn lc04<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let mut rng = env.rng();
    for k in 2..=MAX_K {
        let basis = su_basis::<S>(k)?;
        let u = sample::unimodular::<S>(&mut rng, basis.dim());
        t.scalar(&format!("det U for su({k})"), &u.determinant(), &S::one());
        let other = basis.recombine(&u)?;
        for j in 1..k {
            let a = casimir_operator(&exterior_power_rep(&basis, j)?, &neg_killing(&basis)?)?;
            let b = casimir_operator(&exterior_power_rep(&other, j)?, &neg_killing(&other)?)?;
            t.cmat(&format!("Cas(Lambda^{j} C^{k}) over two bases"), &a, &b);
        }
    }
    Ok(())
}
