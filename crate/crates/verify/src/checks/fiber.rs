use grassmann_core::fiber::k_action;
use grassmann_core::lie::{bilinear_gram, block_embed, casimir_operator, su_basis, BilinearGram, EmbedSlot, FormTag};
use grassmann_core::{CMat, Mat, Result, Scalar, Side};

use super::{side_dims, SAMPLES};
use crate::registry::Env;
use crate::sample;
use crate::tally::Tally;

/// `E+` and `E-` commute.
pub fn fib01<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    for (i, a) in f.span(Side::Plus).spanning.iter().enumerate() {
        for (j, b) in f.span(Side::Minus).spanning.iter().enumerate() {
            t.zero_mat(&format!("[a_{i}, b_{j}]"), &a.commutator(b));
        }
    }
    Ok(())
}

/// `h = -beta J`, so that `hJ = beta`.
fn h_from<S: Scalar>(beta: &Mat<S>, j: &Mat<S>) -> Mat<S> {
    -&beta.matmul(j)
}

/// `{h, alpha}` stays in `E+- + R omega` when `alpha, hJ` lie in the same `E+-`.
pub fn fib02<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let mut rng = env.rng();
    for side in Side::BOTH {
        for _ in 0..SAMPLES {
            let alpha = sample::e_side(&mut rng, f, side);
            let beta = sample::e_side(&mut rng, f, side);
            let h = h_from(&beta, f.j());
            t.mat("hJ", &h.matmul(f.j()), &beta);
            let parts = f.decompose_oneone(&h.anticommutator(&alpha));
            let o = side.other().symbol();
            t.zero_mat(&format!("E{o} part"), parts.part(side.other()));
            t.zero_mat("F part", &parts.f);
            t.zero_mat("anti part", &parts.anti);
            t.zero_mat("sym part", &parts.sym);
        }
    }
    Ok(())
}

/// `{h, alpha}` is pure `F` and equals `2 alpha h` when `alpha, hJ` lie in opposite factors.
pub fn fib03<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let mut rng = env.rng();
    for side in Side::BOTH {
        for _ in 0..SAMPLES / 2 {
            let alpha = sample::e_side(&mut rng, f, side);
            let beta = sample::e_side(&mut rng, f, side.other());
            let h = h_from(&beta, f.j());
            let anti = h.anticommutator(&alpha);
            let parts = f.decompose_oneone(&anti);
            t.scalar("omega coefficient", &parts.c_omega, &S::zero());
            t.zero_mat("E+ part", &parts.plus);
            t.zero_mat("E- part", &parts.minus);
            t.zero_mat("anti part", &parts.anti);
            t.zero_mat("sym part", &parts.sym);
            t.mat("F part", &parts.f, &anti);
            t.mat("{h, alpha} = 2 alpha h", &anti, &alpha.matmul(&h).scale(&S::from_i64(2)));
        }
    }
    Ok(())
}

fn lam2_gram<S: Scalar>(f: &grassmann_core::FiberModel<S>, rep: &[Mat<S>]) -> Result<Mat<S>> {
    let k = rep.len();
    let mut g = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = f.lam2_inner(&rep[i], &rep[j])?;
        }
    }
    Ok(g)
}

/// `lam2` pulled back to `su(n+-)` is `-(n-+/2n+-) B`.
pub fn fib04<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let mut shown = Vec::new();
    for side in Side::BOTH {
        let (a, b, _) = side_dims(f.cfg(), side);
        let basis = f.su(side);
        let rep: Vec<Mat<S>> = basis.elems().iter().map(|x| f.side_action(side, x)).collect::<Result<_>>()?;
        let killing = bilinear_gram(basis, FormTag::Killing)?.gram;
        let c = -S::ratio(b, 2 * a);
        t.mat(&format!("lam2 on su(n{})", side.symbol()), &lam2_gram(f, &rep)?, &killing.scale(&c));
        shown.push(c.to_string());
    }
    t.headline(shown.join(", "), "-(n-+/2n+-)");
    Ok(())
}

/// Casimirs of `su(n+-)` for `lam2`: on `m` and on the adjoint.
pub fn fib05<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let (p, q) = (f.cfg().n_plus() as i64, f.cfg().n_minus() as i64);
    let mut got = Vec::new();
    let mut want = Vec::new();
    for side in Side::BOTH {
        let (a, b, _) = side_dims(f.cfg(), side);
        let basis = f.su(side);
        let rep: Vec<Mat<S>> = basis.elems().iter().map(|x| f.side_action(side, x)).collect::<Result<_>>()?;
        let gram = BilinearGram::new(FormTag::Lambda2, lam2_gram(f, &rep)?)?;
        let on_m = casimir_operator(&rep, &gram)?;
        let m_val = S::ratio(a * a - 1, p * q);
        t.mat(&format!("Cas su(n{}) on m", side.symbol()), &on_m, &Mat::identity(f.dim()).scale(&m_val));
        let ad = basis.structure()?;
        let on_ad = casimir_operator(&ad, &gram)?;
        let ad_val = S::ratio(2 * a, b);
        t.mat(&format!("Cas su(n{}) on ad", side.symbol()), &on_ad, &Mat::identity(ad.len()).scale(&ad_val));
        got.push(format!("{} {}", on_m[(0, 0)], on_ad[(0, 0)]));
        want.push(format!("{m_val} {ad_val}"));
    }
    t.headline(got.join(", "), want.join(", "));
    Ok(())
}

/// Casimir of the whole isotropy algebra for `-B_g` on `m` is `1/2`.
pub fn fib06<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let cfg = f.cfg();
    let (p, q, n) = (cfg.n_plus(), cfg.n_minus(), cfg.n());
    let big = su_basis::<S>(n)?;
    let mut elems: Vec<CMat<S>> = Vec::new();
    elems.extend(block_embed(n, EmbedSlot::Upper(f.su(Side::Plus)))?.elems().iter().cloned());
    elems.extend(block_embed(n, EmbedSlot::Lower(f.su(Side::Minus)))?.elems().iter().cloned());
    elems.extend(block_embed::<S>(n, EmbedSlot::Center { n_plus: p })?.elems().iter().cloned());
    let rep: Vec<Mat<S>> =
        elems.iter().map(|e| k_action(cfg, &e.block(0, 0, p, p), &e.block(p, p, q, q))).collect::<Result<_>>()?;
    let ads: Vec<Mat<S>> = elems.iter().map(|e| big.ad_matrix(e)).collect::<Result<_>>()?;
    let gram = Mat::from_fn(ads.len(), ads.len(), |i, j| -ads[i].trace_product(&ads[j]));
    let cas = casimir_operator(&rep, &BilinearGram::new(FormTag::Scaled, gram)?)?;
    let half = S::ratio(1, 2);
    t.mat("Cas k on m", &cas, &Mat::identity(f.dim()).scale(&half));
    t.headline_scalars(&cas[(0, 0)], &half);
    Ok(())
}

/// The `Lambda^{1,1}` splitting is orthogonal and reconstructs its input.
pub fn fib07<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let d = f.dim();
    let mut rng = env.rng();
    t.scalar("omega coefficient of omega", &f.decompose_oneone(f.j()).c_omega, &S::one());
    for _ in 0..SAMPLES {
        let a = sample::endo::<S>(&mut rng, d);
        let p = f.decompose_oneone(&a);
        let cw = f.j().scale(&p.c_omega);
        let skew = [&cw, &p.plus, &p.minus, &p.f, &p.anti];
        let total = skew.iter().fold(p.sym.clone(), |acc, m| &acc + *m);
        t.mat("reconstruction", &total, &a);
        for i in 0..skew.len() {
            for j in i + 1..skew.len() {
                t.scalar(&format!("lam2(part {i}, part {j})"), &f.lam2_inner(skew[i], skew[j])?, &S::zero());
            }
            t.scalar(&format!("tr(sym part {i})"), &p.sym.trace_product(skew[i]), &S::zero());
        }
    }
    Ok(())
}
