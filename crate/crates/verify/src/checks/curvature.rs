use grassmann_core::curvature::Bundle;
use grassmann_core::fiber::k_action;
use grassmann_core::lie::{block_embed, casimir_operator, su_basis, BilinearGram, EmbedSlot, FormTag};
use grassmann_core::{CMat, Mat, PForm, Result, Scalar, Side};

use super::side_dims;
use crate::registry::Env;
use crate::sample;
use crate::tally::Tally;

const PAIRS: usize = 20;

/// Spectrum of the curvature operator on `Lambda^2`.
pub fn cur01<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let r = &model.curvature;
    let m = f.metric();
    let d = f.dim();
    t.mat("R omega", &r.apply_endo(f, f.j())?, &f.j().scale(&-S::ratio(1, 2)));
    let mut shown = Vec::new();
    for side in Side::BOTH {
        let (_, b, n) = side_dims(f.cfg(), side);
        let lambda = -S::ratio(b, 2 * n);
        for (i, a) in f.span(side).spanning.iter().enumerate() {
            t.mat(&format!("R on E{}[{i}]", side.symbol()), &r.apply_endo(f, a)?, &a.scale(&lambda));
        }
        shown.push(lambda.to_string());
    }
    for i in 0..d {
        for j in i + 1..d {
            let p = f.decompose_oneone(&m.form_to_endo(&PForm::basis(&[i, j])?)?);
            t.zero_mat(&format!("R on F part of e{i}^e{j}"), &r.apply_endo(f, &p.f)?);
            t.zero_mat(&format!("R on J-anti part of e{i}^e{j}"), &r.apply_endo(f, &p.anti)?);
        }
    }
    t.headline(format!("-1/2, {}", shown.join(", ")), "-1/2, -n-/2n, -n+/2n");
    Ok(())
}

/// Casimir of the isotropy algebra for `-B_g` acting on `E+-` by commutators.
fn isotropy_casimir_on<S: Scalar>(env: &Env<'_, S>, side: Side) -> Result<Mat<S>> {
    let f = &env.model.fiber;
    let cfg = f.cfg();
    let (p, q, n) = (cfg.n_plus(), cfg.n_minus(), cfg.n());
    let big = su_basis::<S>(n)?;
    let mut elems: Vec<CMat<S>> = Vec::new();
    elems.extend(block_embed(n, EmbedSlot::Upper(f.su(Side::Plus)))?.elems().iter().cloned());
    elems.extend(block_embed(n, EmbedSlot::Lower(f.su(Side::Minus)))?.elems().iter().cloned());
    elems.extend(block_embed::<S>(n, EmbedSlot::Center { n_plus: p })?.elems().iter().cloned());
    let ads: Vec<Mat<S>> = elems.iter().map(|e| big.ad_matrix(e)).collect::<Result<_>>()?;
    let gram = Mat::from_fn(ads.len(), ads.len(), |i, j| -ads[i].trace_product(&ads[j]));
    let span = f.span(side);
    let mut rep = Vec::with_capacity(elems.len());
    for e in &elems {
        let k = k_action(cfg, &e.block(0, 0, p, p), &e.block(p, p, q, q))?;
        let cols: Vec<Vec<S>> = span.orthogonal.iter().map(|o| span.coords(&k.commutator(o))).collect();
        rep.push(Mat::from_columns(span.dim(), &cols));
    }
    casimir_operator(&rep, &BilinearGram::new(FormTag::Scaled, gram)?)
}

/// Weitzenboeck curvature endomorphism on `TM`, `Lambda^2` and `E+-`.
pub fn cur02<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let r = &model.curvature;
    let half = S::ratio(1, 2);
    let tangent = r.weitzenboeck(f, Bundle::Tangent)?;
    t.mat("K(R) on TM = Ric", &tangent, &r.ricci(f));
    t.mat("Ric = 1/2", &tangent, &Mat::identity(f.dim()).scale(&half));
    let l2 = r.weitzenboeck(f, Bundle::Lambda2)?;
    let op = r.operator_matrix();
    let want = &Mat::identity(op.rows()) + &op.scale(&S::from_i64(2));
    t.mat("K(R) on Lambda^2 = 1 + 2R", &l2, &want);
    let mut shown = Vec::new();
    for side in Side::BOTH {
        let k = r.weitzenboeck(f, Bundle::E(side))?;
        t.mat(&format!("K(R) on E{} = Casimir", side.symbol()), &k, &isotropy_casimir_on(env, side)?);
        shown.push(k[(0, 0)].to_string());
    }
    t.headline(format!("Ric {}, E+- {}", tangent[(0, 0)], shown.join(", ")), "Ric 1/2, E+- n+-/n");
    Ok(())
}

/// `R(X, Y)+- = -(n-+/2n) (X ^ Y)+-`.
pub fn cur03<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let m = f.metric();
    let mut rng = env.rng();
    for _ in 0..PAIRS {
        let x = sample::coords::<S>(&mut rng, f.dim());
        let y = sample::coords::<S>(&mut rng, f.dim());
        let rxy = model.curvature.r_xy(&x, &y);
        let xy = m.form_to_endo(&m.flat(&x).wedge(&m.flat(&y))?)?;
        for side in Side::BOTH {
            let (_, b, n) = side_dims(f.cfg(), side);
            let want = f.project(side, &xy).scale(&-S::ratio(b, 2 * n));
            t.mat(&format!("R(X,Y){}", side.symbol()), &f.project(side, &rxy), &want);
        }
    }
    Ok(())
}
