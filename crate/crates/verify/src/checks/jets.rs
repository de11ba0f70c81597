use grassmann_core::jets::{
    derivative_along, e_form, exterior_ops_at_o, jet_at_o, laplacian_at_o, potential_gradient_defect, Field,
};
use grassmann_core::lie::{su_basis, xi};
use grassmann_core::{CMat, Mat, PForm, Result, Scalar, Side};

use super::{side_dims, unit};
use crate::registry::Env;
use crate::sample;
use crate::tally::Tally;

const EXTRA: usize = 3;
const CONJUGATIONS: usize = 20;
const TRANSLATES: usize = 2;

/// Basis of `su(n)` followed by a few seeded random elements.
fn test_elements<S: Scalar>(env: &Env<'_, S>) -> Result<Vec<CMat<S>>> {
    let n = env.model.cfg.n();
    let mut xs = su_basis::<S>(n)?.elems().to_vec();
    let mut rng = env.rng();
    for _ in 0..EXTRA {
        xs.push(sample::su(&mut rng, n)?);
    }
    Ok(xs)
}

/// `dX` is `(z/(n+ n-)) omega + (dX)+ + (dX)-`.
pub fn kj01<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let cfg = f.cfg();
    let pq = (cfg.n_plus() * cfg.n_minus()) as i64;
    for x in test_elements(env)? {
        let jet = jet_at_o(&model.ctx(), &x)?;
        let w = f.j().scale(&(jet.z.clone() / S::from_i64(pq)));
        let p = f.decompose_oneone(&(&jet.dx - &w));
        t.scalar("omega component", &p.c_omega, &S::zero());
        t.zero_mat("F part", &p.f);
        t.zero_mat("sym part", &p.sym);
        t.zero_mat("anti part", &p.anti);
        t.mat("dX", &jet.dx, &(&(&p.plus + &p.minus) + &w));
    }
    Ok(())
}

/// The jet convention reproduces `nabla_Y z = omega(X, Y)`.
pub fn kj02<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let defect = potential_gradient_defect(&model.ctx(), &test_elements(env)?)?;
    let ok = if S::EXACT { defect == 0.0 } else { defect <= env.tol };
    t.require("nabla z = X -| omega", ok);
    let conv = model.conv;
    t.headline(format!("sigma {}, dx_scale {}", conv.sigma, conv.dx_scale), "calibrated");
    let tried: Vec<String> = model
        .calibration
        .iter()
        .map(|a| format!("({}, {}) {}", a.conv.sigma, a.conv.dx_scale, if a.passed { "pass" } else { "fail" }))
        .collect();
    t.note(format!("tried {}; curvature sign {}", tried.join(", "), model.curvature.sign()));
    Ok(())
}

/// First and second derivatives of `dX` and of `f+- = |(dX)+-|^2`.
pub fn kj03<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let ctx = model.ctx();
    let f = &model.fiber;
    let m = f.metric();
    let cfg = f.cfg();
    let d = f.dim();
    let (p, q, n) = (cfg.n_plus() as i64, cfg.n_minus() as i64, cfg.n() as i64);
    let constant = |fp: i64, fm: i64| {
        Field::Sum(vec![
            Field::NormSq,
            Field::Potential.wedge(Field::Potential).scaled(S::ratio(1, 2 * p * q)),
            Field::DxPartNormSq(Side::Plus).scaled(S::ratio(n, 2 * fp)),
            Field::DxPartNormSq(Side::Minus).scaled(S::ratio(n, 2 * fm)),
        ])
    };
    let corrected = constant(q, p);
    let printed = constant(p, q);
    let mut printed_holds = true;
    for x in test_elements(env)? {
        let jet = jet_at_o(&ctx, &x)?;
        let xflat = m.flat(&jet.xm);
        let norm = m.inner_vec(&jet.xm, &jet.xm);
        for side in Side::BOTH {
            let (a, b, _) = side_dims(cfg, side);
            let s = side.symbol();
            let (dd, dstar) = exterior_ops_at_o(&ctx, &Field::DxPart(side), &x)?;
            let want = model.omega.side(side).vec_contract(&jet.xm)?.scale(&S::ratio(b, 2 * n));
            t.form(&format!("d(dX){s}"), &dd, &want);
            t.form(&format!("d*(dX){s}"), &dstar, &xflat.scale(&S::ratio(a * a - 1, a * n)));

            let part = jet.part(f, side);
            let px = part.matvec(&jet.xm);
            let fs = f.lam2_inner(part, part)?;
            for i in 0..d {
                let grad = derivative_along(&ctx, &Field::DxPartNormSq(side), &x, &unit(d, i), 1)?.as_scalar()?;
                let want = m.inner_vec(&px, &unit(d, i)) * S::ratio(2 * b, n);
                t.scalar(&format!("nabla_{i} f{s}"), &grad, &want);
            }
            let lap = laplacian_at_o(&ctx, &Field::DxPartNormSq(side), &x)?.as_scalar()?;
            let want = S::ratio(2 * b, n) * fs - S::ratio(2 * (a * a - 1) * b, a * n * n) * norm.clone();
            t.scalar(&format!("Delta f{s}"), &lap, &want);
        }
        let (dnorm, _) = exterior_ops_at_o(&ctx, &Field::NormSq, &x)?;
        t.form("d|X|^2", &dnorm, &m.endo_to_form(&jet.dx).vec_contract(&jet.xm)?.neg());
        let (dc, _) = exterior_ops_at_o(&ctx, &corrected, &x)?;
        t.form("d(moment combination)", &dc, &PForm::zero(1));
        if p != q {
            let (dp, _) = exterior_ops_at_o(&ctx, &printed, &x)?;
            printed_holds &= dp.is_zero() || (!S::EXACT && dp.max_abs() <= env.tol);
        }
    }
    if p != q {
        t.note(format!(
            "moment combination with f+ weighted n/(2n-), f- weighted n/(2n+); swapped weights {}",
            if printed_holds { "also constant" } else { "not constant" }
        ));
    }
    Ok(())
}

/// `d e_X = X -| Omega`, `d* e_X = 0`, `Delta e_X = e_X`, `Delta z = z`.
pub fn kj04<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let ctx = model.ctx();
    let f = &model.fiber;
    let m = f.metric();
    for x in test_elements(env)? {
        let jet = jet_at_o(&ctx, &x)?;
        let e = e_form(f, &jet);
        let ef = m.endo_to_form(&e);
        t.scalar("<e_X, omega>", &f.lam2_inner(&e, f.j())?, &S::zero());
        let (de, dstar) = exterior_ops_at_o(&ctx, &Field::EForm, &x)?;
        t.form("d e_X", &de, &model.omega.omega.vec_contract(&jet.xm)?);
        t.form("d* e_X", &dstar, &PForm::zero(1));
        t.form("Delta e_X", &laplacian_at_o(&ctx, &Field::EForm, &x)?, &ef);
        t.form("Delta z", &laplacian_at_o(&ctx, &Field::Potential, &x)?, &PForm::scalar(jet.z.clone()));
    }
    Ok(())
}

/// Coefficient rank of a family of tuples of forms, one tuple per column.
fn coefficient_rank<S: Scalar>(images: &[Vec<PForm<S>>]) -> usize {
    let slots = images.first().map_or(0, Vec::len);
    let masks: Vec<Vec<u32>> = (0..slots)
        .map(|s| {
            let mut v: Vec<u32> = images.iter().flat_map(|im| im[s].terms().iter().map(|(k, _)| *k)).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let rows: usize = masks.iter().map(Vec::len).sum();
    let cols: Vec<Vec<S>> = images
        .iter()
        .map(|im| im.iter().zip(&masks).flat_map(|(f, ks)| ks.iter().map(|&k| f.coeff(k))).collect())
        .collect();
    Mat::from_columns(rows, &cols).rank()
}

/// `X -> (e_X, X -| Omega)` is injective on `su(n)` as a map to fields.
///
/// At `o` alone the kernel is the centre of the isotropy algebra, so the
/// fields are also sampled at translates `g o`, where `e_X(g o)` is
/// `g_* e_{Ad(g^-1) X}(o)`.
pub fn kj05<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let ctx = model.ctx();
    let f = &model.fiber;
    let m = f.metric();
    let cfg = model.cfg;
    let basis = su_basis::<S>(cfg.n())?;
    let mut rng = env.rng();
    let translates: Vec<CMat<S>> =
        (0..TRANSLATES).map(|_| sample::rational_unitary::<S>(&mut rng, cfg.n(), 2)).collect();
    let pair = |x: &CMat<S>| -> Result<[PForm<S>; 2]> {
        let jet = jet_at_o(&ctx, x)?;
        Ok([m.endo_to_form(&e_form(f, &jet)), model.omega.omega.vec_contract(&jet.xm)?])
    };
    let mut local = Vec::new();
    let mut global = Vec::new();
    for x in basis.elems() {
        let at_o = pair(x)?;
        local.push(at_o.to_vec());
        let mut all = at_o.to_vec();
        for g in &translates {
            all.extend(pair(&g.conj_transpose().matmul(x).matmul(g))?);
        }
        global.push(all);
    }
    let rank = coefficient_rank(&global);
    let local_rank = coefficient_rank(&local);
    t.require("rank equals dim su(n)", rank == basis.dim());
    t.require("kernel at o is one-dimensional", local_rank + 1 == basis.dim());
    let centre = pair(&xi::<S>(cfg.n_plus(), cfg.n_minus()))?;
    t.form("e of centre at o", &centre[0], &PForm::zero(2));
    t.form("centre -| Omega at o", &centre[1], &PForm::zero(3));
    t.headline(format!("rank {rank} ({local_rank} at o alone)"), format!("dim su(n) = {}", basis.dim()));
    Ok(())
}

/// `|(dX)+-|^2`, `z` and `|X|^2` are invariant under conjugation by the isotropy group.
pub fn kj06<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let ctx = model.ctx();
    let f = &model.fiber;
    let m = f.metric();
    let cfg = model.cfg;
    let mut rng = env.rng();
    for _ in 0..CONJUGATIONS {
        let g = sample::k_element::<S>(&mut rng, cfg.n_plus(), cfg.n_minus())?;
        let x = sample::su::<S>(&mut rng, cfg.n())?;
        let y = g.matmul(&x).matmul(&g.conj_transpose());
        let jx = jet_at_o(&ctx, &x)?;
        let jy = jet_at_o(&ctx, &y)?;
        for side in Side::BOTH {
            let (px, py) = (jx.part(f, side), jy.part(f, side));
            t.scalar(&format!("|(dX){}|^2", side.symbol()), &f.lam2_inner(py, py)?, &f.lam2_inner(px, px)?);
        }
        t.scalar("z", &jy.z, &jx.z);
        t.scalar("|X|^2", &m.inner_vec(&jy.xm, &jy.xm), &m.inner_vec(&jx.xm, &jx.xm));
    }
    Ok(())
}
