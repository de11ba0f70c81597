use grassmann_core::cubics::{
    q_classify, q_membership, PointCubic, PointwiseEvaluator, SuCubicFrame, VarietyOutcome, P1,
};
use grassmann_core::jets::{e_form, jet_at_o};
use grassmann_core::{Cx, Mat, Result, Scalar, Side};
use rand::Rng;

use super::side_dims;
use crate::registry::Env;
use crate::sample;
use crate::tally::Tally;

use PointCubic::{DxNormSqPotential, DxPartJxx, DxSquareJ, Mu, NormSqPotential, Nu, Psi, Term1, Term2};

const POINTWISE: usize = 10;
const MEMBERSHIP: usize = 500;
const MAX_MEMBERSHIP_N: usize = 7;

fn coeff<S: Scalar>(env: &Env<'_, S>, kind: PointCubic) -> Result<S> {
    Ok(env.model.projections()?.get(kind).clone())
}

fn dims<S: Scalar>(env: &Env<'_, S>) -> (i64, i64, i64) {
    let c = env.model.cfg;
    (c.n_plus() as i64, c.n_minus() as i64, c.n() as i64)
}

fn holds<S: Scalar>(lhs: &S, rhs: &S, tol: f64) -> bool {
    if S::EXACT {
        lhs == rhs
    } else {
        (lhs.clone() - rhs.clone()).to_f64().abs() <= tol * rhs.to_f64().abs().max(1.0)
    }
}

/// `c[nu+] + c[nu-] + c[mu]/(n+ n-) = 0`.
pub fn inv01<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let (p, q, _) = dims(env);
    let lhs = coeff(env, Nu(Side::Plus))? + coeff(env, Nu(Side::Minus))? + coeff(env, Mu)? * S::ratio(1, p * q);
    t.scalar("c[nu+] + c[nu-] + c[mu]/(n+ n-)", &lhs, &S::zero());
    t.headline_scalars(&lhs, &S::zero());
    Ok(())
}

/// `(n-+ - n+-) c[nu+-] = (n-+ (n+-^2 - 1)/(n+- n)) c[mu]`.
pub fn inv02<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let mu = coeff(env, Mu)?;
    let mut ratios = Vec::new();
    for side in Side::BOTH {
        let (a, b, n) = side_dims(&env.model.cfg, side);
        let nu = coeff(env, Nu(side))?;
        let lhs = S::from_i64(b - a) * nu.clone();
        let rhs = S::ratio(b * (a * a - 1), a * n) * mu.clone();
        t.scalar(&format!("relation for nu{}", side.symbol()), &lhs, &rhs);
        if !mu.is_zero() {
            ratios.push(format!("c[nu{}]/c[mu] = {}", side.symbol(), nu / mu.clone()));
        }
    }
    if ratios.is_empty() {
        t.headline(format!("c[mu] = {mu}"), "0");
    } else {
        t.headline(ratios.join(", "), "b (a^2-1)/(a n (b-a))");
    }
    Ok(())
}

/// `c[|X|^2 z] = c[z^3]/2`.
pub fn inv03<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let lhs = coeff(env, NormSqPotential)?;
    let rhs = coeff(env, Mu)? * S::ratio(1, 2);
    t.scalar("c[|X|^2 z]", &lhs, &rhs);
    t.headline_scalars(&lhs, &rhs);
    Ok(())
}

/// `c[|dX|^2 z] = 0`.
pub fn inv04<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let lhs = coeff(env, DxNormSqPotential)?;
    t.scalar("c[|dX|^2 z]", &lhs, &S::zero());
    t.headline_scalars(&lhs, &S::zero());
    Ok(())
}

/// `c[(dX)+-(JX, X)] = -c[nu+-] + ((n+-^2 - 1)/(2 n+- n)) c[mu]`.
pub fn inv05<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let mu = coeff(env, Mu)?;
    let mut shown = (Vec::new(), Vec::new());
    for side in Side::BOTH {
        let (a, _, n) = side_dims(&env.model.cfg, side);
        let lhs = coeff(env, DxPartJxx(side))?;
        let rhs = -coeff(env, Nu(side))? + S::ratio(a * a - 1, 2 * a * n) * mu.clone();
        t.scalar(&format!("c[(dX){}(JX,X)]", side.symbol()), &lhs, &rhs);
        shown.0.push(lhs.to_string());
        shown.1.push(rhs.to_string());
    }
    t.headline(shown.0.join(", "), shown.1.join(", "));
    Ok(())
}

/// Projected `<(dX)^2 J, dX>` relation, as printed and with the squared factor on the same side.
pub fn inv06<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let (p, q, n) = dims(env);
    let mu = coeff(env, Mu)?;
    let mut readings = Vec::new();
    for side in Side::BOTH {
        let (a, b, _) = side_dims(&env.model.cfg, side);
        let rhs = S::ratio(-a * a * b + a + 3 * b, p * q * n) * coeff(env, Nu(side))?
            + S::ratio((a * a - 1) * (a * a - 2), 2 * a * a * n * n) * mu.clone();
        let literal = coeff(env, DxSquareJ { square: Side::Plus, with: side })?;
        let s = side.symbol();
        if holds(&literal, &rhs, env.tol) {
            t.scalar(&format!("c[<(dX)+^2 J, (dX){s}>]"), &literal, &rhs);
            readings.push(format!("{s}: literal"));
        } else {
            let same = coeff(env, DxSquareJ { square: side, with: side })?;
            t.scalar(&format!("c[<(dX){s}^2 J, (dX){s}>]"), &same, &rhs);
            readings.push(format!("{s}: literal fails ({literal} vs {rhs}), same-side square used"));
        }
        if side == Side::Plus {
            t.headline_scalars(&literal, &rhs);
        }
    }
    t.note(readings.join("; "));
    Ok(())
}

/// `nu+-` do not vanish; `c[mu] = 0` exactly when `n+ = n-`; `P1` pairs nontrivially with `P0`.
pub fn inv07<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let (p, q, _) = dims(env);
    let nup = coeff(env, Nu(Side::Plus))?;
    let num = coeff(env, Nu(Side::Minus))?;
    let mu = coeff(env, Mu)?;
    t.nonzero("c[nu+]", &nup);
    t.nonzero("c[nu-]", &num);
    if p == q {
        t.scalar("c[nu+] + c[nu-]", &(nup.clone() + num.clone()), &S::zero());
        t.scalar("c[mu]", &mu, &S::zero());
    } else {
        t.nonzero("c[mu]", &mu);
    }
    let frame = SuCubicFrame::<S>::new(env.model.cfg.n())?;
    for side in Side::BOTH {
        let c = frame.invariant_coeff(&P1 { cfg: env.model.cfg, side })?;
        t.nonzero(&format!("c[P1{}]", side.symbol()), &c);
    }
    t.headline(format!("c[nu+] = {nup}, c[nu-] = {num}, c[mu] = {mu}"), "nonzero");
    Ok(())
}

/// `h_*(X -| Omega) = omega -| (e_X ^ X -| Omega)` with `h = e_X J`.
pub fn inv08<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let ctx = model.ctx();
    let f = &model.fiber;
    let m = f.metric();
    let kahler = m.endo_to_form(f.j());
    let mut rng = env.rng();
    for _ in 0..POINTWISE {
        let x = sample::su::<S>(&mut rng, model.cfg.n())?;
        let jet = jet_at_o(&ctx, &x)?;
        let e = e_form(f, &jet);
        let h = e.matmul(f.j());
        let beta = model.omega.omega.vec_contract(&jet.xm)?;
        let lhs = f.h_star(&h, &beta)?;
        let rhs = m.form_contract(&kahler, &m.endo_to_form(&e).wedge(&beta)?)?;
        t.form("h_*(X -| Omega)", &lhs, &rhs);
    }
    Ok(())
}

/// Constants relating `<h_*(v -| Omega_a), v -| Omega_b>` to `h(v, v)` for `hJ` in `E+-`.
pub fn inv09<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let m = f.metric();
    let d = f.dim();
    let mut rng = env.rng();
    let mut printed_holds = true;
    let mut shown = Vec::new();
    for side in Side::BOTH {
        let (a, b, _) = side_dims(f.cfg(), side);
        let den = a * a * b * b;
        let same = S::ratio(4 * (a * a * a * b - a * a - 5 * a * b - 3), den);
        let other = S::ratio(4 * (b * b * b * a + 3 * b * b - a * b - 3), den);
        let printed_other = S::ratio(4 * (a * a * a * b + 3 * a * a - a * b - 3), den);
        let mixed = -S::ratio(4 * (a * a * b * b - a * a - 3 * b * b + 3), den);
        let (om_s, om_o) = (model.omega.side(side), model.omega.side(side.other()));
        let s = side.symbol();
        for _ in 0..POINTWISE {
            let v = sample::coords::<S>(&mut rng, d);
            let beta = sample::e_side(&mut rng, f, side);
            let h = -&beta.matmul(f.j());
            let hvv = m.inner_vec(&h.matvec(&v), &v);
            let (vs, vo) = (om_s.vec_contract(&v)?, om_o.vec_contract(&v)?);
            let (hs, ho) = (f.h_star(&h, &vs)?, f.h_star(&h, &vo)?);
            t.scalar(&format!("hJ in E{s}: same side"), &m.graded_inner(&hs, &vs)?, &(same.clone() * hvv.clone()));
            let oo = m.graded_inner(&ho, &vo)?;
            t.scalar(&format!("hJ in E{s}: other side"), &oo, &(other.clone() * hvv.clone()));
            printed_holds &= holds(&oo, &(printed_other.clone() * hvv.clone()), env.tol);
            t.scalar(&format!("hJ in E{s}: mixed"), &m.graded_inner(&hs, &vo)?, &(mixed.clone() * hvv.clone()));
            t.scalar(
                &format!("hJ in E{s}: mixed, swapped"),
                &m.graded_inner(&ho, &vs)?,
                &(mixed.clone() * hvv.clone()),
            );
        }
        shown.push(format!("{same}, {other}, {mixed}"));
    }
    t.headline(shown.join(" | "), "same, other, mixed for E+ | E-");
    t.note(format!(
        "other-side constant 4(n-+^3 n+- + 3 n-+^2 - n+ n- - 3)/(n+ n-)^2; with the roles of n+- and n-+ exchanged it {}",
        if printed_holds { "also holds" } else { "fails" }
    ));
    Ok(())
}

/// `<alpha ^ beta, gamma ^ omega> = <{alpha, beta} J, gamma>`, zero unless all three share a factor.
pub fn inv10<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let m = f.metric();
    let kahler = m.endo_to_form(f.j());
    let mut rng = env.rng();
    for sa in Side::BOTH {
        for sb in Side::BOTH {
            for sc in Side::BOTH {
                for _ in 0..3 {
                    let a = sample::e_side(&mut rng, f, sa);
                    let b = sample::e_side(&mut rng, f, sb);
                    let c = sample::e_side(&mut rng, f, sc);
                    let lhs = m.graded_inner(
                        &m.endo_to_form(&a).wedge(&m.endo_to_form(&b))?,
                        &m.endo_to_form(&c).wedge(&kahler)?,
                    )?;
                    let rhs = f.lam2_inner(&a.anticommutator(&b).matmul(f.j()), &c)?;
                    let tag = format!("({}{}{})", sa.symbol(), sb.symbol(), sc.symbol());
                    t.scalar(&format!("triple product {tag}"), &lhs, &rhs);
                    if !(sa == sb && sb == sc) {
                        t.scalar(&format!("mixed triple {tag}"), &lhs, &S::zero());
                    }
                }
            }
        }
    }
    Ok(())
}

/// `(n+^2 - 1)(n-^2 - 1) / (n+^3 n-^3 (n+ - n-))`.
fn prefactor<S: Scalar>(p: i64, q: i64) -> S {
    S::ratio((p * p - 1) * (q * q - 1), p * p * p * q * q * q * (p - q))
}

/// Reference coefficient for the projected formulas, and its label.
fn reference<S: Scalar>(env: &Env<'_, S>) -> Result<(S, &'static str)> {
    let (p, q, _) = dims(env);
    Ok(if p == q { (coeff(env, Nu(Side::Plus))?, "c[nu+]") } else { (coeff(env, Mu)?, "c[mu]") })
}

fn headline_ratio<S: Scalar>(t: &mut Tally<S>, lhs: &S, rhs: &S, reference: &S, label: &str) {
    if reference.is_zero() {
        t.headline_scalars(lhs, rhs);
    } else {
        t.headline(
            format!("{} {label}", lhs.clone() / reference.clone()),
            format!("{} {label}", rhs.clone() / reference.clone()),
        );
    }
}

/// `c[term1]` by the closed formula, and `term1` pointwise from the `(dX)+-(JX, X)`.
pub fn inv11<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let (p, q, _) = dims(env);
    let lhs = coeff(env, Term1)?;
    let (r, label) = reference(env)?;
    let rhs = if p == q {
        S::ratio(-2 * (p * p - 1).pow(3) * (p * p - 3), p.pow(5)) * r.clone()
    } else {
        let l1 =
            p.pow(3) * q.pow(3) - 3 * p.pow(3) * q - 3 * p * q.pow(3) + p * p * q * q + p * p + q * q + 5 * p * q - 3;
        prefactor::<S>(p, q) * S::from_i64(l1) * r.clone()
    };
    t.scalar("c[term1]", &lhs, &rhs);
    headline_ratio(t, &lhs, &rhs, &r, label);

    let k = |side: Side| {
        let (a, b, _) = side_dims(&env.model.cfg, side);
        S::ratio((b * b - 1).pow(2) * (a.pow(3) * b + a * a - 5 * a * b + 3), a * a * b.pow(3))
    };
    let eval = PointwiseEvaluator::new(env.model.ctx());
    let kinds = [Term1, DxPartJxx(Side::Plus), DxPartJxx(Side::Minus)];
    let mut rng = env.rng();
    for _ in 0..POINTWISE {
        let x = sample::su::<S>(&mut rng, env.model.cfg.n())?;
        let v = eval.eval(&x, &kinds)?;
        let want = k(Side::Plus) * v[1].clone() - k(Side::Minus) * v[2].clone();
        t.scalar("term1 pointwise", &v[0], &want);
    }
    Ok(())
}

/// `c[term2]` by the closed formula, and `term2` pointwise from the `<(dX)^2 J, dX>`.
pub fn inv12<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let (p, q, _) = dims(env);
    let lhs = coeff(env, Term2)?;
    let (r, label) = reference(env)?;
    let rhs = if p == q {
        S::ratio(-2 * (p * p - 1).pow(3) * (p * p - 4), p.pow(5)) * r.clone()
    } else {
        let l2 =
            p.pow(3) * q.pow(3) - 4 * p.pow(3) * q - 4 * p * q.pow(3) + 2 * p * p * q * q + p * p + q * q + 7 * p * q
                - 4;
        prefactor::<S>(p, q) * S::from_i64(l2) * r.clone()
    };
    t.scalar("c[term2]", &lhs, &rhs);
    headline_ratio(t, &lhs, &rhs, &r, label);

    let eval = PointwiseEvaluator::new(env.model.ctx());
    let kinds = [
        Term2,
        DxSquareJ { square: Side::Plus, with: Side::Plus },
        DxSquareJ { square: Side::Minus, with: Side::Minus },
    ];
    let cp = S::ratio(2 * (q * q - 1).pow(3), q.pow(3));
    let cm = S::ratio(2 * (p * p - 1).pow(3), p.pow(3));
    let mut rng = env.rng();
    for _ in 0..POINTWISE {
        let x = sample::su::<S>(&mut rng, env.model.cfg.n())?;
        let v = eval.eval(&x, &kinds)?;
        t.scalar("term2 pointwise", &v[0], &(cp.clone() * v[1].clone() - cm.clone() * v[2].clone()));
    }
    Ok(())
}

/// Closed formula for `c[Psi]`.
pub fn inv13<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let (p, q, n) = dims(env);
    let lhs = coeff(env, Psi)?;
    let (r, label) = reference(env)?;
    let rhs = if p == q {
        -S::ratio((n * n - 4).pow(4), 2 * n.pow(5)) * r.clone()
    } else {
        S::ratio(2 * (p * p - 1).pow(2) * (q * q - 1).pow(2) * (p * q - 1), p.pow(3) * q.pow(3) * (p - q)) * r.clone()
    };
    t.scalar("c[Psi]", &lhs, &rhs);
    headline_ratio(t, &lhs, &rhs, &r, label);
    Ok(())
}

/// `c[Psi] != 0`.
pub fn inv14<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let psi = coeff(env, Psi)?;
    t.nonzero("c[Psi]", &psi);
    t.headline(psi.to_string(), "nonzero");
    Ok(())
}

/// `6 c[term1] - 4 c[term2] = c[Psi]`.
pub fn inv15<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let lhs = S::from_i64(6) * coeff(env, Term1)? - S::from_i64(4) * coeff(env, Term2)?;
    let psi = coeff(env, Psi)?;
    t.scalar("6 term1 - 4 term2", &lhs, &psi);
    t.headline_scalars(&lhs, &psi);
    Ok(())
}

/// Both characterizations of `X^2 = (tr X^2/n) I` agree; the classification
/// of solutions by parity of `n` holds with verified witnesses.
pub fn inv16<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let mut rng = env.rng();
    let mut members = Vec::new();
    for n in 2..=MAX_MEMBERSHIP_N {
        let mut found = 0;
        for i in 0..MEMBERSHIP {
            let x = if i % 2 == 0 {
                sample::su::<S>(&mut rng, n)?
            } else if n % 2 == 0 {
                let u = sample::rational_unitary::<S>(&mut rng, n, 1);
                let tval =
                    S::from_i64(rng.random_range(1..=3)) * S::from_i64(if rng.random_bool(0.5) { 1 } else { -1 });
                let d: Vec<Cx<S>> =
                    (0..n).map(|a| Cx::new(S::zero(), if a < n / 2 { tval.clone() } else { -tval.clone() })).collect();
                u.matmul(&Mat::diagonal(&d)).matmul(&u.conj_transpose())
            } else if i % 10 == 1 {
                Mat::zeros(n, n)
            } else {
                let mut d: Vec<Cx<S>> = (0..n).map(|_| Cx::new(S::zero(), sample::small(&mut rng))).collect();
                let tr: S = d.iter().map(|z| z.im.clone()).sum();
                d[n - 1].im = d[n - 1].im.clone() - tr;
                Mat::diagonal(&d)
            };
            let mem = q_membership(&x)?;
            found += mem.defining as usize;
            t.require(&format!("characterizations agree at n = {n}, sample {i}"), mem.agree());
        }
        members.push(format!("n={n}: {found}"));
    }
    for n in 2..=7 {
        let report = q_classify::<S>(n)?;
        let want = if n % 2 == 0 { VarietyOutcome::ConeFamily } else { VarietyOutcome::Trivial };
        t.require(&format!("classification at n = {n}"), report.outcome == want);
        t.require(&format!("witnesses at n = {n}"), report.all_witnesses_pass);
    }
    t.headline(format!("members among samples: {}", members.join(", ")), "agreement on every sample");
    Ok(())
}
