use grassmann_core::exterior::omega_from_basis;
use grassmann_core::fiber::SpanSet;
use grassmann_core::{FiberModel, Mat, PForm, Result, Scalar, Side};
use rand::seq::SliceRandom;

use super::{side_dims, unit, SAMPLES};
use crate::registry::Env;
use crate::sample;
use crate::tally::Tally;

fn project_form<S: Scalar>(f: &FiberModel<S>, side: Side, phi: &PForm<S>) -> Result<PForm<S>> {
    let m = f.metric();
    Ok(m.endo_to_form(&f.project(side, &m.form_to_endo(phi)?)))
}

/// `alpha -| (beta ^ gamma)` against endomorphism products.
pub fn ext01<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let m = f.metric();
    let mut rng = env.rng();
    for _ in 0..SAMPLES {
        let a = sample::skew(&mut rng, f)?;
        let b = sample::skew(&mut rng, f)?;
        let c = sample::skew(&mut rng, f)?;
        let lhs = m.form_contract(&m.endo_to_form(&a), &m.endo_to_form(&b).wedge(&m.endo_to_form(&c))?)?;
        let rhs = &(&(&c.scale(&f.lam2_inner(&a, &b)?) + &b.scale(&f.lam2_inner(&a, &c)?)) + &b.matmul(&a).matmul(&c))
            + &c.matmul(&a).matmul(&b);
        t.form("alpha -| (beta ^ gamma)", &lhs, &m.endo_to_form(&rhs));
    }
    Ok(())
}

/// `sum_i e_i ^ (e_i ^ X)+- = -1/2 X -| Omega+-` for every frame vector.
pub fn ext02<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let m = f.metric();
    let d = f.dim();
    for side in Side::BOTH {
        for x in 0..d {
            let xf = m.flat(&unit(d, x));
            let mut lhs = PForm::zero(3);
            for i in 0..d {
                let ei = m.flat(&unit(d, i));
                let part = project_form(f, side, &ei.wedge(&xf)?)?;
                lhs = lhs.add_scaled(&ei.wedge(&part)?, m.weight(i))?;
            }
            let rhs = model.omega.side(side).vec_contract(&unit(d, x))?.scale(&-S::ratio(1, 2));
            t.form(&format!("b_{x}, side {}", side.symbol()), &lhs, &rhs);
        }
    }
    Ok(())
}

/// `sum_i e_i -| (e_i ^ X)+- = ((n+-^2 - 1)/(n+ n-)) X`.
pub fn ext03<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let m = f.metric();
    let d = f.dim();
    let mut shown = Vec::new();
    for side in Side::BOTH {
        let (a, b, _) = side_dims(f.cfg(), side);
        let c = S::ratio(a * a - 1, a * b);
        for x in 0..d {
            let xf = m.flat(&unit(d, x));
            let mut lhs = PForm::zero(1);
            for i in 0..d {
                let part = project_form(f, side, &m.flat(&unit(d, i)).wedge(&xf)?)?;
                lhs = lhs.add_scaled(&part.contract_basis(i)?, m.weight(i))?;
            }
            t.form(&format!("b_{x}, side {}", side.symbol()), &lhs, &xf.scale(&c));
        }
        shown.push(c.to_string());
    }
    t.headline(shown.join(", "), "(n+-^2-1)/(n+ n-)");
    Ok(())
}

/// `alpha -| Omega+- = 2 alpha+- + 2 C+-(alpha)`.
pub fn ext04<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let m = f.metric();
    let mut rng = env.rng();
    let two = S::from_i64(2);
    for _ in 0..SAMPLES {
        let a = sample::skew(&mut rng, f)?;
        for side in Side::BOTH {
            let lhs = m.endo_contract(&a, model.omega.side(side))?;
            let rhs = (&f.project(side, &a) + &f.c_pm(side, &a)).scale(&two);
            t.form(&format!("alpha -| Omega{}", side.symbol()), &lhs, &m.endo_to_form(&rhs));
        }
    }
    Ok(())
}

/// Eigenvalues of `C+-` on `E+- + F` and on `R omega + E-+`.
pub fn ext05<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let f = &env.model.fiber;
    let cfg = f.cfg();
    let pq = (cfg.n_plus() * cfg.n_minus()) as i64;
    let mut f_span = Vec::new();
    for a in &f.span(Side::Plus).spanning {
        for b in &f.span(Side::Minus).spanning {
            f_span.push(a.matmul(b).matmul(f.j()));
        }
    }
    let mut shown = Vec::new();
    for side in Side::BOTH {
        let (a, _, _) = side_dims(cfg, side);
        let pos = S::ratio(1, pq);
        let neg = -S::ratio(a * a - 1, pq);
        let s = side.symbol();
        for (i, x) in f.span(side).spanning.iter().enumerate() {
            t.mat(&format!("C{s} on E{s}[{i}]"), &f.c_pm(side, x), &x.scale(&pos));
        }
        for (i, x) in f_span.iter().enumerate() {
            t.mat(&format!("C{s} on F[{i}]"), &f.c_pm(side, x), &x.scale(&pos));
        }
        t.mat(&format!("C{s} on omega"), &f.c_pm(side, f.j()), &f.j().scale(&neg));
        for (i, x) in f.span(side.other()).spanning.iter().enumerate() {
            t.mat(&format!("C{s} on E{}[{i}]", side.other().symbol()), &f.c_pm(side, x), &x.scale(&neg));
        }
        shown.push(format!("{pos} / {neg}"));
    }
    t.headline(shown.join(", "), "1/(n+ n-) / -(n+-^2-1)/(n+ n-)");
    Ok(())
}

/// `Omega+-` does not depend on the orthogonalization order.
pub fn ext06<S: Scalar>(env: &Env<'_, S>, t: &mut Tally<S>) -> Result<()> {
    let model = env.model;
    let f = &model.fiber;
    let mut rng = env.rng();
    for side in Side::BOTH {
        let spanning: Vec<Mat<S>> = f.span(side).spanning.clone();
        let k = spanning.len();
        let reversed: Vec<usize> = (0..k).rev().collect();
        let mut shuffled: Vec<usize> = (0..k).collect();
        shuffled.shuffle(&mut rng);
        for (name, order) in [("reversed", reversed), ("shuffled", shuffled)] {
            let span = SpanSet::new(spanning.clone(), &order);
            t.require(&format!("{name} basis dimension"), span.dim() == k);
            let om = omega_from_basis(f, &span.orthogonal, &span.norms)?;
            t.form(&format!("Omega{} from {name} order", side.symbol()), &om, model.omega.side(side));
        }
    }
    Ok(())
}
