use grassmann_core::curvature::CurvatureModel;
use grassmann_core::exterior::{build_omega_forms, OmegaForms};
use grassmann_core::jets::{
    calibrate, derivative_along, equivariant_derivative, exterior_ops_at_o, jet_at_o, laplacian_at_o, Field,
    JetContext, JetConvention,
};
use grassmann_core::lie::su_basis;
use grassmann_core::{CMat, Error, FiberModel, GrassmannConfig, PForm, Rational, Side};

type Q = Rational;

struct Setup {
    fiber: FiberModel<Q>,
    omega: OmegaForms<Q>,
    curv: CurvatureModel<Q>,
    conv: JetConvention,
}

impl Setup {
    fn new(p: usize, q: usize) -> Self {
        let fiber = FiberModel::new(GrassmannConfig::new(p, q).unwrap()).unwrap();
        let omega = build_omega_forms(&fiber).unwrap();
        let curv = CurvatureModel::new(&fiber).unwrap();
        let (conv, _) = calibrate(&fiber, &omega, &curv).unwrap();
        Setup { fiber, omega, curv, conv }
    }

    fn ctx(&self) -> JetContext<'_, Q> {
        JetContext { fiber: &self.fiber, omega: &self.omega, curvature: &self.curv, conv: self.conv }
    }
}

/// A fixed su(n) element touching every basis direction.
fn generic_x(n: usize) -> CMat<Q> {
    let b = su_basis::<Q>(n).unwrap();
    let c: Vec<Q> = (0..b.dim()).map(|k| Q::new((k as i64 * 7 + 3) % 11 - 5, 1 + (k as i64 % 3))).collect();
    b.combine(&c)
}

fn unit(d: usize, i: usize) -> Vec<Q> {
    let mut y = vec![Q::from(0); d];
    y[i] = Q::from(1);
    y
}

#[test]
fn calibration_picks_doubled_positive_convention() {
    let s = Setup::new(2, 3);
    assert_eq!(s.conv, JetConvention { sigma: 1, dx_scale: 2 });
}

#[test]
fn potential_is_a_laplace_eigenfunction() {
    let s = Setup::new(2, 3);
    let ctx = s.ctx();
    let x = generic_x(5);
    let z = jet_at_o(&ctx, &x).unwrap().z;
    assert_ne!(z, Q::from(0));
    assert_eq!(laplacian_at_o(&ctx, &Field::Potential, &x).unwrap(), PForm::scalar(z));
}

#[test]
fn e_form_identities() {
    let s = Setup::new(2, 3);
    let ctx = s.ctx();
    let x = generic_x(5);
    let jet = jet_at_o(&ctx, &x).unwrap();
    let (d, dstar) = exterior_ops_at_o(&ctx, &Field::EForm, &x).unwrap();
    assert_eq!(d, s.omega.omega.vec_contract(&jet.xm).unwrap());
    assert!(dstar.is_zero());
    let e = Field::EForm.eval(&ctx, &jet).unwrap();
    assert!(!e.is_zero());
    assert_eq!(laplacian_at_o(&ctx, &Field::EForm, &x).unwrap(), e);
}

#[test]
fn gradient_of_norm_and_dx_parts() {
    let s = Setup::new(2, 3);
    let ctx = s.ctx();
    let cfg = *s.fiber.cfg();
    let (p, q, n) = (cfg.n_plus() as i64, cfg.n_minus() as i64, cfg.n() as i64);
    let x = generic_x(5);
    let jet = jet_at_o(&ctx, &x).unwrap();
    let m = s.fiber.metric();

    let (d_norm, _) = exterior_ops_at_o(&ctx, &Field::NormSq, &x).unwrap();
    let x_dx = m.endo_to_form(&jet.dx).vec_contract(&jet.xm).unwrap();
    assert_eq!(d_norm, x_dx.neg());

    for side in Side::BOTH {
        let other = if side == Side::Plus { q } else { p };
        let (d_part, _) = exterior_ops_at_o(&ctx, &Field::DxPart(side), &x).unwrap();
        let target = s.omega.side(side).vec_contract(&jet.xm).unwrap().scale(&Q::new(other, 2 * n));
        assert_eq!(d_part, target, "d(dX){}", side.symbol());

        let part = jet.part(&s.fiber, side).clone();
        let px = part.matvec(&jet.xm);
        for i in 0..s.fiber.dim() {
            let grad = derivative_along(&ctx, &Field::DxPartNormSq(side), &x, &unit(12, i), 1).unwrap();
            let want = m.inner_vec(&px, &unit(12, i)) * Q::new(2 * other, n);
            assert_eq!(grad.as_scalar().unwrap(), want);
        }
    }
}

#[test]
fn moment_combination_is_constant() {
    let s = Setup::new(2, 3);
    let ctx = s.ctx();
    let (p, q, n) = (2, 3, 5);
    let f = Field::Sum(vec![
        Field::NormSq,
        Field::Potential.wedge(Field::Potential).scaled(Q::new(1, 2 * p * q)),
        Field::DxPartNormSq(Side::Plus).scaled(Q::new(n, 2 * q)),
        Field::DxPartNormSq(Side::Minus).scaled(Q::new(n, 2 * p)),
    ]);
    let x = generic_x(5);
    let (d, _) = exterior_ops_at_o(&ctx, &f, &x).unwrap();
    assert!(d.is_zero());
}

#[test]
fn rejects_bad_directions_and_orders() {
    let s = Setup::new(2, 3);
    let ctx = s.ctx();
    let x = generic_x(5);
    let y = generic_x(5);
    assert!(matches!(equivariant_derivative(&ctx, &Field::Potential, &x, &y, 1), Err(Error::InvalidParameter(_))));
    let ym = grassmann_core::IsotropyVector::from_coords(s.fiber.cfg(), &unit(12, 3)).unwrap().embed();
    assert!(equivariant_derivative(&ctx, &Field::Potential, &x, &ym, 1).is_ok());
    assert!(matches!(equivariant_derivative(&ctx, &Field::Potential, &x, &ym, 3), Err(Error::Unsupported(_))));
    let quartic = Field::NormSq.wedge(Field::NormSq);
    assert!(matches!(derivative_along(&ctx, &quartic, &x, &unit(12, 0), 1), Err(Error::Unsupported(_))));
}
