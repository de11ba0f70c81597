use grassmann_core::curvature::CurvatureModel;
use grassmann_core::exterior::build_omega_forms;
use grassmann_core::matrix::Mat;
use grassmann_core::{FiberModel, GrassmannConfig, Rational, Side};

type Q = Rational;

#[test]
fn omega_contractions_at_2_3() {
    let f = FiberModel::<Q>::new(GrassmannConfig::new(2, 3).unwrap()).unwrap();
    let om = build_omega_forms(&f).unwrap();
    let m = f.metric();
    let w = m.endo_to_form(f.j());
    let c = m.form_contract(&w, &om.plus).unwrap();
    assert_eq!(c, w.scale(&Q::from(-1)));
    assert!(m.form_contract(&w, &om.omega).unwrap().is_zero());
    let a = &f.span(Side::Plus).spanning[0];
    let ca = m.endo_contract(a, &om.plus).unwrap();
    assert_eq!(ca, m.endo_to_form(a).scale(&Q::new(7, 3)));
    assert_eq!(f.c_pm(Side::Plus, f.j()), f.j().scale(&Q::new(-1, 2)));
    assert_eq!(f.c_pm(Side::Plus, a), a.scale(&Q::new(1, 6)));
}

#[test]
fn curvature_on_e_plus_at_2_3() {
    let f = FiberModel::<Q>::new(GrassmannConfig::new(2, 3).unwrap()).unwrap();
    let c = CurvatureModel::new(&f).unwrap();
    for a in &f.span(Side::Plus).spanning {
        assert_eq!(c.apply_endo(&f, a).unwrap(), a.scale(&Q::new(-3, 10)));
    }
    for a in &f.span(Side::Minus).spanning {
        assert_eq!(c.apply_endo(&f, a).unwrap(), a.scale(&Q::new(-1, 5)));
    }
    let k = c.weitzenboeck(&f, grassmann_core::curvature::Bundle::Tangent).unwrap();
    assert_eq!(k, Mat::identity(12).scale(&Q::new(1, 2)));
}
