use grassmann_core::cubics::{
    p0_eval, p0_eval3, q_classify, q_membership, CubicForm, PointCubic, PointwiseEvaluator, SuCubicFrame,
    VarietyOutcome, P0, P1,
};
use grassmann_core::curvature::CurvatureModel;
use grassmann_core::exterior::{build_omega_forms, OmegaForms};
use grassmann_core::jets::{calibrate, JetContext, JetConvention};
use grassmann_core::{CMat, Cx, Error, FiberModel, GrassmannConfig, Mat, Rational, Side};

type Q = Rational;

fn diag_i(entries: &[i64]) -> CMat<Q> {
    let d: Vec<Cx<Q>> = entries.iter().map(|&e| Cx::new(Q::from(0), Q::from(e))).collect();
    Mat::diagonal(&d)
}

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

const KINDS: [PointCubic; 6] = [
    PointCubic::Mu,
    PointCubic::Nu(Side::Plus),
    PointCubic::Nu(Side::Minus),
    PointCubic::Term1,
    PointCubic::Term2,
    PointCubic::Psi,
];

fn project(p: usize, q: usize) -> Vec<Q> {
    let s = Setup::new(p, q);
    let eval = PointwiseEvaluator::new(s.ctx());
    let frame = SuCubicFrame::<Q>::new(p + q).unwrap();
    let values: Vec<Vec<Q>> =
        (0..frame.points().len()).map(|i| eval.eval(&frame.point_matrix(i), &KINDS).unwrap()).collect();
    frame.project_many(&values).unwrap()
}

#[test]
fn p0_examples() {
    assert_eq!(p0_eval(&diag_i(&[1, -1, 0])).unwrap(), Q::from(0));
    assert_eq!(p0_eval(&diag_i(&[2, -1, -1])).unwrap(), Q::from(6));
    assert!(matches!(p0_eval(&diag_i(&[1, 1, 0])), Err(Error::InvalidParameter(_))));
    let x = diag_i(&[3, -1, -2]);
    let frame = SuCubicFrame::<Q>::new(3).unwrap();
    let y = frame.point_matrix(5);
    assert_eq!(p0_eval3(&y, &y, &y).unwrap(), p0_eval(&y).unwrap());
    assert_eq!(p0_eval3(&x, &x, &x).unwrap(), p0_eval(&x).unwrap());
}

#[test]
fn sym3_examples() {
    let frame = SuCubicFrame::<Q>::new(3).unwrap();
    assert!(frame.sym3_inner(&P0, &P0).unwrap() > Q::from(0));
    assert_eq!(frame.sym3_inner(&P0, &P0).unwrap(), *frame.p0_norm());
    let zero = |_: &CMat<Q>| -> grassmann_core::Result<Q> { Ok(Q::from(0)) };
    assert_eq!(frame.sym3_inner(&P0, &zero).unwrap(), Q::from(0));
    assert_eq!(frame.invariant_coeff(&P0).unwrap(), Q::from(1));

    let f5 = SuCubicFrame::<Q>::new(5).unwrap();
    let p1 = P1 { cfg: GrassmannConfig::new(2, 3).unwrap(), side: Side::Plus };
    assert_ne!(f5.sym3_inner(&p1, &P0).unwrap(), Q::from(0));
    assert_eq!(f5.sym3_inner(&p1, &P0).unwrap(), f5.invariant_coeff(&p1).unwrap() * f5.p0_norm().clone());
}

#[test]
fn obstruction_ratios_at_2_3() {
    let c = project(2, 3);
    let (mu, nup, num, t1, t2, psi) = (&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]);
    assert_ne!(*mu, Q::from(0));
    assert_eq!(nup.clone() / mu.clone(), Q::new(9, 10));
    assert_eq!(num.clone() / mu.clone(), Q::new(-16, 15));
    assert_eq!(t1.clone() / mu.clone(), Q::new(-58, 9));
    assert_eq!(t2.clone() / mu.clone(), Q::from(-3));
    assert_eq!(psi.clone() / mu.clone(), Q::new(-80, 3));
}

#[test]
fn obstruction_ratios_at_2_2() {
    let c = project(2, 2);
    let (mu, nup, num, t1, t2, psi) = (&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]);
    assert_eq!(*mu, Q::from(0));
    assert_eq!(num.clone(), -nup.clone());
    assert_eq!(t1.clone() / nup.clone(), Q::new(-27, 16));
    assert_eq!(*t2, Q::from(0));
    assert_eq!(psi.clone() / nup.clone(), Q::new(-81, 8));
}

#[test]
fn pointwise_cubics_vanish_on_block_generators() {
    let s = Setup::new(2, 3);
    let eval = PointwiseEvaluator::new(s.ctx());
    let x = diag_i(&[1, -1, 0, 0, 0]);
    let v = eval.eval(&x, &[PointCubic::Nu(Side::Plus), PointCubic::Nu(Side::Minus)]).unwrap();
    assert_eq!(v, vec![Q::from(0), Q::from(0)]);
    assert_eq!(eval.cubic(PointCubic::Mu).eval(&x).unwrap(), Q::from(0));
}

#[test]
fn variety_membership_examples() {
    assert!(q_membership(&Mat::<Cx<Q>>::zeros(3, 3)).unwrap().defining);
    let m = q_membership(&diag_i(&[1, 1, -1, -1])).unwrap();
    assert!(m.defining && m.gradient);
    let m = q_membership(&diag_i(&[2, -1, -1])).unwrap();
    assert!(!m.defining && !m.gradient);
    let re = |v: i64| Cx::new(Q::from(v), Q::from(0));
    assert_eq!(m.residual, Mat::diagonal(&[re(-2), re(1), re(1)]));
}

#[test]
fn variety_classification() {
    for n in 2..=7 {
        let r = q_classify::<Q>(n).unwrap();
        let want = if n % 2 == 0 { VarietyOutcome::ConeFamily } else { VarietyOutcome::Trivial };
        assert_eq!(r.outcome, want, "n = {n}");
        assert!(r.all_witnesses_pass);
    }
}
