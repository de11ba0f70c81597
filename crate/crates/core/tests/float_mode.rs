use grassmann_core::cubics::{PointCubic, PointwiseEvaluator, SuCubicFrame};
use grassmann_core::curvature::CurvatureModel;
use grassmann_core::exterior::build_omega_forms;
use grassmann_core::jets::{calibrate, JetContext, JetConvention};
use grassmann_core::{FiberModel, GrassmannConfig, Side};

#[test]
fn float_pipeline_matches_exact_ratios() {
    let fiber = FiberModel::<f64>::new(GrassmannConfig::new(2, 3).unwrap()).unwrap();
    let omega = build_omega_forms(&fiber).unwrap();
    let curv = CurvatureModel::new(&fiber).unwrap();
    assert_eq!(curv.sign(), -1);
    let (conv, _) = calibrate(&fiber, &omega, &curv).unwrap();
    assert_eq!(conv, JetConvention { sigma: 1, dx_scale: 2 });
    let ctx = JetContext { fiber: &fiber, omega: &omega, curvature: &curv, conv };
    let eval = PointwiseEvaluator::new(ctx);
    let frame = SuCubicFrame::<f64>::new(5).unwrap();
    let kinds = [PointCubic::Mu, PointCubic::Nu(Side::Plus), PointCubic::Psi];
    let values: Vec<Vec<f64>> =
        (0..frame.points().len()).map(|i| eval.eval(&frame.point_matrix(i), &kinds).unwrap()).collect();
    let c = frame.project_many(&values).unwrap();
    assert!((c[1] / c[0] - 0.9).abs() < 1e-9);
    assert!((c[2] / c[0] + 80.0 / 3.0).abs() < 1e-9);
}
