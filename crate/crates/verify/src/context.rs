//! Per-configuration data shared by every check, built once per process.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use grassmann_core::cubics::{PointCubic, PointwiseEvaluator, SuCubicFrame};
use grassmann_core::curvature::CurvatureModel;
use grassmann_core::exterior::build_omega_forms;
use grassmann_core::jets::{calibrate, CalibrationAttempt, JetContext, JetConvention};
use grassmann_core::{FiberModel, GrassmannConfig, OmegaForms, Rational, Scalar, Side};
use rayon::prelude::*;

use crate::error::Result;

/// Cubics whose invariant projections the `invariants` suite reads.
pub const PROJECTED: [PointCubic; 13] = [
    PointCubic::Mu,
    PointCubic::Nu(Side::Plus),
    PointCubic::Nu(Side::Minus),
    PointCubic::Term1,
    PointCubic::Term2,
    PointCubic::Psi,
    PointCubic::NormSqPotential,
    PointCubic::DxNormSqPotential,
    PointCubic::DxPartJxx(Side::Plus),
    PointCubic::DxPartJxx(Side::Minus),
    PointCubic::DxSquareJ { square: Side::Plus, with: Side::Plus },
    PointCubic::DxSquareJ { square: Side::Minus, with: Side::Minus },
    PointCubic::DxSquareJ { square: Side::Plus, with: Side::Minus },
];

/// Invariant coefficients `c[F]` for every cubic in [`PROJECTED`].
#[derive(Clone, Debug)]
pub struct Projections<S: Scalar> {
    values: Vec<S>,
}

impl<S: Scalar> Projections<S> {
    pub fn get(&self, kind: PointCubic) -> &S {
        let idx = PROJECTED.iter().position(|k| *k == kind).expect("projected cubic");
        &self.values[idx]
    }
}

pub struct Model<S: Scalar> {
    pub cfg: GrassmannConfig,
    pub fiber: FiberModel<S>,
    pub omega: OmegaForms<S>,
    pub curvature: CurvatureModel<S>,
    pub conv: JetConvention,
    pub calibration: Vec<CalibrationAttempt>,
    projections: OnceLock<std::result::Result<Projections<S>, grassmann_core::Error>>,
}

impl<S: Scalar> Model<S> {
    pub fn build(cfg: GrassmannConfig) -> Result<Self> {
        let fiber = FiberModel::new(cfg)?;
        let omega = build_omega_forms(&fiber)?;
        let curvature = CurvatureModel::new(&fiber)?;
        let (conv, calibration) = calibrate(&fiber, &omega, &curvature)?;
        Ok(Model { cfg, fiber, omega, curvature, conv, calibration, projections: OnceLock::new() })
    }

    pub fn ctx(&self) -> JetContext<'_, S> {
        JetContext { fiber: &self.fiber, omega: &self.omega, curvature: &self.curvature, conv: self.conv }
    }

    /// Projections of all [`PROJECTED`] cubics, evaluated in parallel on first use.
    pub fn projections(&self) -> grassmann_core::Result<&Projections<S>> {
        self.projections.get_or_init(|| self.compute_projections()).as_ref().map_err(Clone::clone)
    }

    fn compute_projections(&self) -> grassmann_core::Result<Projections<S>> {
        let frame = SuCubicFrame::<S>::new(self.cfg.n())?;
        let eval = PointwiseEvaluator::new(self.ctx());
        let table: Vec<Vec<S>> = (0..frame.points().len())
            .into_par_iter()
            .map(|p| eval.eval(&frame.point_matrix(p), &PROJECTED))
            .collect::<grassmann_core::Result<_>>()?;
        Ok(Projections { values: frame.project_many(&table)? })
    }
}

type Cache<S> = Mutex<HashMap<GrassmannConfig, Arc<Model<S>>>>;

/// Scalars with a process-wide model cache.
pub trait Cached: Scalar {
    fn cache() -> &'static Cache<Self>;

    fn from_rational(r: &Rational) -> Self;
}

impl Cached for Rational {
    fn cache() -> &'static Cache<Self> {
        static CACHE: OnceLock<Cache<Rational>> = OnceLock::new();
        CACHE.get_or_init(Default::default)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Cached for f64 {
    fn cache() -> &'static Cache<Self> {
        static CACHE: OnceLock<Cache<f64>> = OnceLock::new();
        CACHE.get_or_init(Default::default)
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
}

/// The shared model for `cfg`, building it on first request.
pub fn model<S: Cached>(cfg: GrassmannConfig) -> Result<Arc<Model<S>>> {
    if let Some(m) = S::cache().lock().expect("model cache poisoned").get(&cfg) {
        return Ok(Arc::clone(m));
    }
    let built = Arc::new(Model::build(cfg)?);
    let mut cache = S::cache().lock().expect("model cache poisoned");
    Ok(Arc::clone(cache.entry(cfg).or_insert(built)))
}
