//! Check bodies, one module per suite. Each is generic over the scalar so the
//! same code runs in exact and float mode.

pub mod curvature;
pub mod exterior;
pub mod fiber;
pub mod invariants;
pub mod jets;
pub mod lie;

use grassmann_core::{GrassmannConfig, Scalar, Side};

/// Number of seeded samples for the randomized fibrewise identities.
pub const SAMPLES: usize = 200;

pub(crate) fn unit<S: Scalar>(d: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); d];
    v[i] = S::one();
    v
}

/// `(n_side, n_other, n)` as integers.
pub(crate) fn side_dims(cfg: &GrassmannConfig, side: Side) -> (i64, i64, i64) {
    let a = cfg.side_dim(side) as i64;
    let b = cfg.side_dim(side.other()) as i64;
    (a, b, a + b)
}
