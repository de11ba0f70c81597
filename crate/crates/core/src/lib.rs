//! Exact fibrewise algebra for the complex Grassmannian `SU(n)/S(U(n+) x U(n-))`.
//!
//! Everything here is computed at the base point from finite-dimensional
//! linear algebra over a generic [`Scalar`]: either the exact [`Rational`]
//! type or `f64`. Nothing allocates outside of `alloc`, so the crate builds
//! without `std`.

#![no_std]

extern crate alloc;

pub mod cubics;
pub mod curvature;
mod error;
pub mod exterior;
pub mod fiber;
pub mod jets;
pub mod lie;
pub mod matrix;
pub mod scalar;

pub use error::{Error, Result};
pub use exterior::{FrameMetric, OmegaForms, PForm};
pub use fiber::{FiberModel, GrassmannConfig, IsotropyVector, Side};
pub use matrix::{CMat, Coeff, Mat};
pub use scalar::{Cx, Rational, Scalar};
