//! Numerics for α-harmonic functions on the unit ball `B^n`: the Poisson–Szegő kernel
//! `P_α` and its extension operator, the sharp Schwarz–Pick gradient constants in every
//! exponent regime, and the Landau univalence radius.
//!
//! Every routine is generic over the scalar through [`Real`]; the `*64` aliases fix it
//! to `f64`.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hypergeom;
pub mod kernel;
pub mod landau;
pub mod matrix;
pub mod poisson;
pub mod real;
pub mod sharp_bounds;
pub mod sphere;

pub use error::{Error, Result};
pub use real::Real;

pub type ProblemParams64 = kernel::ProblemParams<f64>;
pub type BallPoint64 = kernel::BallPoint<f64>;
pub type UnitDirection64 = kernel::UnitDirection<f64>;
pub type BoundaryData64 = poisson::BoundaryData<f64>;
pub type Matrix64 = matrix::Matrix<f64>;
pub type Extension64 = poisson::Extension<f64>;
pub type ExponentPair64 = sharp_bounds::ExponentPair<f64>;
pub type BoundValue64 = sharp_bounds::BoundValue<f64>;
pub type LandauResult64 = landau::LandauResult<f64>;
pub type TabulatedData64 = poisson::TabulatedData<f64>;
