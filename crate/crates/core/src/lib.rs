//! Bessel models on GSp(4,ℝ): group and Lie-algebra primitives, jet-based
//! differentiation, explicit Bessel functions in the non-split and split cases,
//! and the archimedean zeta integral.

pub mod config;
pub mod error;
pub mod group;
pub mod jets;
pub mod lie;
pub mod matrix;
pub mod nonsplit;
pub mod scalar;
pub mod split;
pub mod zeta;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use group::{ChartPoint, CosetCoords, Flavor, GroupElement, SiegelPoint};
pub use jets::{ChartFunction, GroupFunction, Jet, JetShape};
pub use matrix::{CMat2, CMat4, Mat2, Mat4, RMat4};
pub use scalar::{Scalar, C64};
