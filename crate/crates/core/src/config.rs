//! Numerical tolerances shared by the solvers and verification routines.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative residual accepted by [`crate::group::multiplier`].
    pub similitude: f64,
    /// Determinant threshold below which `CZ+D` is treated as singular.
    pub automorphy_det: f64,
    /// Relative Frobenius residual at which the coset Newton solve stops.
    pub newton_residual: f64,
    pub newton_max_iter: usize,
    /// Least-squares residual defining membership in the Lie algebra.
    pub algebra_membership: f64,
    /// Relative tolerance for one-dimensional and double quadrature.
    pub quadrature: f64,
    /// Fit residual accepted by the ladder shape extraction.
    pub shape_fit: f64,
    /// Relative accuracy target for the Whittaker function.
    pub whittaker: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            similitude: 1e-12,
            automorphy_det: 1e-300,
            newton_residual: 1e-14,
            newton_max_iter: 50,
            algebra_membership: 1e-10,
            quadrature: 1e-10,
            shape_fit: 1e-7,
            whittaker: 1e-11,
        }
    }
}
