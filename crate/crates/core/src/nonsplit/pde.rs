//! First-order PDE system characterising the lowest weight vector on the chart.

use std::f64::consts::PI;

use super::{c1_t, B0Coords, BesselParams, C1Form};
use crate::error::{Error, Result};
use crate::group::ChartPoint;
use crate::jets::{chart_jet, ChartFunction};
use crate::scalar::{c, Scalar, C64, I};

/// Right-hand side factors `R_v` with `∂_v f = R_v·f`, excluding the λ-terms when
/// `with_lambda` is false (the system satisfied by `c₁`).
fn rhs_factors(p: &ChartPoint, prm: &BesselParams, with_lambda: bool) -> Result<[C64; 4]> {
    let (lam, z) = (p.lambda, p.zeta);
    let (s1, c1) = (2.0 * p.phi1).sin_cos();
    let (s2, c2) = (2.0 * p.phi2).sin_cos();
    let z4 = z.powi(4);
    let den = c(z4 - 1.0) * C64::new(c1, s1 * s2) + c((z4 + 1.0) * c2);
    if den.norm() < 1e-12 {
        return Err(Error::ChartSingularity { what: "PDE denominator vanishes" });
    }
    let (m, dl) = (prm.m as f64, (prm.l - prm.lp) as f64);
    let f_lambda = (c((prm.l + prm.lp) as f64) + prm.s) / (2.0 * lam) - 2.0 * PI * (z * z + z.powi(-2));
    let mut f_zeta = (-2.0 * m * z * C64::new(c1 * s2, s1)
        + (dl / z) * ((z4 + 1.0) * C64::new(c1, s1 * s2) + c((z4 - 1.0) * c2)))
        / den;
    if with_lambda {
        f_zeta -= 4.0 * PI * lam * (z - z.powi(-3));
    }
    let f_phi1 = (2.0 * I * m * z * z * c2 - dl * (z4 - 1.0) * C64::new(s1, -c1 * s2)) / den;
    let f_phi2 = (c(2.0 * m * z * z) - dl * C64::new((z4 + 1.0) * s2, -(z4 - 1.0) * s1 * c2)) / den;
    Ok([f_lambda, f_zeta, f_phi1, f_phi2])
}

/// Relative residuals `(∂_v f − R_v f)/|f|` of the four chart equations for `f`.
pub fn pde_residuals_of<F: ChartFunction>(f: &F, p: &ChartPoint, prm: &BesselParams) -> Result<[f64; 4]> {
    let j = chart_jet(f, p, 1)?;
    let r = rhs_factors(p, prm, true)?;
    let v = j.value();
    if v.norm() == 0.0 {
        return Err(Error::ChartSingularity { what: "function vanishes at the sample point" });
    }
    Ok(std::array::from_fn(|k| {
        let mut e = [0; 4];
        e[k] = 1;
        (j.coeff(&e) - r[k] * v).norm() / v.norm()
    }))
}

/// Residuals of the chart PDE system for the lowest weight vector.
pub fn pde_residuals(p: &ChartPoint, prm: &BesselParams) -> Result<[f64; 4]> {
    pde_residuals_of(&B0Coords(*prm), p, prm)
}

struct C1Chart(BesselParams);

impl ChartFunction for C1Chart {
    fn eval<T: Scalar>(&self, x: &[T; 4]) -> Result<T> {
        c1_t(&x[1], &x[2], &x[3], self.0.l, self.0.lp, self.0.m, C1Form::First)
    }
}

/// Residuals of the λ-free equations in `ζ, φ₁, φ₂` for `c₁`.
pub fn c1_residuals(p: &ChartPoint, prm: &BesselParams) -> Result<[f64; 3]> {
    let j = chart_jet(&C1Chart(*prm), p, 1)?;
    let r = rhs_factors(p, prm, false)?;
    let v = j.value();
    Ok(std::array::from_fn(|k| {
        let mut e = [0; 4];
        e[k + 1] = 1;
        (j.coeff(&e) - r[k + 1] * v).norm() / v.norm()
    }))
}
