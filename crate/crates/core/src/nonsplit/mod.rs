//! Non-split Bessel functions: the explicit lowest weight vector, its
//! differential-operator description on the chart, and the K-type ladder.

mod coefficients;
mod ladder;
mod operators;
mod pde;
mod transport;

use serde::{Deserialize, Serialize};

pub use coefficients::{
    chart_derivative_coefficients, verify_coefficients, CoefficientReport, COEFFICIENT_NAMES,
};
pub use ladder::{
    chart_sample, ladder, ladder_closed_form, ladder_jet, ladder_jet_with_order,
    linear_independence_check, word_shape_check, word_value, GramReport, LadderSample, LadderVector, LadderWord,
    Letter, ShapeReport,
};
pub use operators::{apply_operator, operator_rhs, operator_terms, ChartOperator};
pub(crate) use operators::apply_terms;
pub use pde::{c1_residuals, pde_residuals, pde_residuals_of};
pub use transport::{ChangeOfModel, Twist};

use crate::error::{Error, Result};
use crate::group::{j_factor_t, multiplier_entry, trace_at_i_t, w_poly_t};
use crate::jets::{ChartFunction, GroupFunction};
use crate::matrix::{CMat2, Mat4};
use crate::scalar::{c, Scalar, C64, I};

/// The character `γ·R(δ) ↦ γ^s·e^{imδ}` of the non-split torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselCharacter {
    pub s: C64,
    pub m: i32,
}

impl BesselCharacter {
    pub fn new(s: C64, m: i32) -> Self {
        BesselCharacter { s, m }
    }

    pub fn eval(&self, gamma: f64, delta: f64) -> C64 {
        c(gamma).powc(self.s) * (I * (self.m as f64 * delta)).exp()
    }
}

/// `θ(u) = e^{2πi(ax + by + cz)}` for `S = [[a, b/2], [b/2, c]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaChar {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ThetaChar {
    pub const NONSPLIT: ThetaChar = ThetaChar { a: 1.0, b: 0.0, c: 1.0 };
    pub const SPLIT: ThetaChar = ThetaChar { a: 1.0, b: 0.0, c: -1.0 };

    pub fn eval(&self, x: f64, y: f64, z: f64) -> C64 {
        (I * (2.0 * std::f64::consts::PI * (self.a * x + self.b * y + self.c * z))).exp()
    }

    pub fn det(&self) -> f64 {
        self.a * self.c - self.b * self.b / 4.0
    }
}

/// Minimal K-type `(l, l′)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPair {
    pub l: i32,
    pub lp: i32,
}

impl WeightPair {
    pub fn new(l: i32, lp: i32) -> Result<WeightPair> {
        if lp < 1 {
            return Err(Error::InvalidWeights { l, lp, reason: "l' must be at least 1" });
        }
        if l < lp {
            return Err(Error::InvalidWeights { l, lp, reason: "l must be at least l'" });
        }
        Ok(WeightPair { l, lp })
    }
}

/// Dimension (0 or 1) of the space of Bessel functions with minimal K-type
/// `(l, l′)` and torus character index `m`.
pub fn exists_dimension(l: i32, lp: i32, m: i32) -> Result<u8> {
    WeightPair::new(l, lp)?;
    Ok(((l + lp + m) % 2 == 0 && m.abs() <= l - lp) as u8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum C1Form {
    First,
    Second,
}

fn half_even(n: i32, what: &'static str) -> Result<i32> {
    if n % 2 != 0 {
        return Err(Error::SingularBase { what });
    }
    Ok(n / 2)
}

/// `ζ±1` pieces shared by both forms of the λ-independent factor.
fn c_pm<T: Scalar>(zeta: &T, p1: &T, p2: &T) -> Result<(T, T, T)> {
    let zi = zeta.recip()?;
    let (c1, s1) = (p1.cos(), p1.sin());
    let (c2, s2) = (p2.cos(), p2.sin());
    let a = c1.times(&c2) + s1.times(&s2).scale(I);
    let b = c1.times(&s2) + s1.times(&c2).scale(I);
    let cp = zeta.times(&a) + zi.times(&b);
    let cm = zeta.times(&a) - zi.times(&b);
    let z2 = zeta.square();
    let zm2 = zi.square();
    let p1d = p1.scale(c(2.0));
    let p2d = p2.scale(c(2.0));
    let w = (z2.minus(&zm2)).times(&(p1d.cos() + p1d.sin().times(&p2d.sin()).scale(I)))
        + (z2 + zm2).times(&p2d.cos());
    Ok((cp, cm, w))
}

/// The λ-independent factor `c₁(ζ, φ₁, φ₂)` of the lowest weight vector.
pub fn c1_t<T: Scalar>(zeta: &T, p1: &T, p2: &T, l: i32, lp: i32, m: i32, form: C1Form) -> Result<T> {
    let (cp, cm, w) = c_pm(zeta, p1, p2)?;
    match form {
        C1Form::First => {
            let e = half_even(l - lp - m, "c1 needs l - l' - m even")?;
            Ok(pow_checked(&cp, m, "C+")?.times(&pow_checked(&w, e, "W")?))
        }
        C1Form::Second => {
            let e = half_even(l - lp + m, "c1 needs l - l' + m even")?;
            let pre = c(2f64.powi(-m));
            Ok(pow_checked(&cm, -m, "C-")?
                .times(&pow_checked(&w, e, "W")?)
                .scale(pre))
        }
    }
}

fn pow_checked<T: Scalar>(b: &T, n: i32, what: &'static str) -> Result<T> {
    if n < 0 && b.value().norm() == 0.0 {
        return Err(Error::SingularBase { what });
    }
    b.powi(n).map_err(|_| Error::SingularBase { what })
}

pub fn c1(zeta: f64, phi1: f64, phi2: f64, l: i32, lp: i32, m: i32, form: C1Form) -> Result<C64> {
    c1_t(&c(zeta), &c(phi1), &c(phi2), l, lp, m, form)
}

/// Parameters of the lowest weight Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselParams {
    pub l: i32,
    pub lp: i32,
    pub m: i32,
    pub s: C64,
}

impl BesselParams {
    pub fn new(l: i32, lp: i32, m: i32, s: C64) -> Result<BesselParams> {
        if exists_dimension(l, lp, m)? == 0 {
            return Err(Error::NotRepresentable { l, lp, m });
        }
        Ok(BesselParams { l, lp, m, s })
    }

    pub fn character(&self) -> BesselCharacter {
        BesselCharacter::new(self.s, self.m)
    }

    fn lambda_exponent(&self) -> C64 {
        (c((self.l + self.lp) as f64) + self.s) * 0.5
    }
}

/// `B₀` on the chart: `c₁·λ^{(l+l′+s)/2}·e^{−2πλ(ζ²+ζ⁻²)}` for λ > 0, zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct B0Coords(pub BesselParams);

impl ChartFunction for B0Coords {
    fn eval<T: Scalar>(&self, x: &[T; 4]) -> Result<T> {
        let p = &self.0;
        let [lam, zeta, p1, p2] = x;
        if lam.value().re <= 0.0 {
            return Ok(lam.zero_like());
        }
        let cc = c1_t(zeta, p1, p2, p.l, p.lp, p.m, C1Form::First)?;
        let zi = zeta.recip()?;
        let expo = lam
            .times(&(zeta.square() + zi.square()))
            .scale(c(-2.0 * std::f64::consts::PI))
            .exp();
        Ok(cc.times(&lam.powc(p.lambda_exponent())?).times(&expo))
    }
}

/// `B₀` on the whole group, built from the multiplier, `det J(h, iI)`, the
/// polynomial `w(h)` and one entry combination of `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct B0Global(pub BesselParams);

/// `h₄₄ − h₃₂ + i·h₄₂ + i·h₃₄` and its partner for negative `m`.
fn entry_combination<T: Scalar>(h: &Mat4<T>, negative_m: bool) -> T {
    let g = &h.0;
    if negative_m {
        g[3][3].plus(&g[2][1]) + g[3][1].scale(I) - g[2][3].scale(I)
    } else {
        g[3][3].minus(&g[2][1]) + g[3][1].scale(I) + g[2][3].scale(I)
    }
}

impl GroupFunction for B0Global {
    fn eval<T: Scalar>(&self, h: &Mat4<T>) -> Result<T> {
        let p = &self.0;
        let mu = multiplier_entry(h);
        if mu.value().re <= 0.0 {
            return Ok(mu.zero_like());
        }
        let am = p.m.abs();
        let mu_exp = c(p.lp as f64) + p.s * 0.5 + c(am as f64 * 0.5);
        let jdet = j_factor_t(h, &CMat2::diag(I, I)).det();
        let w = w_poly_t(h);
        let e = entry_combination(h, p.m < 0);
        let tr = trace_at_i_t(h)?;
        let mut out = mu
            .powc(mu_exp)?
            .times(&jdet.powi(-p.l)?)
            .times(&w.powi((p.l - p.lp - am) / 2)?)
            .times(&e.powi(am)?)
            .times(&tr.scale(I * 2.0 * std::f64::consts::PI).exp());
        if p.m < 0 {
            out = out.scale(c(2f64.powi(am)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{chart_element, ChartPoint};
    use crate::jets::{chart_jet, GroupFunction};
    use std::f64::consts::PI;

    #[test]
    fn existence_examples() {
        assert_eq!(exists_dimension(4, 2, 0).unwrap(), 1);
        assert_eq!(exists_dimension(4, 2, 3).unwrap(), 0);
        assert_eq!(exists_dimension(4, 2, 4).unwrap(), 0);
        assert!(matches!(exists_dimension(2, 3, 0), Err(Error::InvalidWeights { .. })));
        assert!(matches!(exists_dimension(2, 0, 0), Err(Error::InvalidWeights { .. })));
    }

    #[test]
    fn c1_special_values() {
        let z = 1.3f64;
        for (l, lp, m) in [(6, 2, 2), (5, 1, 0), (7, 2, -1)] {
            let v = c1(z, 0.0, 0.0, l, lp, m, C1Form::First).unwrap();
            let want = z.powi(m) * (2.0 * z * z).powi((l - lp - m) / 2);
            assert!((v - want).norm() < 1e-12 * want.abs());
        }
        let p2 = 0.3f64;
        let v = c1(1.0, 0.0, p2, 6, 2, 0, C1Form::First).unwrap();
        assert!((v - c((2.0 * (2.0 * p2).cos()).powi(2))).norm() < 1e-13);
    }

    #[test]
    fn c1_forms_agree() {
        for (z, a, b) in [(1.4, 0.2, -0.3), (0.7, 1.1, 0.4), (2.2, -0.5, 0.05)] {
            for m in -3..=3 {
                let f1 = c1(z, a, b, 9, 2, m, C1Form::First);
                let f2 = c1(z, a, b, 9, 2, m, C1Form::Second);
                if (9 + 2 + m) % 2 == 0 {
                    let (f1, f2) = (f1.unwrap(), f2.unwrap());
                    assert!((f1 - f2).norm() < 1e-12 * f1.norm(), "m = {m}");
                } else {
                    assert!(f1.is_err() && f2.is_err());
                }
            }
        }
    }

    #[test]
    fn b0_coords_examples() {
        let p = BesselParams::new(6, 2, 0, c(0.0)).unwrap();
        let v = B0Coords(p).eval(&[c(-1.0), c(1.2), c(0.1), c(0.2)]).unwrap();
        assert_eq!(v, c(0.0));
        let lam = 0.8;
        let v = B0Coords(p).eval(&[c(lam), c(1.0), c(0.0), c(0.0)]).unwrap();
        let want = 2f64.powi(2) * lam.powi(4) * (-4.0 * PI * lam).exp();
        assert!((v - want).norm() < 1e-14 * want);
        assert!(matches!(
            BesselParams::new(4, 2, 3, c(0.0)),
            Err(Error::NotRepresentable { .. })
        ));
    }

    #[test]
    fn global_matches_chart_both_signs_of_m() {
        for (l, lp, m) in [(7, 3, 2), (7, 3, -2), (6, 2, 0), (8, 3, -3), (8, 3, 3)] {
            let p = BesselParams::new(l, lp, m, C64::new(0.3, 0.7)).unwrap();
            for pt in [(1.1, 1.3, 0.2, -0.1), (0.6, 0.8, -0.4, 0.3), (1.7, 2.1, 0.9, 0.5)] {
                let cp = ChartPoint::nonsplit(pt.0, pt.1, pt.2, pt.3);
                let g = chart_element(&cp).unwrap();
                let a = B0Global(p).eval_at(&g.mat).unwrap();
                let b = B0Coords(p).eval(&cp.coords().map(c)).unwrap();
                assert!((a - b).norm() < 1e-10 * b.norm(), "{l} {lp} {m}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn global_vanishes_on_negative_multiplier() {
        let p = BesselParams::new(6, 2, 0, c(0.0)).unwrap();
        let g = crate::matrix::RMat4::diag([1.0, 1.0, -1.0, -1.0]);
        assert_eq!(B0Global(p).eval_at(&g).unwrap(), c(0.0));
    }

    #[test]
    fn chart_jet_exponential_factor() {
        struct E;
        impl ChartFunction for E {
            fn eval<T: Scalar>(&self, x: &[T; 4]) -> Result<T> {
                let zi = x[1].recip()?;
                Ok(x[0]
                    .times(&(x[1].square() + zi.square()))
                    .scale(c(-2.0 * PI))
                    .exp())
            }
        }
        let (lam, z) = (0.9, 1.4);
        let j = chart_jet(&E, &ChartPoint::nonsplit(lam, z, 0.0, 0.0), 3).unwrap();
        let ratio = j.coeff(&[0, 1, 0, 0]) / j.value();
        let want = -2.0 * PI * lam * (2.0 * z - 2.0 * z.powi(-3));
        assert!((ratio - want).norm() < 1e-12 * want.abs());
    }
}
