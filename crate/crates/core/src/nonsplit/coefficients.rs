//! Derivatives at `t = 0` of the coset coordinates of `h(λ,ζ,φ₁,φ₂)·exp(tL)` for
//! the real basis, in closed form and by finite differences through Newton.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{chart_element, coset_decompose_from, ChartPoint, CosetCoords, Flavor, GroupElement};
use crate::lie::BasisTag;

/// Entry names in the order used by [`chart_derivative_coefficients`].
pub const COEFFICIENT_NAMES: [&str; 11] =
    ["gamma", "delta", "lambda", "zeta", "x", "y", "z", "phi1", "phi2", "phi3", "phi4"];

/// Maps the entry order above to [`CosetCoords::to_vec`] positions.
const COSET_INDEX: [usize; 11] = [0, 1, 5, 6, 2, 3, 4, 7, 8, 9, 10];

/// Closed-form derivatives `(γ′, δ′, λ′, ζ′, x′, y′, z′, φ₁′, φ₂′, φ₃′, φ₄′)` at `t = 0`.
pub fn chart_derivative_coefficients(tag: BasisTag, p: &ChartPoint) -> Result<[f64; 11]> {
    if !tag.is_real() {
        return Err(Error::ParameterRegionUnsupported {
            what: format!("{} is not a real basis element", tag.name()),
        });
    }
    let (lam, z) = (p.lambda, p.zeta);
    let (s1, c1) = (2.0 * p.phi1).sin_cos();
    let (s2, c2) = (2.0 * p.phi2).sin_cos();
    let (sp, cp) = p.phi2.sin_cos();
    let z2 = z * z;
    let z4 = z2 * z2;
    if (z4 - 1.0).abs() < 1e-12 && !matches!(tag, BasisTag::Q | BasisTag::Qp) {
        return Err(Error::ChartSingularity { what: "zeta^4 = 1" });
    }
    if c2.abs() < 1e-12 {
        return Err(Error::ChartSingularity { what: "cos(2 phi2) = 0" });
    }
    let t2 = s2 / c2;
    let q = (z4 + 1.0) / (z4 - 1.0);
    use BasisTag::*;
    let v = match tag {
        H1 | H2 => {
            let sg = if tag == H1 { 1.0 } else { -1.0 };
            [
                -0.5 * c2,
                sg * z2 * s1 / (z4 - 1.0),
                lam * c2,
                sg * 0.5 * z * c1,
                -z2 * lam * s1 * s2,
                -lam * c1 * s2,
                lam * s1 * s2 / z2,
                -sg * q * s1 / 2.0,
                0.5 * s2,
                0.0,
                0.0,
            ]
        }
        F | G => [
            0.0,
            z2 * c1 * s2 / (2.0 * (1.0 - z4)),
            0.0,
            z / 4.0 * s1 * s2,
            0.5 * z2 * lam * (c1 + c2),
            -lam / 2.0 * s1,
            lam * (c2 - c1) / (2.0 * z2),
            0.25 * t2 + q / 4.0 * c1 * s2,
            0.0,
            if tag == F { -sp.powi(4) / c2 } else { -cp.powi(4) / c2 },
            0.25 * s2 * t2,
        ],
        R | Rp => [
            0.0,
            z2 * c1 * s2 / (2.0 * (1.0 - z4)),
            0.0,
            z / 4.0 * s1 * s2,
            0.5 * z2 * lam * (c2 - c1),
            lam / 2.0 * s1,
            lam * (c2 + c1) / (2.0 * z2),
            -0.25 * t2 + q / 4.0 * c1 * s2,
            0.0,
            s2 * s2 / (4.0 * c2),
            if tag == R { -sp.powi(4) / c2 } else { -cp.powi(4) / c2 },
        ],
        P | Pp => {
            let sg = if tag == P { -1.0 } else { 1.0 };
            [
                0.0,
                z2 * c1 * c2 / (1.0 - z4),
                0.0,
                0.5 * z * c2 * s1,
                -z2 * lam * s2,
                0.0,
                -lam * s2 / z2,
                sg / (2.0 * c2) + q / 2.0 * c1 * c2,
                0.0,
                if tag == P { t2 * cp * cp } else { -t2 * sp * sp },
                if tag == P { -t2 * sp * sp } else { t2 * cp * cp },
            ]
        }
        Q | Qp => [
            -s2 / 2.0,
            0.0,
            lam * s2,
            0.0,
            z2 * lam * c2 * s1,
            lam * c2 * c1,
            -lam * c2 * s1 / z2,
            0.0,
            if tag == Q { sp * sp } else { -cp * cp },
            0.0,
            0.0,
        ],
        _ => unreachable!("checked is_real above"),
    };
    Ok(v)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub tag: BasisTag,
    pub point: ChartPoint,
    pub closed_form: [f64; 11],
    pub finite_difference: [f64; 11],
    pub deviation: [f64; 11],
    pub max_deviation: f64,
}

/// Central finite differences of the Newton-recovered coordinates along
/// `h(p)·exp(tL)`, compared with the closed forms.
pub fn verify_coefficients(tag: BasisTag, p: &ChartPoint, h: f64) -> Result<CoefficientReport> {
    let closed_form = chart_derivative_coefficients(tag, p)?;
    let base = chart_element(p)?;
    let lmat = tag.matrix().real_part();
    let start = CosetCoords::identity(Flavor::NonSplit, *p);
    let at = |t: f64| -> Result<[f64; 11]> {
        let g = GroupElement::new(base.mat.mul(&lmat.scaled(t).expm()))?;
        Ok(coset_decompose_from(&g, Flavor::NonSplit, &start)?.to_vec())
    };
    let plus = at(h)?;
    let minus = at(-h)?;
    let finite_difference: [f64; 11] =
        std::array::from_fn(|k| (plus[COSET_INDEX[k]] - minus[COSET_INDEX[k]]) / (2.0 * h));
    let deviation: [f64; 11] = std::array::from_fn(|k| (finite_difference[k] - closed_form[k]).abs());
    let max_deviation = deviation.iter().cloned().fold(0.0, f64::max);
    Ok(CoefficientReport {
        tag,
        point: *p,
        closed_form,
        finite_difference,
        deviation,
        max_deviation,
    })
}
