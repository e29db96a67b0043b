//! Convergence of integrals of Bessel functions over `R\G`: the double-integral
//! criterion, `L^p` classification of `B₀` and scalar products of ladder words.

use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::{exp_sinh, tanh_sinh, DeConfig};
use crate::error::{Error, Result};
use crate::group::ChartPoint;
use crate::jets::ChartFunction;
use crate::nonsplit::{word_value, B0Coords, BesselParams, LadderWord};
use crate::scalar::{c, C64};

/// Whether `∫₀^∞∫₁^∞ ζ^α(ζ²−ζ⁻²)^β(ζ²+ζ⁻²)^γ λ^δ e^{−4πλ(ζ²+ζ⁻²)} dζ dλ` is finite.
///
/// `β ≥ 0` is required as well: for negative `β` the factor `(ζ²−ζ⁻²)^β` is not
/// integrable at `ζ = 1`.
pub fn convergence_predicate(alpha: f64, beta: i32, gamma: i32, delta: f64) -> bool {
    delta > -1.0 && beta >= 0 && alpha + 2.0 * f64::from(beta + gamma) < 2.0 * delta + 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// Relative change between the last two partial integrals below `1e−6`.
    Plateau,
    /// Increasing partial integrals, the last relative increment above `1e−3`.
    Growing,
    Inconclusive,
}

/// Partial integrals over `λ ∈ (R⁻³, ∞)`, `ζ ∈ (1 + R⁻³, R)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialCurve {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub classification: Classification,
}

const PLATEAU_TOL: f64 = 1e-6;
const GROWTH_TOL: f64 = 1e-3;

fn classify(values: &[f64]) -> Classification {
    let n = values.len();
    if n < 2 {
        return Classification::Inconclusive;
    }
    let (a, b) = (values[n - 2], values[n - 1]);
    if b > 0.0 && ((b - a) / b).abs() < PLATEAU_TOL {
        return Classification::Plateau;
    }
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    if increasing && (b - a) / b > GROWTH_TOL {
        Classification::Growing
    } else {
        Classification::Inconclusive
    }
}

/// Default radii `R = 10^{k/2}`, `k = 1, …, 24`.
pub fn default_radii() -> Vec<f64> {
    (1..=24).map(|k| 10f64.powf(k as f64 / 2.0)).collect()
}

/// `∫ g(λ, ζ, ζ−1)` over the truncated region for a positive `g`, split at the
/// expected peaks. `rate` is the coefficient of `λ(ζ²+ζ⁻²)` in the exponent and
/// `delta` the leading λ-power; both only place the peak.
fn truncated_integral<G>(g: &G, r: f64, rate: f64, delta: f64, cfg: &DeConfig) -> Result<f64>
where
    G: Fn(f64, f64, f64) -> f64 + Sync,
{
    let (v_lo, v_hi) = (-3.0 * r.ln(), (r - 1.0).ln());
    let outer = |v: f64| -> Result<C64> {
        let eps = v.exp();
        let zeta = 1.0 + eps;
        let xx = zeta * zeta + zeta.powi(-2);
        let u_lo = -3.0 * r.ln();
        let u_hi = ((40.0 + 2.0 * delta.max(0.0)) / (rate * xx)).ln();
        if u_hi <= u_lo {
            return Ok(c(0.0));
        }
        let peak = ((delta + 1.0).max(0.5) / (rate * xx)).ln().clamp(u_lo, u_hi);
        let inner = |u: f64| {
            let lam = u.exp();
            Ok(c(g(lam, zeta, eps) * lam))
        };
        let mut s = c(0.0);
        for (a, b) in [(u_lo, peak), (peak, u_hi)] {
            if b > a {
                s += tanh_sinh(inner, a, b, cfg)?;
            }
        }
        Ok(s * eps)
    };
    let mut s = c(0.0);
    let mid = 0.0f64.clamp(v_lo, v_hi);
    for (a, b) in [(v_lo, mid), (mid, v_hi)] {
        if b > a {
            s += tanh_sinh(outer, a, b, cfg)?;
        }
    }
    Ok(s.re)
}

fn partial_curve<G>(g: &G, rate: f64, delta: f64, radii: &[f64]) -> Result<PartialCurve>
where
    G: Fn(f64, f64, f64) -> f64 + Sync,
{
    let cfg = DeConfig::with_tol(1e-11);
    let values = radii
        .iter()
        .map(|&r| truncated_integral(g, r, rate, delta, &cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(PartialCurve {
        radii: radii.to_vec(),
        classification: classify(&values),
        values,
    })
}

/// Partial integrals of the integrand of [`convergence_predicate`].
pub fn double_integral_partials(alpha: f64, beta: i32, gamma: i32, delta: f64, radii: &[f64]) -> Result<PartialCurve> {
    let g = |lam: f64, zeta: f64, eps: f64| {
        let (z2, zm2) = (zeta * zeta, zeta.powi(-2));
        // ζ² − ζ⁻² = (ζ − ζ⁻¹)(ζ + ζ⁻¹) with ζ − ζ⁻¹ = ε(2 + ε)/ζ
        let diff = eps * (2.0 + eps) / zeta * (zeta + 1.0 / zeta);
        zeta.powf(alpha)
            * diff.powi(beta)
            * (z2 + zm2).powi(gamma)
            * lam.powf(delta)
            * (-4.0 * PI * lam * (z2 + zm2)).exp()
    };
    partial_curve(&g, 4.0 * PI, delta, radii)
}

/// Exponents `(α, β, γ, δ)` of `|B₀|^p·(ζ−ζ⁻³)/λ⁴` on `h(λ, ζ, 0, 0)`, with
/// unitary torus character.
pub fn lp_exponents(l: i32, lp: i32, p: f64) -> (f64, i32, i32, f64) {
    (p * (l - lp) as f64 - 1.0, 1, 0, p * (l + lp) as f64 / 2.0 - 4.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpReport {
    pub l: i32,
    pub lp: i32,
    pub m: i32,
    pub p: f64,
    pub exponents: (f64, i32, i32, f64),
    pub convergent: bool,
    pub numeric: PartialCurve,
    /// Numeric curve classification agrees with `convergent`.
    pub consistent: bool,
}

/// Classifies `∫_{R\G} |B₀|^p` by the exponent criterion, with the partial
/// integrals of `|B₀(h(λ,ζ,0,0))|^p·(ζ−ζ⁻³)/λ⁴` (at `s = 0`) as evidence.
pub fn lp_norm_check(l: i32, lp: i32, m: i32, p: f64) -> Result<LpReport> {
    lp_norm_check_with_radii(l, lp, m, p, &default_radii())
}

pub fn lp_norm_check_with_radii(l: i32, lp: i32, m: i32, p: f64, radii: &[f64]) -> Result<LpReport> {
    if !(p > 0.0) {
        return Err(Error::ParameterRegionUnsupported { what: format!("p = {p} must be positive") });
    }
    let prm = BesselParams::new(l, lp, m, c(0.0))?;
    let exponents = lp_exponents(l, lp, p);
    let (a, b, g, d) = exponents;
    let convergent = convergence_predicate(a, b, g, d);
    let f = B0Coords(prm);
    let integrand = |lam: f64, zeta: f64, eps: f64| {
        let v = f.eval(&[c(lam), c(zeta), c(0.0), c(0.0)]).map(|v| v.norm()).unwrap_or(f64::NAN);
        // ζ − ζ⁻³ = ζ⁻³(ζ⁴ − 1)
        let measure = eps * (2.0 + eps) * (zeta * zeta + 1.0) / zeta.powi(3);
        v.powf(p) * measure / lam.powi(4)
    };
    let numeric = partial_curve(&integrand, 2.0 * PI * p, d, radii)?;
    let consistent = match numeric.classification {
        Classification::Plateau => convergent,
        Classification::Growing => !convergent,
        Classification::Inconclusive => false,
    };
    Ok(LpReport { l, lp, m, p, exponents, convergent, numeric, consistent })
}

/// Nodes and weights of `n`-point Gauss–Legendre on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        let k = i as f64;
        let b = k / (4.0 * k * k - 1.0).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = j.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// A ladder word applied to the lowest weight vector `B₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselSpec {
    pub params: BesselParams,
    pub word: LadderWord,
}

impl BesselSpec {
    pub fn lowest(params: BesselParams) -> Self {
        BesselSpec { params, word: LadderWord::new(Vec::new()) }
    }

    pub fn weight(&self) -> (i32, i32) {
        self.word.weight_from((self.params.l, self.params.lp))
    }

    fn value(&self, p: &ChartPoint) -> Result<C64> {
        if self.word.letters.is_empty() {
            return Ok(self.word.coeff * B0Coords(self.params).eval(&p.coords().map(c))?);
        }
        word_value(&self.params, &self.word, p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScalarProduct {
    Finite(C64),
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarProductConfig {
    /// Trapezoid nodes in `φ₁ ∈ [0, π)`.
    pub n_phi1: usize,
    /// Gauss–Legendre nodes in `φ₂ ∈ (−π/4, π/4)`.
    pub n_phi2: usize,
    pub rel_tol: f64,
}

impl Default for ScalarProductConfig {
    fn default() -> Self {
        ScalarProductConfig { n_phi1: 8, n_phi2: 8, rel_tol: 1e-8 }
    }
}

const ZETA_CUTOFF: f64 = 1e8;
const EXP_CUTOFF: f64 = 700.0;

/// `∫_{R\G} B₁·conj(B₂)` with the measure `(ζ−ζ⁻³)/λ⁴ dζ dλ dk`, where `dk` has
/// density `|cos 2φ₂|` in `(φ₁, φ₂, φ₃, φ₄)`. Distinct weights give zero.
pub fn scalar_product(b1: &BesselSpec, b2: &BesselSpec, cfg: &ScalarProductConfig) -> Result<ScalarProduct> {
    for b in [b1, b2] {
        if b.params.s.re != 0.0 {
            return Err(Error::ParameterRegionUnsupported {
                what: "scalar products need a unitary torus character".to_string(),
            });
        }
    }
    if b1.params.lp + b2.params.lp <= 4 {
        return Ok(ScalarProduct::Divergent);
    }
    if b1.weight() != b2.weight() {
        return Ok(ScalarProduct::Finite(c(0.0)));
    }
    let (x2, w2) = gauss_legendre(cfg.n_phi2);
    let mut angles = Vec::new();
    for i in 0..cfg.n_phi1 {
        let p1 = PI * i as f64 / cfg.n_phi1 as f64;
        for (x, w) in x2.iter().zip(&w2) {
            let p2 = FRAC_PI_4 * x;
            let weight = (PI / cfg.n_phi1 as f64) * FRAC_PI_4 * w * (2.0 * p2).cos().abs();
            angles.push((p1, p2, weight));
        }
    }
    let de = DeConfig::with_tol(cfg.rel_tol);
    let letters = (b1.word.letters.len() + b2.word.letters.len()) as f64;
    let delta = (b1.params.l + b1.params.lp + b2.params.l + b2.params.lp) as f64 / 2.0 - 4.0 + letters;
    let slices = angles
        .par_iter()
        .map(|&(p1, p2, weight)| {
            let outer = |zeta: f64| -> Result<C64> {
                // the ζ-integrand decays at least like ζ⁻⁵ once l₁′ + l₂′ > 4
                if zeta > ZETA_CUTOFF {
                    return Ok(c(0.0));
                }
                let xx = zeta * zeta + zeta.powi(-2);
                let scale = (delta + 1.0).max(1.0) / (4.0 * PI * xx);
                let inner = exp_sinh(
                    |lam| {
                        if 4.0 * PI * lam * xx > EXP_CUTOFF {
                            return Ok(c(0.0));
                        }
                        let p = ChartPoint::nonsplit(lam, zeta, p1, p2);
                        Ok(b1.value(&p)? * b2.value(&p)?.conj() / lam.powi(4))
                    },
                    0.0,
                    scale,
                    &de,
                )?;
                Ok(inner * (zeta - zeta.powi(-3)))
            };
            Ok(exp_sinh(outer, 1.0, 1.0, &de)? * weight)
        })
        .collect::<Result<Vec<C64>>>()?;
    let torus = 4.0 * PI * PI;
    Ok(ScalarProduct::Finite(slices.iter().sum::<C64>() * torus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicate_examples() {
        assert!(convergence_predicate(0.0, 0, 0, 0.0));
        assert!(!convergence_predicate(0.0, 0, 0, -1.0));
        assert!(!convergence_predicate(3.0, 1, 0, 2.0));
        assert!(!convergence_predicate(0.0, -1, 0, 3.0));
    }

    #[test]
    fn partials_of_a_convergent_case_match_the_closed_value() {
        // α = β = γ = 0, δ = 1: ∫₁^∞ (4π)⁻²(ζ²+ζ⁻²)⁻² dζ
        let c = double_integral_partials(0.0, 0, 0, 1.0, &default_radii()).unwrap();
        assert_eq!(c.classification, Classification::Plateau);
        let exact = tanh_sinh(
            |t: f64| {
                // ζ = 1/t
                let z = 1.0 / t;
                Ok(self::c(1.0 / (z * z + z.powi(-2)).powi(2) / (t * t)))
            },
            0.0,
            1.0,
            &DeConfig::with_tol(1e-13),
        )
        .unwrap()
        .re
            / (16.0 * PI * PI);
        let last = *c.values.last().unwrap();
        assert!((last - exact).abs() < 1e-8 * exact, "{last} vs {exact}");
    }

    #[test]
    fn partials_grow_on_the_boundary() {
        let c = double_integral_partials(3.0, 1, 0, 2.0, &default_radii()).unwrap();
        assert_eq!(c.classification, Classification::Growing);
    }

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        let (x, w) = gauss_legendre(6);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn lp_examples() {
        let r = lp_norm_check(6, 3, 1, 2.0).unwrap();
        assert!(r.convergent && r.consistent);
        let r = lp_norm_check(6, 2, 0, 2.0).unwrap();
        assert!(!r.convergent && r.consistent);
        let r = lp_norm_check(6, 2, 0, 2.5).unwrap();
        assert!(r.convergent && r.consistent, "{:?}", r.numeric);
        let r = lp_norm_check(4, 1, 1, 2.5).unwrap();
        assert!(!r.convergent && r.consistent);
    }
}
