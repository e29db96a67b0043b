//! The archimedean zeta integral: `Q_{k,j}`, the `Z^{k,j}` pieces in closed form
//! and by quadrature, the coefficient table of `B_{l,l}` and the assembly.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma_complex;
use super::quadrature::{exp_sinh, DeConfig};
use super::whittaker::whittaker_w_tol;
use crate::error::{Error, Result};
use crate::group::ChartPoint;
use crate::nonsplit::{ladder, ladder_closed_form};
use crate::scalar::{c, C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaParams {
    pub l: i32,
    pub n: i32,
    pub d: u32,
    pub r: C64,
    pub c1: C64,
}

impl ZetaParams {
    pub fn new(l: i32, n: i32, d: u32, r: C64, c1: C64) -> Result<ZetaParams> {
        if l <= 0 || l % 2 != 0 {
            return Err(Error::InvalidWeights { l, lp: l, reason: "l must be even and positive" });
        }
        if ![3, 5, 7, 9].contains(&n) || l < n {
            return Err(Error::InvalidWeights { l, lp: l - n + 1, reason: "n must be 3, 5, 7 or 9 with l >= n" });
        }
        if d == 0 || !(d % 4 == 0 || d % 4 == 3) {
            return Err(Error::ParameterRegionUnsupported {
                what: format!("D = {d} must be positive and 0 or 3 mod 4"),
            });
        }
        Ok(ZetaParams { l, n, d, r, c1 })
    }

    /// The half-integral matrix `S(−D)` of discriminant `−D` attached to `D`.
    pub fn s_matrix(&self) -> [[f64; 2]; 2] {
        let d = self.d as f64;
        if self.d % 4 == 0 {
            [[d / 4.0, 0.0], [0.0, 1.0]]
        } else {
            [[(1.0 + d) / 4.0, 0.5], [0.5, 1.0]]
        }
    }

    /// Index pairs `(k, j)`, `0 ≤ j ≤ ⌊(n−1)/4⌋`, `2j ≤ k ≤ (n−1)/2`.
    pub fn indices(&self) -> Vec<(i32, i32)> {
        indices(self.n)
    }
}

fn indices(n: i32) -> Vec<(i32, i32)> {
    let mut v = Vec::new();
    for j in 0..=(n - 1) / 4 {
        for k in 2 * j..=(n - 1) / 2 {
            v.push((k, j));
        }
    }
    v
}

fn nonzero(v: C64, what: &str) -> Result<C64> {
    if v.norm() < 1e-300 {
        return Err(Error::PoleOfQ { what: what.to_string() });
    }
    Ok(v)
}

/// `Q_{k,j}(s)`.
pub fn q_kj(s: C64, k: i32, j: i32, l: i32, r: C64) -> Result<C64> {
    let lf = l as f64;
    let den = nonzero(s * 6.0 + lf - 2.0 * k as f64 - 1.0 + 2.0 * j as f64, "6s+l-2k-1+2j")?;
    let mut q = c(8f64.powi(k) * PI.powi(k)) / den;
    for t in 1..=k {
        let t = t as f64;
        let num = s * 3.0 + lf / 2.0 - 0.5 - t;
        let base = s * 3.0 + lf - t - 1.0;
        let d = nonzero((base + I * r / 2.0) * (base - I * r / 2.0), "Gamma-shift denominator")?;
        q *= num / d;
    }
    Ok(q)
}

fn gamma_quotient(s: C64, l: i32, k: i32, r: C64) -> Result<C64> {
    let lf = l as f64;
    let a = s * 3.0 + lf - k as f64 - 1.0;
    let num = ln_gamma_complex(a + I * r / 2.0)? + ln_gamma_complex(a - I * r / 2.0)?;
    let den = s * 3.0 + lf / 2.0 - k as f64 - 0.5;
    // 1/Γ vanishes at its poles
    if den.im == 0.0 && den.re <= 0.0 && den.re.fract() == 0.0 {
        return Ok(c(0.0));
    }
    Ok((num - ln_gamma_complex(den)?).exp())
}

/// `c(1)·2^{−6s+3−3l}·D^{−3s}·π^{−3s−l+5/2}·Γ(3s+l−1±ir/2)/Γ(3s+l/2−1/2)`.
pub fn z_prefactor(s: C64, p: &ZetaParams) -> Result<C64> {
    let lf = p.l as f64;
    let pw = (-s * 6.0 + 3.0 - 3.0 * lf) * 2f64.ln() - s * 3.0 * (p.d as f64).ln()
        + (-s * 3.0 - lf + 2.5) * PI.ln();
    Ok(p.c1 * pw.exp() * gamma_quotient(s, p.l, 0, p.r)?)
}

/// Closed form of `Z^{k,j}(s)`.
pub fn z_kj_closed(s: C64, k: i32, j: i32, p: &ZetaParams) -> Result<C64> {
    let (lf, kf) = (p.l as f64, k as f64);
    let den = nonzero(s * 6.0 + lf - 2.0 * kf - 1.0 + 2.0 * j as f64, "6s+l-2k-1+2j")?;
    let pw = (-s * 6.0 + 3.0 - 3.0 * lf + 3.0 * kf) * 2f64.ln() - s * 3.0 * (p.d as f64).ln()
        + (-s * 3.0 - lf + kf + 2.5) * PI.ln();
    Ok(p.c1 * pw.exp() / den * gamma_quotient(s, p.l, k, p.r)?)
}

/// `Z^{k,j}(s)` as a double integral over `λ ∈ (0,∞)`, `x ∈ (1,∞)`.
pub fn z_kj_quadrature(s: C64, k: i32, j: i32, p: &ZetaParams, rel_tol: f64) -> Result<C64> {
    let (lf, kf, jf) = (p.l as f64, k as f64, j as f64);
    let x_rate = s * 6.0 + lf - 2.0 * kf - 1.0 + 2.0 * jf;
    if x_rate.re <= 0.0 {
        return Err(Error::DivergentRegion {
            what: format!("x-integral needs Re(6s+l-2k-1+2j) > 0, got {}", x_rate.re),
        });
    }
    let kappa = c(lf / 2.0);
    let mu = I * p.r / 2.0;
    // λ-exponent a − 1 with a = 3(s+½) + l − k − 3; W ~ y^{½−|Re μ|} near 0
    let a = s * 3.0 + 1.5 + lf - kf - 3.0;
    if a.re + 0.5 - mu.re.abs() <= 0.0 {
        return Err(Error::DivergentRegion {
            what: "lambda-integral diverges at 0".to_string(),
        });
    }
    let sd = (p.d as f64).sqrt();
    let cfg = DeConfig::with_tol(rel_tol);
    let inner_cfg = DeConfig::with_tol(rel_tol * 1e-2);
    let w_tol = (rel_tol * 1e-4).max(1e-14);
    let lam_scale_num = (kappa + a).re.max(1.0);
    let outer = exp_sinh(
        |x| {
            let scale = lam_scale_num / (4.0 * PI * sd * x);
            let inner = exp_sinh(
                |lam| {
                    let y = 4.0 * PI * lam * sd * x;
                    let w = whittaker_w_tol(kappa, mu, y, w_tol)?;
                    Ok(w * ((a - 1.0) * lam.ln() - y / 2.0).exp())
                },
                0.0,
                scale,
                &inner_cfg,
            )?;
            let xpow = ((-(s + 0.5) * 3.0 + kf - 2.0 * jf) * x.ln()).exp();
            Ok(inner * xpow)
        },
        1.0,
        1.0,
        &cfg,
    )?;
    let pref = c(PI) * c((sd / 2.0).powf(lf - kf)) * p.c1 * (-(s + 0.5) * 1.5 * (p.d as f64).ln()).exp();
    Ok(pref * outer)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CkjEntry {
    pub k: i32,
    pub j: i32,
    pub value: f64,
}

/// Coefficients `c_{k,j}` with `B_{l,l}(λ, ζ) = Σ c_{k,j} λ^{l−k} x^{k−2j} e^{−4πλx}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CkjTable {
    pub l: i32,
    pub n: i32,
    pub entries: Vec<CkjEntry>,
    /// Relative least-squares residual of the fit.
    pub residual: f64,
}

impl CkjTable {
    pub fn get(&self, k: i32, j: i32) -> Option<f64> {
        self.entries.iter().find(|e| e.k == k && e.j == j).map(|e| e.value)
    }

    /// The single scalar `t` minimising `‖self − t·other‖`, and the relative
    /// deviation left after scaling.
    pub fn proportionality(&self, other: &CkjTable) -> (f64, f64) {
        let a: Vec<f64> = self.entries.iter().map(|e| e.value).collect();
        let b: Vec<f64> = self.entries.iter().map(|e| other.get(e.k, e.j).unwrap_or(0.0)).collect();
        let bb: f64 = b.iter().map(|x| x * x).sum();
        let t = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>() / bb;
        let dev = a.iter().zip(&b).map(|(x, y)| (x - t * y).powi(2)).sum::<f64>().sqrt()
            / a.iter().map(|x| x * x).sum::<f64>().sqrt();
        (t, dev)
    }
}

/// 30-point grid in `λ ∈ [0.3, 1.5]`, `ζ ∈ [1.05, 1.9]`.
fn fit_grid() -> Vec<(f64, f64)> {
    let mut g = Vec::new();
    for i in 0..6 {
        for j in 0..5 {
            g.push((0.3 + 0.24 * i as f64, 1.05 + 0.2125 * j as f64));
        }
    }
    g
}

fn fit_table(l: i32, n: i32, values: &[(f64, f64, f64)], tol: f64) -> Result<CkjTable> {
    let idx = indices(n);
    let half = (n - 1) / 2;
    let rows = values.len();
    let mut a = DMatrix::<f64>::zeros(rows, idx.len());
    let mut b = DVector::<f64>::zeros(rows);
    for (i, &(lam, zeta, v)) in values.iter().enumerate() {
        let x = (zeta * zeta + zeta.powi(-2)) / 2.0;
        // divide by λ^{l−(n−1)/2} e^{−4πλx} to keep the system well scaled
        b[i] = v * (4.0 * PI * lam * x).exp() / lam.powi(l - half);
        for (col, &(k, j)) in idx.iter().enumerate() {
            a[(i, col)] = lam.powi(half - k) * x.powi(k - 2 * j);
        }
    }
    let svd = a.clone().svd(true, true);
    let sol = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::ParameterRegionUnsupported { what: e.to_string() })?;
    let residual = (&a * &sol - &b).norm() / b.norm();
    if residual > tol {
        return Err(Error::ShapeMismatch { residual, tol });
    }
    Ok(CkjTable {
        l,
        n,
        entries: idx
            .iter()
            .zip(sol.iter())
            .map(|(&(k, j), &value)| CkjEntry { k, j, value })
            .collect(),
        residual,
    })
}

/// Fits the ladder output `B_{l,l}(h(λ,ζ,0,0))` (from `l′ = l − n + 1`,
/// `m = s = 0`) against `λ^{l−k}x^{k−2j}e^{−4πλx}`.
pub fn extract_ckj(l: i32, n: i32) -> Result<CkjTable> {
    extract_ckj_with_tol(l, n, 1e-7)
}

pub fn extract_ckj_with_tol(l: i32, n: i32, tol: f64) -> Result<CkjTable> {
    if ![3, 5, 7, 9].contains(&n) {
        return Err(Error::InvalidWeights { l, lp: l - n + 1, reason: "n must be 3, 5, 7 or 9" });
    }
    let v = ladder(l, l - n + 1, 0, c(0.0), ((n - 1) / 2) as usize)?;
    let pts: Vec<ChartPoint> = fit_grid().iter().map(|&(a, b)| ChartPoint::nonsplit(a, b, 0.0, 0.0)).collect();
    let samples = v.eval_many(&pts)?;
    let vals: Vec<(f64, f64, f64)> = samples
        .iter()
        .map(|s| (s.point.lambda, s.point.zeta, s.value.re))
        .collect();
    fit_table(l, n, &vals, tol)
}

/// The same fit applied to the printed closed-form displays, i.e. their
/// expansion into the monomial basis.
pub fn closed_form_ckj(l: i32, n: i32) -> Result<CkjTable> {
    let k = ((n - 1) / 2) as usize;
    let vals: Vec<(f64, f64, f64)> = fit_grid()
        .iter()
        .map(|&(lam, z)| Ok((lam, z, ladder_closed_form(l, k, lam, z)?)))
        .collect::<Result<_>>()?;
    fit_table(l, n, &vals, 1e-9)
}

/// `Z_∞(s) = (Σ c_{k,j} Q_{k,j}(s))·prefactor`.
pub fn z_infinity(s: C64, p: &ZetaParams, table: &CkjTable) -> Result<C64> {
    let mut acc = c(0.0);
    for e in &table.entries {
        acc += e.value * q_kj(s, e.k, e.j, p.l, p.r)?;
    }
    Ok(acc * z_prefactor(s, p)?)
}

/// `Σ c_{k,j} Z^{k,j}(s)` with every piece by quadrature.
pub fn z_infinity_quadrature(s: C64, p: &ZetaParams, table: &CkjTable, rel_tol: f64) -> Result<C64> {
    let mut acc = c(0.0);
    for e in &table.entries {
        acc += e.value * z_kj_quadrature(s, e.k, e.j, p, rel_tol)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prm() -> ZetaParams {
        ZetaParams::new(10, 3, 4, c(2.0), c(1.0)).unwrap()
    }

    #[test]
    fn q_examples() {
        let q = q_kj(c(1.0), 0, 0, 10, c(2.0)).unwrap();
        assert!((q - 1.0 / 15.0).norm() < 1e-15);
        let (s, l, r) = (1.3, 10.0, 2.0);
        let q = q_kj(c(s), 1, 0, 10, c(r)).unwrap();
        let want = 8.0 * PI / (6.0 * s + l - 3.0) * (3.0 * s + l / 2.0 - 1.5)
            / ((3.0 * s + l - 2.0).powi(2) + (r / 2.0).powi(2));
        assert!((q - want).norm() < 1e-14 * want);
        let qm = q_kj(c(s), 2, 1, 10, c(-r)).unwrap();
        assert!((q_kj(c(s), 2, 1, 10, c(r)).unwrap() - qm).norm() < 1e-15 * qm.norm());
    }

    #[test]
    fn closed_forms_agree() {
        let p = prm();
        let s = C64::new(0.9, 0.2);
        for (k, j) in [(0, 0), (1, 0), (2, 1), (3, 0)] {
            let a = z_kj_closed(s, k, j, &p).unwrap();
            let b = q_kj(s, k, j, p.l, p.r).unwrap() * z_prefactor(s, &p).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm(), "{k} {j}: {a} {b}");
        }
    }

    #[test]
    fn closed_form_is_real_on_real_data() {
        let z = z_kj_closed(c(1.1), 1, 0, &prm()).unwrap();
        assert!(z.im.abs() < 1e-14 * z.re.abs());
    }

    #[test]
    fn quadrature_matches_closed_form_for_leading_piece() {
        let p = prm();
        let a = z_kj_closed(c(1.0), 0, 0, &p).unwrap();
        let b = z_kj_quadrature(c(1.0), 0, 0, &p, 1e-8).unwrap();
        assert!((a - b).norm() < 1e-6 * a.norm(), "{a} vs {b}");
        assert!(b.im.abs() < 1e-10 * b.re.abs());
    }

    #[test]
    fn s_matrix_has_determinant_d_over_4() {
        for d in [3, 4, 7, 8, 11, 12] {
            let m = ZetaParams::new(10, 3, d, c(1.0), c(1.0)).unwrap().s_matrix();
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            assert!((det - d as f64 / 4.0).abs() < 1e-15);
        }
        assert!(ZetaParams::new(10, 3, 5, c(1.0), c(1.0)).is_err());
    }

    #[test]
    fn index_set_shapes() {
        assert_eq!(indices(3), vec![(0, 0), (1, 0)]);
        assert_eq!(indices(5), vec![(0, 0), (1, 0), (2, 0), (2, 1)]);
        assert_eq!(indices(9).len(), 5 + 3 + 1);
    }
}
