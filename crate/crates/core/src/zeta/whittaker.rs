//! Whittaker `W_{κ,μ}(y)` through Tricomi's `U(a, b, y)`, with
//! `a = ½ + μ − κ`, `b = 1 + 2μ`.
//!
//! For small `y` and `b` off the integers `U` is the usual combination of two
//! Kummer series. Otherwise it comes from its Laplace-type integral where
//! `Re a ≥ 1` and from the three-term recurrence in `a` elsewhere.

use super::gamma::ln_gamma_complex;
use super::quadrature::{tanh_sinh, DeConfig};
use crate::error::{Error, Result};
use crate::scalar::C64;

/// `U(a, b, y)` for `Re a > 0`, `y > 0`, from
/// `Γ(a)·U = y^{−a}∫₀^∞ e^{−u}u^{a−1}(1 + u/y)^{b−a−1} du`, integrated in
/// `t = ln u` with breaks at `ln y` and `0`.
fn tricomi_integral(a: C64, b: C64, y: f64, tol: f64) -> Result<C64> {
    let e = b - a - 1.0;
    let cfg = DeConfig::with_tol(tol);
    let lg = ln_gamma_complex(a)?;
    let ly = y.ln();
    let lo = ly.min(0.0) - 60.0 / a.re.max(1.0);
    let hi = (60.0 + 2.0 * (a + e).norm()).ln();
    let mut breaks = vec![lo, ly.clamp(lo, hi), 0.0f64.clamp(lo, hi), hi];
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let f = |t: f64| {
        let u = t.exp();
        let l1p = (u / y).ln_1p();
        Ok((a * t + e * l1p - u - lg - a * ly).exp())
    };
    let mut total = C64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            total += tanh_sinh(f, w[0], w[1], &cfg)?;
        }
    }
    Ok(total)
}

/// `1/Γ(z)`, zero at the poles.
fn recip_gamma(z: C64) -> Result<C64> {
    match ln_gamma_complex(z) {
        Ok(v) => Ok((-v).exp()),
        Err(Error::PoleOfGamma { .. }) => Ok(C64::new(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Kummer's `M(a, b, y)` by its power series.
fn kummer_m(a: C64, b: C64, y: f64) -> C64 {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..500 {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * (y / (nf + 1.0));
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// `U` from the two Kummer solutions; needs `b` away from the integers.
fn tricomi_series(a: C64, b: C64, y: f64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let t1 = (ln_gamma_complex(one - b)?).exp() * recip_gamma(a - b + 1.0)? * kummer_m(a, b, y);
    let t2 = (ln_gamma_complex(b - 1.0)?).exp()
        * recip_gamma(a)?
        * ((one - b) * y.ln()).exp()
        * kummer_m(a - b + 1.0, 2.0 - b, y);
    Ok(t1 + t2)
}

/// `U(−n, b, y) = (−1)ⁿ(b)ₙ·M(−n, b, y)`, a polynomial.
fn laguerre_u(n: usize, b: C64, y: f64) -> C64 {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) / (b + kf) * (y / (kf + 1.0));
        sum += term;
    }
    let mut poch = C64::new(1.0, 0.0);
    for k in 0..n {
        poch *= b + k as f64;
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sum * poch * sign
}

const SERIES_MAX_Y: f64 = 2.0;
const SERIES_MIN_B_GAP: f64 = 0.05;

/// Tricomi's confluent hypergeometric function for real `y > 0`.
pub fn tricomi_u(a: C64, b: C64, y: f64, tol: f64) -> Result<C64> {
    if !(y > 0.0) {
        return Err(Error::ParameterRegionUnsupported {
            what: format!("U needs y > 0, got {y}"),
        });
    }
    let n_round = a.re.round();
    if n_round <= 0.0 && (a - C64::new(n_round, 0.0)).norm() < 1e-14 {
        return Ok(laguerre_u((-n_round) as usize, b, y));
    }
    if y < SERIES_MAX_Y && (b - C64::new(b.re.round(), 0.0)).norm() > SERIES_MIN_B_GAP {
        return tricomi_series(a, b, y);
    }
    if a.re >= 1.0 {
        return tricomi_integral(a, b, y, tol);
    }
    let n = (1.0 - a.re).ceil() as usize;
    let top = a + n as f64;
    let mut u_hi = tricomi_integral(top + 1.0, b, y, tol)?;
    let mut u = tricomi_integral(top, b, y, tol)?;
    // U(a−1) = −(b − 2a − y)·U(a) − a(a − b + 1)·U(a + 1)
    let mut ap = top;
    for _ in 0..n {
        let lower = -(b - 2.0 * ap - y) * u - ap * (ap - b + 1.0) * u_hi;
        u_hi = u;
        u = lower;
        ap -= 1.0;
    }
    Ok(u)
}

/// `W_{κ,μ}(y)` for `y > 0`.
pub fn whittaker_w(kappa: C64, mu: C64, y: f64) -> Result<C64> {
    whittaker_w_tol(kappa, mu, y, 1e-13)
}

pub fn whittaker_w_tol(kappa: C64, mu: C64, y: f64, tol: f64) -> Result<C64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::ParameterRegionUnsupported {
            what: format!("Whittaker W needs finite y > 0, got {y}"),
        });
    }
    // W is even in μ; use the representative with Re μ ≥ 0
    let mu = if mu.re < 0.0 { -mu } else { mu };
    let a = mu - kappa + 0.5;
    let b = mu * 2.0 + 1.0;
    let u = tricomi_u(a, b, y, tol)?;
    Ok(u * ((mu + 0.5) * y.ln() - y / 2.0).exp())
}
