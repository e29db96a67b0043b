//! Double-exponential quadrature: tanh-sinh on finite intervals and exp-sinh
//! on half-lines, refined by halving the step until successive estimates agree.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{c, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeConfig {
    /// Relative tolerance between successive refinements.
    pub rel_tol: f64,
    /// Absolute tolerance between successive refinements.
    pub abs_tol: f64,
    pub max_level: u32,
}

impl Default for DeConfig {
    fn default() -> Self {
        DeConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_level: 9,
        }
    }
}

impl DeConfig {
    pub fn with_tol(rel_tol: f64) -> Self {
        DeConfig {
            rel_tol,
            ..DeConfig::default()
        }
    }
}

/// Nodes `(x, w)` of one level; level 0 holds the even grid `t = kh₀`, later
/// levels only the new odd points.
fn level_nodes(map: &impl Fn(f64) -> Option<(f64, f64)>, h: f64, level: u32, tmax: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let (start, stride) = if level == 0 { (0i64, 1i64) } else { (1, 2) };
    let n = (tmax / h).ceil() as i64;
    let mut k = start;
    while k <= n {
        for t in [k as f64 * h, -(k as f64) * h] {
            if let Some(node) = map(t) {
                out.push(node);
            }
            if k == 0 {
                break;
            }
        }
        k += stride;
    }
    out
}

fn integrate_mapped<F>(f: F, map: impl Fn(f64) -> Option<(f64, f64)> + Sync, tmax: f64, cfg: &DeConfig) -> Result<C64>
where
    F: Fn(f64) -> Result<C64> + Sync,
{
    let h0 = 0.5;
    let mut sum = c(0.0);
    let mut prev: Option<C64> = None;
    let mut last_change = f64::INFINITY;
    for level in 0..=cfg.max_level {
        let h = h0 / 2f64.powi(level as i32);
        let nodes = level_nodes(&map, h, level, tmax);
        let part: Vec<C64> = nodes
            .par_iter()
            .map(|&(x, w)| Ok(f(x)? * w))
            .collect::<Result<_>>()?;
        sum += part.iter().sum::<C64>();
        let est = sum * h;
        if let Some(p) = prev {
            last_change = (est - p).norm();
            if last_change <= cfg.rel_tol * est.norm() || last_change <= cfg.abs_tol {
                return Ok(est);
            }
        }
        prev = Some(est);
    }
    Err(Error::QuadratureNotConverged {
        tol: cfg.rel_tol,
        last_change,
    })
}

/// `∫_a^b f` by tanh-sinh.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, cfg: &DeConfig) -> Result<C64>
where
    F: Fn(f64) -> Result<C64> + Sync,
{
    let half = 0.5 * (b - a);
    let map = move |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance from the nearer endpoint, computed without cancellation
        let d = 2.0 * half * e / (1.0 + e);
        let w = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if d <= 0.0 || !w.is_finite() || w == 0.0 {
            return None;
        }
        let x = if u >= 0.0 { b - d } else { a + d };
        Some((x, w))
    };
    integrate_mapped(f, map, 4.0, cfg)
}

/// `∫_a^∞ f` by exp-sinh, with `scale` the length over which `f` varies.
pub fn exp_sinh<F>(f: F, a: f64, scale: f64, cfg: &DeConfig) -> Result<C64>
where
    F: Fn(f64) -> Result<C64> + Sync,
{
    let map = move |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let e = u.exp();
        let x = a + scale * e;
        let w = scale * FRAC_PI_2 * t.cosh() * e;
        if !x.is_finite() || !w.is_finite() || w == 0.0 || x == a {
            return None;
        }
        Some((x, w))
    };
    integrate_mapped(f, map, 4.5, cfg)
}
