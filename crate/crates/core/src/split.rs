//! Split Bessel models: chart operators, the first-order system for a lowest
//! weight vector, its formal solution, and the growth obstruction.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    chart_element, coset_decompose_from, group_norm_with_mu, ChartPoint, CosetCoords, Flavor,
    GroupElement,
};
use crate::jets::{chart_jet, ChartFunction, Jet};
use crate::lie::{real_coordinates, REAL_BASIS};
use crate::matrix::Mat2;
use crate::nonsplit::{operator_terms, ChartOperator, WeightPair};
use crate::scalar::{c, Scalar, C64, I};

/// The character `t₀·diag(a, b)·t₀⁻¹ ↦ a^{s₁}·b^{s₂}` of the split torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitCharacter {
    pub s1: C64,
    pub s2: C64,
}

impl SplitCharacter {
    pub fn new(s1: C64, s2: C64) -> Self {
        SplitCharacter { s1, s2 }
    }

    pub fn eval(&self, a: f64, b: f64) -> C64 {
        c(a).powc(self.s1) * c(b).powc(self.s2)
    }
}

/// `t₀⁻¹·[[x, y], [y, x]]·t₀` with `t₀ = [[1, 1], [1, −1]]`.
pub fn split_torus_to_diagonal(x: f64, y: f64) -> Mat2<f64> {
    let t0 = Mat2([[1.0, 1.0], [1.0, -1.0]]);
    let t0i = Mat2([[0.5, 0.5], [0.5, -0.5]]);
    t0i.mul(&Mat2([[x, y], [y, x]])).mul(&t0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitParams {
    pub l: i32,
    pub lp: i32,
    pub s1: C64,
    pub s2: C64,
}

impl SplitParams {
    pub fn new(l: i32, lp: i32, s1: C64, s2: C64) -> Result<SplitParams> {
        WeightPair::new(l, lp)?;
        Ok(SplitParams { l, lp, s1, s2 })
    }

    pub fn character(&self) -> SplitCharacter {
        SplitCharacter::new(self.s1, self.s2)
    }

    fn exponents(&self) -> [C64; 3] {
        let d = c((self.l - self.lp) as f64);
        let sm = self.s1 - self.s2;
        [
            (d + sm) * 0.5,
            (d - sm) * 0.5,
            (c((self.l + self.lp) as f64) + self.s1 + self.s2) * 0.5,
        ]
    }
}

fn cpow<T: Scalar>(b: &T, e: C64, what: &'static str) -> Result<T> {
    if e.im == 0.0 && e.re.fract() == 0.0 {
        let n = e.re as i32;
        if n < 0 && b.value().norm() == 0.0 {
            return Err(Error::SingularBase { what });
        }
        return b.powi(n).map_err(|_| Error::SingularBase { what });
    }
    if b.value().norm() == 0.0 {
        return if e.re > 0.0 {
            Ok(b.zero_like())
        } else {
            Err(Error::SingularBase { what })
        };
    }
    b.powc(e).map_err(|_| Error::SingularBase { what })
}

/// The two angular bases of the formal solution.
fn bases<T: Scalar>(zeta: &T, p1: &T, p2: &T) -> (T, T) {
    let (s1, c1) = (p1.sin(), p1.cos());
    let (s2, c2) = (p2.sin(), p2.cos());
    let b1 = c2.times(&(c1.clone() - zeta.times(&s1)))
        + (zeta.times(&c1) + s1.clone()).times(&s2).scale(I);
    let b2 = s1.times(&c2) - c1.times(&s2).scale(I);
    (b1, b2)
}

/// The formal solution on the chart; for `λ < 0` the same angular factor is
/// used with `(−λ)` in place of `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FSplit(pub SplitParams);

impl ChartFunction for FSplit {
    fn eval<T: Scalar>(&self, x: &[T; 4]) -> Result<T> {
        let [lam, zeta, p1, p2] = x;
        let [e1, e2, el] = self.0.exponents();
        let (b1, b2) = bases(zeta, p1, p2);
        let lam_abs = if lam.value().re < 0.0 { -lam.clone() } else { lam.clone() };
        if lam_abs.value().norm() == 0.0 {
            return Err(Error::ChartSingularity { what: "lambda = 0" });
        }
        let ang = cpow(&b1, e1, "first angular base")?.times(&cpow(&b2, e2, "second angular base")?);
        let radial = cpow(&lam_abs, el, "lambda")?.times(&lam.times(zeta).scale(c(4.0 * PI)).exp());
        Ok(ang.times(&radial))
    }
}

pub fn f_split(p: &ChartPoint, prm: &SplitParams) -> Result<C64> {
    FSplit(*prm).eval(&p.coords().map(c))
}

/// `(log|f|, arg f)` of the formal solution, safe for large `λζ`.
pub fn f_split_log(p: &ChartPoint, prm: &SplitParams) -> Result<(f64, f64)> {
    let [e1, e2, el] = prm.exponents();
    let (b1, b2) = bases(&c(p.zeta), &c(p.phi1), &c(p.phi2));
    if p.lambda == 0.0 {
        return Err(Error::ChartSingularity { what: "lambda = 0" });
    }
    let mut acc = c(4.0 * PI * p.lambda * p.zeta);
    for (b, e, what) in [(b1, e1, "first angular base"), (b2, e2, "second angular base")] {
        if e == c(0.0) {
            continue;
        }
        if b.norm() == 0.0 {
            return if e.re > 0.0 {
                Ok((f64::NEG_INFINITY, 0.0))
            } else {
                Err(Error::SingularBase { what })
            };
        }
        acc += e * b.ln();
    }
    acc += el * c(p.lambda.abs()).ln();
    let arg = acc.im.rem_euclid(2.0 * PI);
    Ok((acc.re, if arg > PI { arg - 2.0 * PI } else { arg }))
}

/// Right-hand side factors `R_v` with `∂_v f = R_v·f`.
fn split_rhs(p: &ChartPoint, prm: &SplitParams) -> Result<[C64; 4]> {
    let (lam, z) = (p.lambda, p.zeta);
    let (sh1, ch1) = p.phi1.sin_cos();
    let (sh2, ch2) = p.phi2.sin_cos();
    let (s1, c1) = (2.0 * p.phi1).sin_cos();
    let (s2, c2) = (2.0 * p.phi2).sin_cos();
    let (l, lp) = (prm.l as f64, prm.lp as f64);
    let sd = prm.s1 - prm.s2;
    let f_lambda = (c(l + lp) + prm.s1 + prm.s2) / (2.0 * lam) + 4.0 * PI * z;
    let dz = 2.0 * ch2 * (ch1 - z * sh1) + 2.0 * I * (z * ch1 + sh1) * sh2;
    let d = z * c2 + c1 * C64::new(-z, s2) - s1 * C64::new(1.0, z * s2);
    if dz.norm() < 1e-14 || d.norm() < 1e-14 {
        return Err(Error::ChartSingularity { what: "split system denominator vanishes" });
    }
    let f_zeta = 4.0 * PI * lam - (c(l - lp) + sd) * C64::new(ch2 * sh1, -ch1 * sh2) / dz;
    let f_phi1 = (sd * c2 + (l - lp) * C64::new(z * s1 - c1, -s2 * (s1 + z * c1))) / d;
    let f_phi2 = (-I * sd + (l - lp) * C64::new(-z * s2, c2 * (c1 - z * s1))) / d;
    Ok([f_lambda, f_zeta, f_phi1, f_phi2])
}

/// Relative residuals of the split first-order system for `f`.
pub fn pde_residuals_split_of<F: ChartFunction>(
    f: &F,
    p: &ChartPoint,
    prm: &SplitParams,
) -> Result<[f64; 4]> {
    let j = chart_jet(f, p, 1)?;
    let r = split_rhs(p, prm)?;
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

pub fn pde_residuals_split(p: &ChartPoint, prm: &SplitParams) -> Result<[f64; 4]> {
    pde_residuals_split_of(&FSplit(*prm), p, prm)
}

/// Coefficients of `f, ∂_λf, ∂_ζf, ∂_φ₁f, ∂_φ₂f` in `op.f` on the split chart.
pub fn operator_terms_split<T: Scalar>(
    op: ChartOperator,
    x: &[T; 4],
    l: i32,
    lp: i32,
    s1: C64,
    s2: C64,
) -> Result<[Option<T>; 5]> {
    if matches!(op, ChartOperator::Nplus | ChartOperator::Nminus) {
        return operator_terms(op, x, l, lp, c(0.0), 0);
    }
    let [lam, zeta, p1, p2] = x;
    let pm = op.sign();
    let (l, lp) = (l as f64, lp as f64);
    let two = c(2.0);
    let (sn1, cs1) = (p1.scale(two).sin(), p1.scale(two).cos());
    let (sn2, cs2) = (p2.scale(two).sin(), p2.scale(two).cos());
    if cs2.value().norm() < 1e-12 {
        return Err(Error::ChartSingularity { what: "cos(2 phi2) = 0" });
    }
    let c2i = cs2.recip()?;
    let tan2 = sn2.times(&c2i);
    let quartic = p2.sin().square().square() + p2.cos().square().square();
    let sd = s1 - s2;
    let ss = s1 + s2;
    // cos2φ₁ − ζ sin2φ₁
    let a = cs1.clone() - zeta.times(&sn1);
    let terms = match op {
        ChartOperator::Xplus | ChartOperator::Xminus => {
            let f = (cs1.clone() + sn1.times(&sn2).scale(I * pm)).scale(sd * 0.25)
                - cs2.scale(ss * 0.25)
                + quartic.times(&c2i).scale(c(pm * l / 2.0))
                - sn2.times(&tan2).scale(c(pm * lp / 4.0))
                + (a.times(&sn2)
                    + (zeta.times(&cs1) - zeta.times(&cs2) + sn1.clone()).scale(I * pm))
                .times(lam)
                .scale(I * (2.0 * PI));
            let dl = cs2.times(lam).scale(c(0.5));
            let dz = (-zeta.times(&cs1) - sn1.clone() + sn2.times(&a).scale(I * pm)).scale(c(0.5));
            let d1 = sn1.scale(c(0.25)) - cs1.times(&cs2).add_const(c(-1.0)).times(&tan2).scale(I * (pm * 0.25));
            let d2 = sn2.scale(c(0.25));
            [f, dl, dz, d1, d2]
        }
        ChartOperator::P1plus | ChartOperator::P1minus => {
            let f = sn1.times(&cs2).scale(sd * 0.5) - sn2.scale(I * pm * 0.5 * ss)
                + sn2.scale(I * ((l + lp) / 2.0))
                - (cs2.times(&a).scale(I * pm) - zeta.times(&sn2)).times(lam).scale(I * (4.0 * PI));
            let dl = sn2.times(lam).scale(I * pm);
            let dz = cs2.times(&a);
            let d1 = cs1.times(&cs2).scale(c(-0.5));
            let d2 = cs2.scale(-I * (pm * 0.5));
            [f, dl, dz, d1, d2]
        }
        ChartOperator::P0plus | ChartOperator::P0minus => {
            let f = (-cs1.clone() + sn1.times(&sn2).scale(I * pm)).scale(sd * 0.25)
                - cs2.scale(ss * 0.25)
                - sn2.times(&tan2).scale(c(pm * l / 4.0))
                + quartic.times(&c2i).scale(c(pm * lp / 2.0))
                + (a.times(&sn2)
                    - (zeta.times(&cs1) + zeta.times(&cs2) + sn1.clone()).scale(I * pm))
                .times(lam)
                .scale(I * (2.0 * PI));
            let dl = cs2.times(lam).scale(c(0.5));
            let dz = (zeta.times(&cs1) + sn1.clone() + a.times(&sn2).scale(I * pm)).scale(c(0.5));
            let d1 = -(sn1.scale(c(0.25)) + cs1.times(&cs2).add_const(c(1.0)).times(&tan2).scale(I * (pm * 0.25)));
            let d2 = sn2.scale(c(0.25));
            [f, dl, dz, d1, d2]
        }
        ChartOperator::Nplus | ChartOperator::Nminus => unreachable!(),
    };
    let [f, dl, dz, d1, d2] = terms;
    Ok([Some(f), Some(dl), Some(dz), Some(d1), Some(d2)])
}

/// The operator applied to a split chart jet; the result loses one order.
pub fn apply_operator_split(
    op: ChartOperator,
    p: &ChartPoint,
    f: &Jet,
    prm: &SplitParams,
) -> Result<Jet> {
    crate::nonsplit::apply_terms(p, f, |x| operator_terms_split(op, x, prm.l, prm.lp, prm.s1, prm.s2))
}

/// The split operator at a point from the value and first partials of `f`.
pub fn operator_rhs_split(
    op: ChartOperator,
    p: &ChartPoint,
    value_and_partials: [C64; 5],
    prm: &SplitParams,
) -> Result<C64> {
    let x = p.coords().map(c);
    let terms = operator_terms_split(op, &x, prm.l, prm.lp, prm.s1, prm.s2)?;
    Ok(terms
        .iter()
        .zip(value_and_partials)
        .filter_map(|(t, v)| t.map(|t| t * v))
        .sum())
}

/// The function `u·t·ĥ(x)·r₃r₄ ↦ θ(u)Λ(t)e^{i(lφ₃+l′φ₄)}f(x)` evaluated through
/// the split decomposition.
fn extended_value<F: ChartFunction>(
    f: &F,
    g: &GroupElement,
    start: &CosetCoords,
    prm: &SplitParams,
) -> Result<C64> {
    let co = coset_decompose_from(g, Flavor::Split, start)?;
    let [a, b] = co.torus;
    let lam = prm.character().eval(a, b);
    let th = (2.0 * PI * I * (co.x - co.z)).exp();
    let k = (I * (prm.l as f64 * co.phi3 + prm.lp as f64 * co.phi4)).exp();
    Ok(lam * th * k * f.eval(&co.chart.coords().map(c))?)
}

/// `op.B` at `ĥ(p)` by fourth-order central differences along each real basis
/// direction, with `B` the extension of `f` through the split decomposition.
pub fn operator_fd_split<F: ChartFunction>(
    op: ChartOperator,
    p: &ChartPoint,
    f: &F,
    prm: &SplitParams,
    h: f64,
) -> Result<C64> {
    let base = chart_element(p)?;
    let start = CosetCoords::identity(Flavor::Split, *p);
    let coeffs = real_coordinates(&op.tag().matrix())?;
    let mut acc = c(0.0);
    for (tag, co) in REAL_BASIS.iter().zip(coeffs) {
        if co.norm() < 1e-14 {
            continue;
        }
        let lm = tag.matrix().real_part();
        let at = |t: f64| -> Result<C64> {
            let g = GroupElement::new(base.mat.mul(&lm.scaled(t).expm()))?;
            extended_value(f, &g, &start, prm)
        };
        let d = (-at(2.0 * h)? + 8.0 * at(h)? - 8.0 * at(-h)? + at(-2.0 * h)?) / (12.0 * h);
        acc += co * d;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// The ray `λ = ζ = t`.
    Positive,
    /// The ray `λ = ζ = −t`.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub beta: f64,
    pub t: f64,
    pub log_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthWitness {
    pub beta: f64,
    /// The log gap increases over the last third of the grid.
    pub eventually_increasing: bool,
    /// First grid value of `t` where the log gap exceeds `10³`.
    pub exceeds_at: Option<f64>,
    pub max_log_gap: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthReport {
    pub params: SplitParams,
    pub angles: (f64, f64),
    pub branch: Branch,
    pub rows: Vec<GrowthRow>,
    pub witnesses: Vec<GrowthWitness>,
    /// Every tested `β` is witnessed as violated.
    pub violated: bool,
}

pub const DEFAULT_WITNESS_ANGLES: (f64, f64) = (PI / 4.0, PI / 8.0);

/// `log|f(ĥ)| − β·log‖ĥ‖` along a geometric grid of `t ∈ [1, 10³]`.
pub fn growth_violation(
    prm: &SplitParams,
    beta_max: f64,
    angles: (f64, f64),
    branch: Branch,
) -> Result<GrowthReport> {
    let mut betas = vec![1.0, 5.0, 10.0, 20.0];
    if !betas.contains(&beta_max) {
        betas.push(beta_max);
    }
    let n = 61;
    let ts: Vec<f64> = (0..n).map(|i| 10f64.powf(3.0 * i as f64 / (n - 1) as f64)).collect();
    let logs: Vec<(f64, f64)> = ts
        .par_iter()
        .map(|&t| {
            let sg = if branch == Branch::Positive { 1.0 } else { -1.0 };
            let p = ChartPoint::split(sg * t, sg * t, angles.0, angles.1);
            let g = chart_element(&p)?;
            let norm = group_norm_with_mu(&g.mat, g.mu2);
            Ok((f_split_log(&p, prm)?.0, norm.ln()))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for &beta in &betas {
        let gaps: Vec<f64> = logs.iter().map(|(lf, ln)| lf - beta * ln).collect();
        let tail = &gaps[2 * n / 3..];
        let eventually_increasing = tail.windows(2).all(|w| w[1] > w[0]);
        let exceeds_at = gaps.iter().zip(&ts).find(|(g, _)| **g > 1e3).map(|(_, t)| *t);
        let max_log_gap = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        witnesses.push(GrowthWitness {
            beta,
            eventually_increasing,
            exceeds_at,
            max_log_gap,
        });
        rows.extend(ts.iter().zip(&gaps).map(|(&t, &log_gap)| GrowthRow { beta, t, log_gap }));
    }
    let violated = witnesses.iter().all(|w| w.eventually_increasing && w.exceeds_at.is_some());
    Ok(GrowthReport {
        params: *prm,
        angles,
        branch,
        rows,
        witnesses,
        violated,
    })
}
