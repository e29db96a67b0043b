//! Climbing from the minimal K-type `(l, l′)` to the one-dimensional K-type
//! `(l, l)` by operator words applied to chart jets of `B₀`.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::operators::apply_operator;
use super::{B0Coords, BesselParams, ChartOperator};
use crate::error::{Error, Result};
use crate::group::ChartPoint;
use crate::jets::{chart_jet_with_shape, Jet, JetShape};
use crate::scalar::{c, Scalar, C64};

pub type Letter = ChartOperator;

/// A scalar multiple of an operator word, applied right to left to `B₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderWord {
    pub coeff: C64,
    pub letters: Vec<Letter>,
}

impl LadderWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        LadderWord { coeff: c(1.0), letters }
    }

    pub fn scaled(coeff: C64, letters: Vec<Letter>) -> Self {
        LadderWord { coeff, letters }
    }

    fn lambda_zeta_uses(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| !matches!(l, Letter::Nplus | Letter::Nminus))
            .count()
    }

    /// Weight of the result when applied to a vector of weight `w`.
    pub fn weight_from(&self, w: (i32, i32)) -> (i32, i32) {
        self.letters.iter().fold(w, |(a, b), op| {
            let (da, db) = op.weight_shift();
            (a + da, b + db)
        })
    }
}

/// Applies `letters` (right to left) to a jet of weight `w`; returns the new weight.
fn apply_letters(
    p: &ChartPoint,
    prm: &BesselParams,
    letters: &[Letter],
    f: Jet,
    w: (i32, i32),
) -> Result<(Jet, (i32, i32))> {
    letters.iter().rev().try_fold((f, w), |(f, (l, lp)), op| {
        if f.order() == 0 {
            return Err(Error::JetOrderExhausted { needed: letters.len(), available: 0 });
        }
        let g = apply_operator(*op, p, &f, l, lp, prm.s, prm.m)?;
        let (da, db) = op.weight_shift();
        Ok((g, (l + da, lp + db)))
    })
}

fn b0_jet(prm: &BesselParams, p: &ChartPoint, lz_cap: usize, order: usize) -> Result<Jet> {
    let shape: Arc<JetShape> = JetShape::new(&[lz_cap, lz_cap, order, order], order);
    chart_jet_with_shape(&B0Coords(*prm), p, &shape)
}

/// One recursion step `(P₀₊ + α⁻¹N₋N₊P₀₊ + (2α(α+1))⁻¹N₋²N₊²P₀₊)·f` for `f` of
/// weight `(l, l″)`.
fn ladder_step(p: &ChartPoint, prm: &BesselParams, f: &Jet, lpp: i32, alpha: i32) -> Result<Jet> {
    use ChartOperator::*;
    let l = prm.l;
    let (g, w) = apply_letters(p, prm, &[P0plus], f.clone(), (l, lpp))?;
    let (n1, w1) = apply_letters(p, prm, &[Nplus], g.clone(), w)?;
    let (n2, w2) = apply_letters(p, prm, &[Nplus], n1.clone(), w1)?;
    let (t1, _) = apply_letters(p, prm, &[Nminus], n1, w1)?;
    let (t2, _) = apply_letters(p, prm, &[Nminus, Nminus], n2, w2)?;
    let a = alpha as f64;
    Ok(g + t1.scale(c(1.0 / a)) + t2.scale(c(1.0 / (2.0 * a * (a + 1.0)))))
}

/// Chart jet of `B_{l, l′+2k}` at `p`, with `extra` orders left over.
pub fn ladder_jet_with_order(prm: &BesselParams, p: &ChartPoint, k: usize, extra: usize) -> Result<Jet> {
    let mut f = b0_jet(prm, p, k + extra, 5 * k + extra)?;
    for step in 1..=k as i32 {
        let lpp = prm.lp + 2 * step - 2;
        let alpha = prm.l - prm.lp - 2 * step + 2;
        f = ladder_step(p, prm, &f, lpp, alpha)?;
    }
    Ok(f)
}

/// Chart jet of `B_{l, l′+2k}` at `p` with one order left for first derivatives.
pub fn ladder_jet(prm: &BesselParams, p: &ChartPoint, k: usize) -> Result<Jet> {
    ladder_jet_with_order(prm, p, k, 1)
}

/// The vector `B_{l, l′+2k}` obtained from `B₀` after `k` recursion steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderVector {
    pub params: BesselParams,
    pub k: usize,
    pub weight: (i32, i32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderSample {
    pub point: ChartPoint,
    pub value: C64,
    /// `N₊` applied to the vector at the point.
    pub n_plus: C64,
}

impl LadderVector {
    /// Total chart-jet order consumed, including the `N₊` check.
    pub fn jet_order(&self) -> usize {
        5 * self.k + 1
    }

    pub fn alphas(&self) -> Vec<i32> {
        (1..=self.k as i32)
            .map(|j| self.params.l - self.params.lp - 2 * j + 2)
            .collect()
    }

    pub fn eval(&self, p: &ChartPoint) -> Result<LadderSample> {
        let j = ladder_jet(&self.params, p, self.k)?;
        let (l, lp) = self.weight;
        let n = apply_operator(ChartOperator::Nplus, p, &j, l, lp, self.params.s, self.params.m)?;
        Ok(LadderSample {
            point: *p,
            value: j.value(),
            n_plus: n.value(),
        })
    }

    pub fn eval_many(&self, points: &[ChartPoint]) -> Result<Vec<LadderSample>> {
        points.par_iter().map(|p| self.eval(p)).collect()
    }
}

pub fn ladder(l: i32, lp: i32, m: i32, s: C64, target_k: usize) -> Result<LadderVector> {
    let params = BesselParams::new(l, lp, m, s)?;
    if 2 * target_k as i32 > l - lp {
        return Err(Error::InvalidWeights { l, lp, reason: "target K-type exceeds (l, l)" });
    }
    Ok(LadderVector {
        params,
        k: target_k,
        weight: (l, lp + 2 * target_k as i32),
    })
}

/// Closed forms of `B_{l,l}` at `(λ, ζ, 0, 0)` for `s = m = 0` and
/// `l − l′ = 2k`, `k = 1..4`, up to the normalisation of `B₀`.
pub fn ladder_closed_form(l: i32, k: usize, lambda: f64, zeta: f64) -> Result<f64> {
    let x = (zeta * zeta + zeta.powi(-2)) / 2.0;
    let q = 8.0 * PI * lambda;
    let lf = l as f64;
    let e = (-4.0 * PI * lambda * x).exp();
    let v = match k {
        1 => 4.0 * lambda.powi(l - 1) * (2.0 * (lf - 3.0) * x + q),
        2 => {
            let (a, b) = (lf - 4.0, lf - 5.0);
            4.0 / 15.0
                * lambda.powi(l - 2)
                * (12.0 * a * b * x * x - 8.0 * a * x * q + 2.0 * q * q - 4.0 * a * b)
        }
        3 => {
            let (a, b, d) = (lf - 5.0, lf - 6.0, lf - 7.0);
            8.0 / 35.0
                * lambda.powi(l - 3)
                * (40.0 * a * b * d * x.powi(3) - 36.0 * a * b * q * x * x + 12.0 * a * q * q * x
                    - 2.0 * q.powi(3)
                    - 24.0 * a * b * d * x
                    + 12.0 * a * b * q)
        }
        4 => {
            let (a, b, d, f) = (lf - 6.0, lf - 7.0, lf - 8.0, lf - 9.0);
            16.0 / 315.0
                * lambda.powi(l - 4)
                * (560.0 * a * b * d * f * x.powi(4) - 640.0 * a * b * d * q * x.powi(3)
                    + 288.0 * a * b * q * q * x * x
                    - 64.0 * a * q.powi(3) * x
                    + 8.0 * q.powi(4)
                    - 480.0 * a * b * d * f * x * x
                    + 384.0 * a * b * d * q * x
                    - 96.0 * a * b * q * q
                    + 48.0 * a * b * d * f)
        }
        _ => {
            return Err(Error::ParameterRegionUnsupported {
                what: format!("no closed form for k = {k}"),
            })
        }
    };
    Ok(e * v)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramReport {
    pub singular_values: Vec<f64>,
    pub independent: bool,
}

/// Fixed sample of chart points away from `ζ = 1` and `cos 2φ₂ = 0`.
pub fn chart_sample(n: usize, seed: u64) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            ChartPoint::nonsplit(
                rng.gen_range(0.2..1.2),
                rng.gen_range(1.1..1.8),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-0.6..0.6),
            )
        })
        .collect()
}

/// Value of a word applied to `B₀` at `p`.
pub fn word_value(prm: &BesselParams, word: &LadderWord, p: &ChartPoint) -> Result<C64> {
    let n = word.letters.len();
    let f = b0_jet(prm, p, word.lambda_zeta_uses(), n)?;
    let (j, _) = apply_letters(p, prm, &word.letters, f, (prm.l, prm.lp))?;
    Ok(j.value() * word.coeff)
}

/// Singular values of the Gram matrix of the column-normalised word values on a
/// fixed 40-point sample.
pub fn linear_independence_check(prm: &BesselParams, words: &[LadderWord]) -> Result<GramReport> {
    let pts = chart_sample(40, 0x5eed);
    let cols: Vec<Vec<C64>> = words
        .iter()
        .map(|w| pts.par_iter().map(|p| word_value(prm, w, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut a = DMatrix::<C64>::zeros(pts.len(), words.len());
    for (j, col) in cols.iter().enumerate() {
        let norm = col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let norm = if norm > 0.0 { norm } else { 1.0 };
        for (i, v) in col.iter().enumerate() {
            a[(i, j)] = v / norm;
        }
    }
    let gram = a.adjoint() * &a;
    let mut sv: Vec<f64> = gram.singular_values().iter().cloned().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    let independent = match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) => lo > 1e-6 * hi,
        _ => false,
    };
    Ok(GramReport {
        singular_values: sv,
        independent,
    })
}

/// Outcome of the λ-shape test: at fixed ζ and `k`, `B(h(λ,ζ,0,0)k)` divided by
/// `λ^{(l+l′+s)/2}e^{−2πλ(ζ²+ζ⁻²)}` is a polynomial in λ of degree ≤ `degree`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub degree: usize,
    /// Largest relative least-squares residual over the ζ slices.
    pub max_residual: f64,
}

const SHAPE_ZETAS: [f64; 4] = [1.1, 1.3, 1.6, 2.0];
const SHAPE_ANGLES: (f64, f64) = (0.3, 0.2);

fn lambda_shape<F>(prm: &BesselParams, degree: usize, value: F) -> Result<ShapeReport>
where
    F: Fn(&ChartPoint) -> Result<C64> + Sync,
{
    let lams: Vec<f64> = (0..degree + 8).map(|i| 0.25 + 0.1 * i as f64).collect();
    let expo = (c((prm.l + prm.lp) as f64) + prm.s) * 0.5;
    let mut max_residual: f64 = 0.0;
    for &z in &SHAPE_ZETAS {
        let xx = z * z + z.powi(-2);
        let vals = lams
            .par_iter()
            .map(|&lam| {
                let v = value(&ChartPoint::nonsplit(lam, z, SHAPE_ANGLES.0, SHAPE_ANGLES.1))?;
                Ok(v / (c(lam).powc(expo) * (-2.0 * PI * lam * xx).exp()))
            })
            .collect::<Result<Vec<C64>>>()?;
        let a = DMatrix::<C64>::from_fn(lams.len(), degree + 1, |i, j| c(lams[i].powi(j as i32)));
        let b = nalgebra::DVector::from_vec(vals);
        let sol = a
            .clone()
            .svd(true, true)
            .solve(&b, 1e-14)
            .map_err(|e| Error::ParameterRegionUnsupported { what: e.to_string() })?;
        let res = (&a * sol - &b).norm() / b.norm().max(f64::MIN_POSITIVE);
        max_residual = max_residual.max(res);
    }
    Ok(ShapeReport { degree, max_residual })
}

/// λ-shape test for a word applied to `B₀`; the degree bound is the word length.
pub fn word_shape_check(prm: &BesselParams, word: &LadderWord) -> Result<ShapeReport> {
    lambda_shape(prm, word.letters.len(), |p| word_value(prm, word, p))
}

impl LadderVector {
    /// λ-shape test for the vector; the degree bound is `k`.
    pub fn shape_check(&self) -> Result<ShapeReport> {
        lambda_shape(&self.params, self.k, |p| Ok(ladder_jet(&self.params, p, self.k)?.value()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_step_matches_closed_form_exactly() {
        let v = ladder(12, 8, 0, c(0.0), 2).unwrap();
        for &(lam, z) in &[(0.5, 1.2), (0.8, 1.5), (1.1, 1.3)] {
            let p = ChartPoint::nonsplit(lam, z, 0.0, 0.0);
            let smp = v.eval(&p).unwrap();
            assert!(smp.n_plus.norm() < 1e-8 * smp.value.norm(), "{smp:?}");
            let r = smp.value / ladder_closed_form(12, 2, lam, z).unwrap();
            assert!((r - 1.0).norm() < 1e-9, "{r}");
        }
    }

    #[test]
    fn first_step_has_opposite_sign_on_the_lambda_term() {
        // The printed k = 1 display carries +8πλ and prefactor 4; the
        // recursion gives (2/3)(2(l−3)x − 8πλ).
        let l = 7;
        let v = ladder(l, l - 2, 0, c(0.0), 1).unwrap();
        for &(lam, z) in &[(0.5, 1.2), (0.8, 1.5), (1.1, 1.3)] {
            let p = ChartPoint::nonsplit(lam, z, 0.0, 0.0);
            let x = (z * z + z.powi(-2)) / 2.0;
            let want = 2.0 / 3.0
                * (-4.0 * PI * lam * x).exp()
                * lam.powi(l - 1)
                * (2.0 * (l as f64 - 3.0) * x - 8.0 * PI * lam);
            let got = v.eval(&p).unwrap().value;
            assert!((got - want).norm() < 1e-10 * want.abs(), "{got} vs {want}");
        }
    }

    #[test]
    fn shape_of_intermediate_vectors() {
        for k in 1..=3 {
            let r = ladder(10, 4, 2, c(0.0), k).unwrap().shape_check().unwrap();
            assert!(r.max_residual < 1e-9, "{k}: {r:?}");
        }
        let prm = BesselParams::new(6, 2, 0, C64::new(0.0, 0.4)).unwrap();
        let w = LadderWord::new(vec![Letter::Xplus, Letter::P1plus]);
        let r = word_shape_check(&prm, &w).unwrap();
        assert!(r.max_residual < 1e-9, "{r:?}");
        // one degree short must fail
        let bad = lambda_shape(&prm, 0, |p| word_value(&prm, &w, p)).unwrap();
        assert!(bad.max_residual > 1e-4, "{bad:?}");
    }

    #[test]
    fn dependent_words_are_detected() {
        let prm = BesselParams::new(4, 2, 0, c(0.0)).unwrap();
        let words = [LadderWord::new(vec![]), LadderWord::scaled(c(2.0), vec![])];
        assert!(!linear_independence_check(&prm, &words).unwrap().independent);
        let words = [
            LadderWord::new(vec![]),
            LadderWord::new(vec![Letter::Xplus]),
            LadderWord::new(vec![Letter::Xplus, Letter::Xplus]),
        ];
        assert!(linear_independence_check(&prm, &words).unwrap().independent);
    }
}
