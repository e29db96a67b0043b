use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::shape::JetShape;
use crate::error::Result;
use crate::scalar::{c, check_nonzero, Scalar, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Truncated multivariate Taylor expansion with complex coefficients.
#[derive(Clone, Debug)]
pub struct Jet {
    shape: Arc<JetShape>,
    coeffs: Vec<C64>,
}

impl Jet {
    pub fn constant(shape: &Arc<JetShape>, value: C64) -> Jet {
        let mut coeffs = vec![ZERO; shape.len()];
        coeffs[0] = value;
        Jet {
            shape: shape.clone(),
            coeffs,
        }
    }

    /// The coordinate function `x_var` expanded around `value`.
    pub fn variable(shape: &Arc<JetShape>, var: usize, value: C64) -> Jet {
        let mut j = Jet::constant(shape, value);
        let mut e = vec![0; shape.nvars()];
        e[var] = 1;
        if let Some(i) = shape.index(&e) {
            j.coeffs[i] = c(1.0);
        }
        j
    }

    pub fn from_coeffs(shape: &Arc<JetShape>, coeffs: Vec<C64>) -> Jet {
        assert_eq!(coeffs.len(), shape.len(), "coefficient count does not match shape");
        Jet {
            shape: shape.clone(),
            coeffs,
        }
    }

    pub fn shape(&self) -> &Arc<JetShape> {
        &self.shape
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    /// Taylor coefficient of the monomial with exponents `exps` (zero if truncated).
    pub fn coeff(&self, exps: &[usize]) -> C64 {
        self.shape.index(exps).map_or(ZERO, |i| self.coeffs[i])
    }

    /// Mixed partial derivative `∂^exps` at the expansion point.
    pub fn derivative(&self, exps: &[usize]) -> C64 {
        let fact: f64 = exps
            .iter()
            .map(|&e| (1..=e).map(|k| k as f64).product::<f64>())
            .product();
        self.coeff(exps) * fact
    }

    /// Copy onto a smaller shape, dropping truncated monomials.
    pub fn restrict(&self, target: &Arc<JetShape>) -> Jet {
        if Arc::ptr_eq(&self.shape, target) || *self.shape == **target {
            return Jet {
                shape: target.clone(),
                coeffs: self.coeffs.clone(),
            };
        }
        let mut coeffs = vec![ZERO; target.len()];
        target.for_each_monomial(|e, i| {
            if let Some(src) = self.shape.index(e) {
                coeffs[i] = self.coeffs[src];
            }
        });
        Jet {
            shape: target.clone(),
            coeffs,
        }
    }

    /// Partial derivative in variable `var`; the result loses one order.
    pub fn partial(&self, var: usize) -> Jet {
        let target = self.shape.differentiated(var);
        let mut coeffs = vec![ZERO; target.len()];
        let mut up = vec![0; target.nvars()];
        target.for_each_monomial(|e, i| {
            up.copy_from_slice(e);
            up[var] += 1;
            if let Some(src) = self.shape.index(&up) {
                coeffs[i] = self.coeffs[src] * up[var] as f64;
            }
        });
        Jet {
            shape: target,
            coeffs,
        }
    }

    fn aligned(a: &Jet, b: &Jet) -> (Jet, Jet) {
        let m = JetShape::meet(&a.shape, &b.shape);
        (a.restrict(&m), b.restrict(&m))
    }

    fn same_shape(&self, other: &Jet) -> bool {
        Arc::ptr_eq(&self.shape, &other.shape) || *self.shape == *other.shape
    }

    fn nonzero_runs(&self) -> usize {
        self.shape
            .prefixes
            .iter()
            .filter(|p| self.coeffs[p.base..p.base + p.run].iter().any(|z| *z != ZERO))
            .count()
    }

    fn mul_same(a: &Jet, b: &Jet) -> Jet {
        let (a, b) = if a.nonzero_runs() <= b.nonzero_runs() {
            (a, b)
        } else {
            (b, a)
        };
        let sh = &a.shape;
        let order = sh.order();
        let mut out = vec![ZERO; sh.len()];
        for pa in &sh.prefixes {
            let arun = &a.coeffs[pa.base..pa.base + pa.run];
            if arun.iter().all(|z| *z == ZERO) {
                continue;
            }
            for pb in &sh.prefixes {
                if pa.degree + pb.degree > order {
                    break;
                }
                if sh.checked && !sh.compatible(pa, pb) {
                    continue;
                }
                let Some(po) = sh.prefix_of(pa.key + pb.key) else {
                    continue;
                };
                let brun = &b.coeffs[pb.base..pb.base + pb.run];
                for (ia, &av) in arun.iter().enumerate().take(po.run) {
                    if av == ZERO {
                        continue;
                    }
                    let nb = (po.run - ia).min(pb.run);
                    let dst = &mut out[po.base + ia..po.base + ia + nb];
                    for (d, &bv) in dst.iter_mut().zip(&brun[..nb]) {
                        *d += av * bv;
                    }
                }
            }
        }
        Jet {
            shape: sh.clone(),
            coeffs: out,
        }
    }

    fn zip_with(self, other: Jet, f: impl Fn(C64, C64) -> C64) -> Jet {
        let (mut a, b) = if self.same_shape(&other) {
            (self, other)
        } else {
            Jet::aligned(&self, &other)
        };
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x = f(*x, *y);
        }
        a
    }

    /// Evaluates `Σ_k series[k]·u^k` where `u = self − self.value()`.
    fn compose(&self, series: &[C64]) -> Jet {
        let mut u = self.clone();
        u.coeffs[0] = ZERO;
        let n = series.len() - 1;
        let mut r = Jet::constant(&self.shape, series[n]);
        for k in (0..n).rev() {
            r = Jet::mul_same(&r, &u);
            r.coeffs[0] += series[k];
        }
        r
    }

    fn terms(&self) -> usize {
        self.shape.nilpotency() + 1
    }

    /// Evaluates the jet as a polynomial at displacement `h` from the expansion point.
    pub fn eval_polynomial(&self, h: &[f64]) -> C64 {
        let mut acc = ZERO;
        self.shape.for_each_monomial(|e, i| {
            let mut m = 1.0;
            for (x, &k) in h.iter().zip(e) {
                m *= x.powi(k as i32);
            }
            acc += self.coeffs[i] * m;
        });
        acc
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        self.times(&rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for x in &mut self.coeffs {
            *x = -*x;
        }
        self
    }
}

impl Scalar for Jet {
    fn value(&self) -> C64 {
        self.coeffs[0]
    }

    fn constant_like(&self, c: C64) -> Self {
        Jet::constant(&self.shape, c)
    }

    fn scale(&self, c: C64) -> Self {
        Jet {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn add_const(&self, c: C64) -> Self {
        let mut j = self.clone();
        j.coeffs[0] += c;
        j
    }

    fn times(&self, other: &Self) -> Self {
        if self.same_shape(other) {
            Jet::mul_same(self, other)
        } else {
            let (a, b) = Jet::aligned(self, other);
            Jet::mul_same(&a, &b)
        }
    }

    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn recip(&self) -> Result<Self> {
        let a0 = self.value();
        check_nonzero("recip", a0)?;
        let inv = 1.0 / a0;
        let mut s = Vec::with_capacity(self.terms());
        let mut t = inv;
        for _ in 0..self.terms() {
            s.push(t);
            t *= -inv;
        }
        Ok(self.compose(&s))
    }

    fn exp(&self) -> Self {
        let e0 = self.value().exp();
        let mut s = Vec::with_capacity(self.terms());
        let mut t = e0;
        for k in 0..self.terms() {
            s.push(t);
            t /= (k + 1) as f64;
        }
        self.compose(&s)
    }

    fn ln(&self) -> Result<Self> {
        let a0 = self.value();
        check_nonzero("ln", a0)?;
        let inv = 1.0 / a0;
        let mut s = vec![a0.ln()];
        let mut p = inv;
        for k in 1..self.terms() {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            s.push(p * (sign / k as f64));
            p *= inv;
        }
        Ok(self.compose(&s))
    }

    fn powc(&self, p: C64) -> Result<Self> {
        let a0 = self.value();
        check_nonzero("powc", a0)?;
        let inv = 1.0 / a0;
        let mut t = a0.powc(p);
        let mut s = Vec::with_capacity(self.terms());
        for k in 0..self.terms() {
            s.push(t);
            t *= (p - k as f64) / (k + 1) as f64 * inv;
        }
        Ok(self.compose(&s))
    }

    fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.times(&sq);
            }
        }
        Ok(acc)
    }

    fn sin(&self) -> Self {
        let a0 = self.value();
        let cyc = [a0.sin(), a0.cos(), -a0.sin(), -a0.cos()];
        self.compose(&trig_series(&cyc, self.terms()))
    }

    fn cos(&self) -> Self {
        let a0 = self.value();
        let cyc = [a0.cos(), -a0.sin(), -a0.cos(), a0.sin()];
        self.compose(&trig_series(&cyc, self.terms()))
    }

    fn sqrt(&self) -> Result<Self> {
        check_nonzero("sqrt", self.value())?;
        self.powc(c(0.5))
    }

    fn tan(&self) -> Result<Self> {
        let cs = self.cos();
        check_nonzero("tan", cs.value())?;
        Ok(self.sin().times(&cs.recip()?))
    }
}

fn trig_series(cycle: &[C64; 4], n: usize) -> Vec<C64> {
    let mut fact = 1.0;
    (0..n)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            cycle[k % 4] / fact
        })
        .collect()
}
