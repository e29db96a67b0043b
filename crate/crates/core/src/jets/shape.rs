//! Monomial layout for truncated multivariate power series.
//!
//! Monomials are grouped by their exponents in all but the last variable (the
//! "prefix"). Each prefix owns a contiguous run over the last exponent, so the
//! inner loop of a product is a dense convolution of two runs.

use std::sync::Arc;

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Prefix {
    pub exps: Vec<u16>,
    pub key: usize,
    pub degree: usize,
    pub base: usize,
    pub run: usize,
}

/// Truncation pattern: total degree at most `order`, exponent of variable `i`
/// at most `caps[i]`.
#[derive(Debug)]
pub struct JetShape {
    caps: Vec<usize>,
    order: usize,
    radix: Vec<usize>,
    pub(crate) prefixes: Vec<Prefix>,
    lookup: Vec<u32>,
    len: usize,
    pub(crate) checked: bool,
}

impl PartialEq for JetShape {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.caps == other.caps
    }
}

impl JetShape {
    /// Shape with per-variable caps and a total-degree cap.
    pub fn new(caps: &[usize], order: usize) -> Arc<JetShape> {
        assert!(!caps.is_empty(), "a jet needs at least one variable");
        let caps: Vec<usize> = caps.iter().map(|&c| c.min(order)).collect();
        let n = caps.len();
        let mut radix = Vec::with_capacity(n - 1);
        let mut place = 1usize;
        for &cap in &caps[..n - 1] {
            radix.push(place);
            place *= cap + 1;
        }
        let table_len = place;

        let mut prefixes = Vec::new();
        let mut exps = vec![0u16; n - 1];
        loop {
            let degree: usize = exps.iter().map(|&e| e as usize).sum();
            if degree <= order {
                let key = exps
                    .iter()
                    .zip(&radix)
                    .map(|(&e, &r)| e as usize * r)
                    .sum();
                let run = caps[n - 1].min(order - degree) + 1;
                prefixes.push(Prefix {
                    exps: exps.clone(),
                    key,
                    degree,
                    base: 0,
                    run,
                });
            }
            // mixed-radix increment over the prefix variables
            let mut i = 0;
            while i < n - 1 {
                if (exps[i] as usize) < caps[i] {
                    exps[i] += 1;
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == n - 1 {
                break;
            }
        }
        prefixes.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.key.cmp(&b.key)));
        let mut lookup = vec![ABSENT; table_len];
        let mut base = 0;
        for (idx, p) in prefixes.iter_mut().enumerate() {
            p.base = base;
            base += p.run;
            lookup[p.key] = idx as u32;
        }
        let checked = caps[..n - 1].iter().any(|&c| c < order);
        Arc::new(JetShape {
            caps,
            order,
            radix,
            prefixes,
            lookup,
            len: base,
            checked,
        })
    }

    /// All exponents bounded only by the total degree.
    pub fn total(nvars: usize, order: usize) -> Arc<JetShape> {
        JetShape::new(&vec![order; nvars], order)
    }

    /// Four chart variables (λ, ζ, φ₁, φ₂) up to total degree `order`.
    pub fn chart(order: usize) -> Arc<JetShape> {
        JetShape::total(4, order)
    }

    /// `k` nilpotent directions with ε_i² = 0.
    pub fn multidual(k: usize) -> Arc<JetShape> {
        JetShape::new(&vec![1; k], k)
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Highest total degree that can carry a nonzero coefficient.
    pub fn nilpotency(&self) -> usize {
        self.order.min(self.caps.iter().sum())
    }

    pub(crate) fn prefix_of(&self, key: usize) -> Option<&Prefix> {
        match self.lookup.get(key) {
            Some(&i) if i != ABSENT => Some(&self.prefixes[i as usize]),
            _ => None,
        }
    }

    /// Flat index of a monomial, or `None` when it is truncated away.
    pub fn index(&self, exps: &[usize]) -> Option<usize> {
        let n = self.nvars();
        if exps.len() != n {
            return None;
        }
        let mut key = 0;
        for i in 0..n - 1 {
            if exps[i] > self.caps[i] {
                return None;
            }
            key += exps[i] * self.radix[i];
        }
        let p = self.prefix_of(key)?;
        (exps[n - 1] < p.run).then(|| p.base + exps[n - 1])
    }

    /// Visits every monomial in storage order.
    pub fn for_each_monomial(&self, mut f: impl FnMut(&[usize], usize)) {
        let n = self.nvars();
        let mut e = vec![0usize; n];
        for p in &self.prefixes {
            for (slot, &x) in e.iter_mut().zip(&p.exps) {
                *slot = x as usize;
            }
            for last in 0..p.run {
                e[n - 1] = last;
                f(&e, p.base + last);
            }
        }
    }

    pub(crate) fn compatible(&self, a: &Prefix, b: &Prefix) -> bool {
        a.exps
            .iter()
            .zip(&b.exps)
            .zip(&self.caps)
            .all(|((&x, &y), &cap)| (x + y) as usize <= cap)
    }

    pub fn is_subshape_of(&self, other: &JetShape) -> bool {
        self.nvars() == other.nvars()
            && self.order <= other.order
            && self.caps.iter().zip(&other.caps).all(|(a, b)| a <= b)
    }

    /// Largest shape contained in both.
    pub fn meet(a: &Arc<JetShape>, b: &Arc<JetShape>) -> Arc<JetShape> {
        if Arc::ptr_eq(a, b) || a.is_subshape_of(b) {
            return a.clone();
        }
        if b.is_subshape_of(a) {
            return b.clone();
        }
        let caps: Vec<usize> = a.caps.iter().zip(&b.caps).map(|(x, y)| *x.min(y)).collect();
        JetShape::new(&caps, a.order.min(b.order))
    }

    /// Shape of the partial derivative in variable `var`.
    pub fn differentiated(&self, var: usize) -> Arc<JetShape> {
        let mut caps = self.caps.clone();
        caps[var] = caps[var].saturating_sub(1);
        JetShape::new(&caps, self.order.saturating_sub(1))
    }
}
