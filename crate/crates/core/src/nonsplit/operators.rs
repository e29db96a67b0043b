//! Chart-coordinate formulas for the complexified Lie algebra acting on
//! non-split Bessel functions.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::ChartPoint;
use crate::jets::{chart_variables, Jet, JetShape};
use crate::lie::BasisTag;
use crate::scalar::{c, Scalar, C64, I};

/// The eight non-central complex basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartOperator {
    Nplus,
    Nminus,
    Xplus,
    Xminus,
    P1plus,
    P1minus,
    P0plus,
    P0minus,
}

impl ChartOperator {
    pub const ALL: [ChartOperator; 8] = [
        ChartOperator::Nplus,
        ChartOperator::Nminus,
        ChartOperator::Xplus,
        ChartOperator::Xminus,
        ChartOperator::P1plus,
        ChartOperator::P1minus,
        ChartOperator::P0plus,
        ChartOperator::P0minus,
    ];

    pub fn tag(self) -> BasisTag {
        match self {
            ChartOperator::Nplus => BasisTag::Nplus,
            ChartOperator::Nminus => BasisTag::Nminus,
            ChartOperator::Xplus => BasisTag::Xplus,
            ChartOperator::Xminus => BasisTag::Xminus,
            ChartOperator::P1plus => BasisTag::P1plus,
            ChartOperator::P1minus => BasisTag::P1minus,
            ChartOperator::P0plus => BasisTag::P0plus,
            ChartOperator::P0minus => BasisTag::P0minus,
        }
    }

    /// `+1` for the `+` member of each pair.
    pub fn sign(self) -> f64 {
        match self {
            ChartOperator::Nplus
            | ChartOperator::Xplus
            | ChartOperator::P1plus
            | ChartOperator::P0plus => 1.0,
            _ => -1.0,
        }
    }

    /// Change of the weight `(l, l′)` caused by the operator.
    pub fn weight_shift(self) -> (i32, i32) {
        match self {
            ChartOperator::Nplus => (1, -1),
            ChartOperator::Nminus => (-1, 1),
            ChartOperator::Xplus => (2, 0),
            ChartOperator::Xminus => (-2, 0),
            ChartOperator::P1plus => (1, 1),
            ChartOperator::P1minus => (-1, -1),
            ChartOperator::P0plus => (0, 2),
            ChartOperator::P0minus => (0, -2),
        }
    }

    fn uses_lambda_zeta(self) -> bool {
        !matches!(self, ChartOperator::Nplus | ChartOperator::Nminus)
    }
}

/// Coefficients of `f, ∂_λf, ∂_ζf, ∂_φ₁f, ∂_φ₂f` in `op.f`, where `f` has
/// weight `(l, lp)` and the torus character is `(s, m)`.
pub fn operator_terms<T: Scalar>(
    op: ChartOperator,
    x: &[T; 4],
    l: i32,
    lp: i32,
    s: C64,
    m: i32,
) -> Result<[Option<T>; 5]> {
    let [lam, zeta, p1, p2] = x;
    let pm = op.sign();
    let (l, lp, mf) = (l as f64, lp as f64, m as f64);
    let two = c(2.0);
    let (s1, c1) = (p1.scale(two).sin(), p1.scale(two).cos());
    let (s2, c2) = (p2.scale(two).sin(), p2.scale(two).cos());
    if c2.value().norm() < 1e-12 {
        return Err(Error::ChartSingularity { what: "cos(2 phi2) = 0" });
    }
    let c2i = c2.recip()?;
    let tan2 = s2.times(&c2i);

    if !op.uses_lambda_zeta() {
        let f = tan2.scale(I * 0.5 * (lp - l));
        let d1 = c2i.scale(c(0.5));
        let d2 = lam.constant_like(-I * 0.5 * pm);
        return Ok([Some(f), None, None, Some(d1), Some(d2)]);
    }

    let z2 = zeta.square();
    let zm2 = z2.recip()?;
    let zp = z2.plus(&zm2);
    let zd = z2.minus(&zm2);
    if zd.value().norm() < 1e-12 {
        return Err(Error::ChartSingularity { what: "zeta^4 = 1" });
    }
    let zdi = zd.recip()?;
    let ratio = zp.times(&zdi);
    let sp2 = p2.sin();
    let cp2 = p2.cos();
    let quartic = sp2.square().square() + cp2.square().square();
    let s2sq_c2 = s2.square().times(&c2i);

    let terms = match op {
        ChartOperator::Xplus | ChartOperator::Xminus => {
            let f = c2.scale(-s / 4.0)
                + zdi.times(&(s1.scale(I) + c1.times(&s2).scale(c(pm)))).scale(c(mf / 2.0))
                + quartic.times(&c2i).scale(c(pm * l / 2.0))
                - s2sq_c2.scale(c(pm * lp / 4.0))
                - lam.times(&zd).times(&s1).times(&s2).scale(I * PI)
                - lam.times(&zd).times(&c1).scale(c(pm * PI))
                - lam.times(&zp).times(&c2).scale(c(pm * PI));
            let dl = c2.times(lam).scale(c(0.5));
            let dz = (c1.clone() + s1.times(&s2).scale(I * pm)).times(zeta).scale(c(0.25));
            let d1 = ratio.times(&(-s1.clone() + c1.times(&s2).scale(I * pm))).scale(c(0.25))
                + tan2.scale(I * (pm * 0.25));
            let d2 = s2.scale(c(0.25));
            [f, dl, dz, d1, d2]
        }
        ChartOperator::P1plus | ChartOperator::P1minus => {
            let f = s2.scale(-I * (pm * 0.5) * s)
                - c1.times(&c2).times(&zdi).scale(I * mf)
                + s2.scale(I * ((l + lp) / 2.0))
                - lam.times(&zp).times(&s2).scale(I * (2.0 * PI))
                - lam.times(&zd).times(&c2).times(&s1).scale(c(pm * 2.0 * PI));
            let dl = s2.times(lam).scale(I * pm);
            let dz = c2.times(&s1).times(zeta).scale(c(0.5));
            let d1 = ratio.times(&c1).times(&c2).scale(c(0.5));
            let d2 = c2.scale(-I * (pm * 0.5));
            [f, dl, dz, d1, d2]
        }
        ChartOperator::P0plus | ChartOperator::P0minus => {
            let f = c2.scale(-s / 4.0)
                - zdi.times(&(s1.scale(I) - c1.times(&s2).scale(c(pm)))).scale(c(mf / 2.0))
                - s2sq_c2.scale(c(pm * l / 4.0))
                + quartic.times(&c2i).scale(c(pm * lp / 2.0))
                - lam.times(&zd).times(&s1).times(&s2).scale(I * PI)
                - lam.times(&zp).times(&c2).scale(c(pm * PI))
                + lam.times(&zd).times(&c1).scale(c(pm * PI));
            let dl = c2.times(lam).scale(c(0.5));
            let dz = (-c1.clone() + s1.times(&s2).scale(I * pm)).times(zeta).scale(c(0.25));
            let d1 = ratio.times(&(s1.clone() + c1.times(&s2).scale(I * pm))).scale(c(0.25))
                - tan2.scale(I * (pm * 0.25));
            let d2 = s2.scale(c(0.25));
            [f, dl, dz, d1, d2]
        }
        ChartOperator::Nplus | ChartOperator::Nminus => unreachable!(),
    };
    let [a, b, cc, d, e] = terms;
    Ok([Some(a), Some(b), Some(cc), Some(d), Some(e)])
}

/// The operator applied to a chart jet of `f`; the result loses one order.
pub fn apply_operator(
    op: ChartOperator,
    p: &ChartPoint,
    f: &Jet,
    l: i32,
    lp: i32,
    s: C64,
    m: i32,
) -> Result<Jet> {
    apply_terms(p, f, |x| operator_terms(op, x, l, lp, s, m))
}

pub(crate) fn apply_terms(
    p: &ChartPoint,
    f: &Jet,
    terms: impl Fn(&[Jet; 4]) -> Result<[Option<Jet>; 5]>,
) -> Result<Jet> {
    if f.order() == 0 {
        return Err(Error::JetOrderExhausted { needed: 1, available: 0 });
    }
    // shape of the result: one order lower, caps lowered only where derivatives are taken
    let probe_shape = JetShape::new(&[1, 1, 1, 1], 1);
    let probe = chart_variables(p, &probe_shape);
    let used = terms(&probe)?;
    let mut target: Arc<JetShape> = JetShape::new(f.shape().caps(), f.order() - 1);
    for var in 0..4 {
        if used[var + 1].is_some() {
            target = JetShape::meet(&target, &f.shape().differentiated(var));
        }
    }
    let x = chart_variables(p, &target);
    let coeffs = terms(&x)?;
    let fr = f.restrict(&target);
    let mut acc: Option<Jet> = None;
    for (k, coef) in coeffs.iter().enumerate() {
        let Some(coef) = coef else { continue };
        let term = if k == 0 {
            coef.times(&fr)
        } else {
            coef.times(&f.partial(k - 1))
        };
        acc = Some(match acc {
            None => term,
            Some(a) => a + term,
        });
    }
    Ok(acc.expect("every operator has a value term").restrict(&target))
}

/// The operator at a single point from the value and first partials of `f`.
pub fn operator_rhs(
    op: ChartOperator,
    p: &ChartPoint,
    value_and_partials: [C64; 5],
    l: i32,
    lp: i32,
    s: C64,
    m: i32,
) -> Result<C64> {
    let x = p.coords().map(c);
    let terms = operator_terms(op, &x, l, lp, s, m)?;
    Ok(terms
        .iter()
        .zip(value_and_partials)
        .filter_map(|(t, v)| t.map(|t| t * v))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_plus_kills_constants_on_the_axis() {
        let p = ChartPoint::nonsplit(1.3, 1.7, 0.4, 0.0);
        let v = operator_rhs(ChartOperator::Nplus, &p, [c(1.0), c(0.0), c(0.0), c(0.0), c(0.0)], 5, 5, c(0.0), 0)
            .unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn singular_chart_points_are_rejected() {
        let p = ChartPoint::nonsplit(1.0, 1.0, 0.1, 0.1);
        let r = operator_rhs(ChartOperator::Xplus, &p, [c(1.0); 5], 3, 1, c(0.0), 0);
        assert!(matches!(r, Err(Error::ChartSingularity { .. })));
        let p = ChartPoint::nonsplit(1.0, 1.3, 0.1, std::f64::consts::FRAC_PI_4);
        let r = operator_rhs(ChartOperator::Nplus, &p, [c(1.0); 5], 3, 1, c(0.0), 0);
        assert!(matches!(r, Err(Error::ChartSingularity { .. })));
    }
}
