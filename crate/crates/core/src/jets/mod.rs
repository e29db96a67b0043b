//! Jet arithmetic and the two derivative engines built on it: iterated Lie
//! derivatives along group directions and Taylor expansions in chart variables.

mod jet;
mod shape;

use std::sync::Arc;

pub use jet::Jet;
pub use shape::JetShape;

use crate::error::{Error, Result};
use crate::group::ChartPoint;
use crate::matrix::{CMat4, Mat4, RMat4};
use crate::scalar::{c, Scalar, C64};

/// Longest word accepted by [`lie_derivative`].
pub const MAX_WORD: usize = 6;

/// A function on (a complex neighbourhood of) the group, written with ring
/// operations only so it can be evaluated on jets.
pub trait GroupFunction: Sync {
    fn eval<T: Scalar>(&self, g: &Mat4<T>) -> Result<T>;

    fn eval_at(&self, g: &RMat4) -> Result<C64> {
        self.eval(&g.to_complex())
    }
}

impl<F: GroupFunction> GroupFunction for &F {
    fn eval<T: Scalar>(&self, g: &Mat4<T>) -> Result<T> {
        (**self).eval(g)
    }
}

/// A function of the chart coordinates `(λ, ζ, φ₁, φ₂)`.
pub trait ChartFunction: Sync {
    fn eval<T: Scalar>(&self, x: &[T; 4]) -> Result<T>;
}

/// `(L₁.(L₂.(… L_k.F)))(g)` for complex Lie algebra elements.
///
/// Computed exactly as the `ε₁⋯ε_k` coefficient of `F(g·(I+ε₁L₁)⋯(I+ε_kL_k))`.
pub fn lie_derivative<F: GroupFunction>(f: &F, g: &RMat4, word: &[CMat4]) -> Result<C64> {
    lie_derivative_complex(f, &g.to_complex(), word)
}

/// As [`lie_derivative`] with a complex base point.
pub fn lie_derivative_complex<F: GroupFunction>(f: &F, g: &CMat4, word: &[CMat4]) -> Result<C64> {
    let k = word.len();
    if k > MAX_WORD {
        return Err(Error::JetOrderExhausted {
            needed: k,
            available: MAX_WORD,
        });
    }
    if k == 0 {
        return f.eval(g);
    }
    let shape = JetShape::multidual(k);
    let one = Jet::constant(&shape, c(1.0));
    let mut m: Mat4<Jet> = Mat4::from_fn(|i, j| one.scale(g.0[i][j]));
    for (v, l) in word.iter().enumerate() {
        let eps = Jet::variable(&shape, v, c(0.0));
        let step: Mat4<Jet> = Mat4::from_fn(|i, j| {
            let e = eps.scale(l.0[i][j]);
            if i == j {
                e.add_const(c(1.0))
            } else {
                e
            }
        });
        m = m.mul(&step);
    }
    let out = f.eval(&m)?;
    Ok(out.coeff(&vec![1; k]))
}

/// Taylor expansion of `f` around the chart point in all four variables.
pub fn chart_jet<F: ChartFunction>(f: &F, p: &ChartPoint, order: usize) -> Result<Jet> {
    chart_jet_with_shape(f, p, &JetShape::chart(order))
}

/// Taylor expansion of `f` on an arbitrary four-variable shape.
pub fn chart_jet_with_shape<F: ChartFunction>(
    f: &F,
    p: &ChartPoint,
    shape: &Arc<JetShape>,
) -> Result<Jet> {
    let x = chart_variables(p, shape);
    f.eval(&x)
}

/// The coordinate jets `λ, ζ, φ₁, φ₂` at `p`.
pub fn chart_variables(p: &ChartPoint, shape: &Arc<JetShape>) -> [Jet; 4] {
    let v = p.coords();
    std::array::from_fn(|i| Jet::variable(shape, i, c(v[i])))
}

/// Partial derivative of a jet in one variable.
pub fn partial(j: &Jet, var: usize) -> Jet {
    j.partial(var)
}
