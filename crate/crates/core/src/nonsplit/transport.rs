//! Transports of Bessel functions between models: change of the quadratic
//! form `S ↦ α·ᵗASA` and twisting by a character of the multiplier.

use crate::error::Result;
use crate::group::multiplier_entry;
use crate::jets::GroupFunction;
use crate::matrix::{Mat4, RMat4};
use crate::scalar::{c, Scalar, C64};

/// `B′(g) = B(blockdiag(A, α⁻¹·ᵗA⁻¹)·g)`.
#[derive(Debug, Clone)]
pub struct ChangeOfModel<F> {
    pub inner: F,
    left: RMat4,
}

impl<F: GroupFunction> ChangeOfModel<F> {
    /// Panics if `A` is singular or `α = 0`.
    pub fn new(inner: F, a: [[f64; 2]; 2], alpha: f64) -> Self {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        assert!(det != 0.0 && alpha != 0.0, "change of model needs invertible A and alpha != 0");
        // α⁻¹·ᵗA⁻¹ = α⁻¹·det⁻¹·[[a₁₁, −a₁₀], [−a₀₁, a₀₀]]
        let k = 1.0 / (alpha * det);
        let d = [[a[1][1] * k, -a[1][0] * k], [-a[0][1] * k, a[0][0] * k]];
        let mut left = RMat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                left.0[i][j] = a[i][j];
                left.0[i + 2][j + 2] = d[i][j];
            }
        }
        ChangeOfModel { inner, left }
    }

    pub fn left_factor(&self) -> &RMat4 {
        &self.left
    }
}

impl<F: GroupFunction> GroupFunction for ChangeOfModel<F> {
    fn eval<T: Scalar>(&self, g: &Mat4<T>) -> Result<T> {
        let like = &g.0[0][0];
        let m = Mat4::lift(&self.left, like).mul(g);
        self.inner.eval(&m)
    }
}

/// `B̃(g) = χ(μ₂(g))·B(g)` with `χ(x) = |x|^e·sign(x)^{(1−σ)/2}`.
#[derive(Debug, Clone)]
pub struct Twist<F> {
    pub inner: F,
    pub exponent: C64,
    pub sign: i32,
}

impl<F: GroupFunction> Twist<F> {
    pub fn new(inner: F, exponent: C64, sign: i32) -> Self {
        assert!(sign == 1 || sign == -1, "chi sign must be +1 or -1");
        Twist { inner, exponent, sign }
    }

    pub fn chi(&self, x: f64) -> C64 {
        let flip = if self.sign == -1 && x < 0.0 { -1.0 } else { 1.0 };
        c(x.abs()).powc(self.exponent) * flip
    }
}

impl<F: GroupFunction> GroupFunction for Twist<F> {
    fn eval<T: Scalar>(&self, g: &Mat4<T>) -> Result<T> {
        let mu = multiplier_entry(g);
        let neg = mu.value().re < 0.0;
        let abs_mu = if neg { -mu } else { mu };
        let mut chi = abs_mu.powc(self.exponent)?;
        if neg && self.sign == -1 {
            chi = -chi;
        }
        Ok(chi.times(&self.inner.eval(g)?))
    }
}
