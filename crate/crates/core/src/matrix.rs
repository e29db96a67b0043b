//! Small dense matrices over any [`Scalar`], plus real 4×4 helpers backed by nalgebra.

use std::array::from_fn;

use nalgebra::Matrix4;

use crate::error::Result;
use crate::scalar::{c, Ring, Scalar, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4<T>(pub [[T; 4]; 4]);

pub type RMat4 = Mat4<f64>;
pub type CMat4 = Mat4<C64>;
pub type CMat2 = Mat2<C64>;

impl<T: Ring> Mat2<T> {
    pub fn from_fn(f: impl FnMut(usize, usize) -> T) -> Self {
        let mut f = f;
        Mat2(from_fn(|i| from_fn(|j| f(i, j))))
    }

    pub fn mul(&self, o: &Mat2<T>) -> Mat2<T> {
        let a = &self.0;
        let b = &o.0;
        Mat2::from_fn(|i, j| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone())
    }

    pub fn add(&self, o: &Mat2<T>) -> Mat2<T> {
        Mat2::from_fn(|i, j| self.0[i][j].clone() + o.0[i][j].clone())
    }

    pub fn det(&self) -> T {
        let a = &self.0;
        a[0][0].clone() * a[1][1].clone() - a[0][1].clone() * a[1][0].clone()
    }

    pub fn adj(&self) -> Mat2<T> {
        let a = &self.0;
        Mat2([
            [a[1][1].clone(), -a[0][1].clone()],
            [-a[1][0].clone(), a[0][0].clone()],
        ])
    }

    pub fn trace(&self) -> T {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    pub fn transpose(&self) -> Mat2<T> {
        Mat2::from_fn(|i, j| self.0[j][i].clone())
    }
}

impl<T: Scalar> Mat2<T> {
    /// `self · k` for a constant matrix `k`.
    pub fn mul_const(&self, k: &CMat2) -> Mat2<T> {
        let a = &self.0;
        Mat2::from_fn(|i, j| a[i][0].scale(k.0[0][j]) + a[i][1].scale(k.0[1][j]))
    }

    pub fn inverse(&self) -> Result<Mat2<T>> {
        let d = self.det().recip()?;
        let adj = self.adj();
        Ok(Mat2::from_fn(|i, j| adj.0[i][j].times(&d)))
    }
}

impl CMat2 {
    pub fn identity() -> CMat2 {
        Mat2([[c(1.0), c(0.0)], [c(0.0), c(1.0)]])
    }

    pub fn diag(a: C64, b: C64) -> CMat2 {
        Mat2([[a, c(0.0)], [c(0.0), b]])
    }

    pub fn max_abs_diff(&self, o: &CMat2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        m
    }
}

impl<T: Ring> Mat4<T> {
    pub fn from_fn(f: impl FnMut(usize, usize) -> T) -> Self {
        let mut f = f;
        Mat4(from_fn(|i| from_fn(|j| f(i, j))))
    }

    pub fn mul(&self, o: &Mat4<T>) -> Mat4<T> {
        let a = &self.0;
        let b = &o.0;
        Mat4::from_fn(|i, j| {
            let mut s = a[i][0].clone() * b[0][j].clone();
            for k in 1..4 {
                s = s + a[i][k].clone() * b[k][j].clone();
            }
            s
        })
    }

    pub fn add(&self, o: &Mat4<T>) -> Mat4<T> {
        Mat4::from_fn(|i, j| self.0[i][j].clone() + o.0[i][j].clone())
    }

    pub fn sub(&self, o: &Mat4<T>) -> Mat4<T> {
        Mat4::from_fn(|i, j| self.0[i][j].clone() - o.0[i][j].clone())
    }

    pub fn transpose(&self) -> Mat4<T> {
        Mat4::from_fn(|i, j| self.0[j][i].clone())
    }

    /// 2×2 block `(bi, bj)` with blocks `A B / C D`.
    pub fn block(&self, bi: usize, bj: usize) -> Mat2<T> {
        Mat2::from_fn(|i, j| self.0[2 * bi + i][2 * bj + j].clone())
    }

    pub fn from_blocks(a: &Mat2<T>, b: &Mat2<T>, cc: &Mat2<T>, d: &Mat2<T>) -> Mat4<T> {
        Mat4::from_fn(|i, j| {
            let blk = match (i / 2, j / 2) {
                (0, 0) => a,
                (0, 1) => b,
                (1, 0) => cc,
                _ => d,
            };
            blk.0[i % 2][j % 2].clone()
        })
    }

    pub fn trace(&self) -> T {
        self.0[0][0].clone() + self.0[1][1].clone() + self.0[2][2].clone() + self.0[3][3].clone()
    }
}

impl<T: Scalar> Mat4<T> {
    /// Real matrix lifted into the scalar type of `like`.
    pub fn lift(m: &RMat4, like: &T) -> Mat4<T> {
        Mat4::from_fn(|i, j| like.real_like(m.0[i][j]))
    }

    /// `self · k` for a constant complex matrix `k`.
    pub fn mul_const(&self, k: &CMat4) -> Mat4<T> {
        let a = &self.0;
        Mat4::from_fn(|i, j| {
            let mut s = a[i][0].scale(k.0[0][j]);
            for l in 1..4 {
                s = s + a[i][l].scale(k.0[l][j]);
            }
            s
        })
    }

    /// `k · self` for a constant complex matrix `k`.
    pub fn const_mul(k: &CMat4, m: &Mat4<T>) -> Mat4<T> {
        let b = &m.0;
        Mat4::from_fn(|i, j| {
            let mut s = b[0][j].scale(k.0[i][0]);
            for l in 1..4 {
                s = s + b[l][j].scale(k.0[i][l]);
            }
            s
        })
    }

    pub fn values(&self) -> CMat4 {
        Mat4::from_fn(|i, j| self.0[i][j].value())
    }
}

impl RMat4 {
    pub fn identity() -> RMat4 {
        RMat4::diag([1.0; 4])
    }

    pub fn zeros() -> RMat4 {
        Mat4([[0.0; 4]; 4])
    }

    pub fn diag(d: [f64; 4]) -> RMat4 {
        Mat4::from_fn(|i, j| if i == j { d[i] } else { 0.0 })
    }

    pub fn scaled(&self, s: f64) -> RMat4 {
        Mat4::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn to_complex(&self) -> CMat4 {
        Mat4::from_fn(|i, j| c(self.0[i][j]))
    }

    pub fn to_nalgebra(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.0[i][j])
    }

    pub fn from_nalgebra(m: &Matrix4<f64>) -> RMat4 {
        Mat4::from_fn(|i, j| m[(i, j)])
    }

    pub fn det(&self) -> f64 {
        self.to_nalgebra().determinant()
    }

    pub fn inverse(&self) -> Option<RMat4> {
        self.to_nalgebra().try_inverse().map(|m| RMat4::from_nalgebra(&m))
    }

    /// Matrix exponential (scaling and squaring with a Padé approximant).
    pub fn expm(&self) -> RMat4 {
        RMat4::from_nalgebra(&self.to_nalgebra().exp())
    }
}

impl CMat4 {
    pub fn czero() -> CMat4 {
        Mat4([[c(0.0); 4]; 4])
    }

    pub fn cidentity() -> CMat4 {
        Mat4::from_fn(|i, j| if i == j { c(1.0) } else { c(0.0) })
    }

    pub fn scaled(&self, s: C64) -> CMat4 {
        Mat4::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, o: &CMat4) -> f64 {
        self.sub(o).max_abs()
    }

    pub fn real_part(&self) -> RMat4 {
        Mat4::from_fn(|i, j| self.0[i][j].re)
    }

    pub fn imag_part(&self) -> RMat4 {
        Mat4::from_fn(|i, j| self.0[i][j].im)
    }
}
