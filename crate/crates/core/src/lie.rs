//! The Lie algebra sp(4): real and complexified bases, brackets, the
//! multiplication table of the complexified basis, and the Cartan decomposition.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CMat4, Mat4};
use crate::scalar::{c, C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisTag {
    H1,
    H2,
    F,
    G,
    R,
    Rp,
    P,
    Pp,
    Q,
    Qp,
    Z,
    Zp,
    Nplus,
    Nminus,
    Xplus,
    Xminus,
    P1plus,
    P1minus,
    P0plus,
    P0minus,
}

use BasisTag::*;

pub const REAL_BASIS: [BasisTag; 10] = [H1, H2, F, G, R, Rp, P, Pp, Q, Qp];
pub const COMPLEX_BASIS: [BasisTag; 10] =
    [Z, Zp, Nplus, Nminus, Xplus, Xminus, P1plus, P1minus, P0plus, P0minus];

pub const K_PART: [BasisTag; 4] = [Z, Zp, Nplus, Nminus];
pub const P_PLUS: [BasisTag; 3] = [Xplus, P1plus, P0plus];
pub const P_MINUS: [BasisTag; 3] = [Xminus, P1minus, P0minus];

impl BasisTag {
    pub fn is_real(self) -> bool {
        REAL_BASIS.contains(&self)
    }

    pub fn name(self) -> &'static str {
        match self {
            H1 => "H1",
            H2 => "H2",
            F => "F",
            G => "G",
            R => "R",
            Rp => "R'",
            P => "P",
            Pp => "P'",
            Q => "Q",
            Qp => "Q'",
            Z => "Z",
            Zp => "Z'",
            Nplus => "N+",
            Nminus => "N-",
            Xplus => "X+",
            Xminus => "X-",
            P1plus => "P1+",
            P1minus => "P1-",
            P0plus => "P0+",
            P0minus => "P0-",
        }
    }

    pub fn matrix(self) -> CMat4 {
        basis_matrix(self).mat
    }
}

/// An element of sp(4,ℂ).
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement {
    pub mat: CMat4,
}

impl LieElement {
    pub fn new(mat: CMat4) -> Result<LieElement> {
        let r = algebra_residual(&mat);
        if r > 1e-12 * (1.0 + mat.max_abs()) {
            return Err(Error::NotInAlgebra { residual: r });
        }
        Ok(LieElement { mat })
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        LieElement {
            mat: self.mat.add(&o.mat),
        }
    }

    pub fn scaled(&self, s: C64) -> LieElement {
        LieElement {
            mat: self.mat.scaled(s),
        }
    }
}

/// Deviation from the block conditions `A = −ᵗD`, `B = ᵗB`, `C = ᵗC`.
pub fn algebra_residual(m: &CMat4) -> f64 {
    let a = m.block(0, 0);
    let b = m.block(0, 1);
    let cc = m.block(1, 0);
    let d = m.block(1, 1);
    let mut r: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            r = r.max((a.0[i][j] + d.0[j][i]).norm());
            r = r.max((b.0[i][j] - b.0[j][i]).norm());
            r = r.max((cc.0[i][j] - cc.0[j][i]).norm());
        }
    }
    r
}

fn unit(i: usize, j: usize) -> CMat4 {
    let mut m = CMat4::czero();
    m.0[i - 1][j - 1] = c(1.0);
    m
}

fn from_rows(rows: [[C64; 4]; 4], s: C64) -> CMat4 {
    Mat4(rows).scaled(s)
}

pub fn basis_matrix(tag: BasisTag) -> LieElement {
    let o = c(1.0);
    let z = c(0.0);
    let h = c(0.5);
    let mat = match tag {
        H1 => unit(1, 1).sub(&unit(3, 3)),
        H2 => unit(2, 2).sub(&unit(4, 4)),
        F => unit(1, 3),
        G => unit(3, 1),
        R => unit(2, 4),
        Rp => unit(4, 2),
        P => unit(2, 1).sub(&unit(3, 4)),
        Pp => unit(1, 2).sub(&unit(4, 3)),
        Q => unit(1, 4).add(&unit(2, 3)),
        Qp => unit(3, 2).add(&unit(4, 1)),
        Z => unit(1, 3).sub(&unit(3, 1)).scaled(-I),
        Zp => unit(2, 4).sub(&unit(4, 2)).scaled(-I),
        Nplus => from_rows([[z, o, z, -I], [-o, z, -I, z], [z, I, z, o], [I, z, -o, z]], h),
        Nminus => from_rows([[z, o, z, I], [-o, z, I, z], [z, -I, z, o], [-I, z, -o, z]], h),
        Xplus => from_rows([[o, z, I, z], [z, z, z, z], [I, z, -o, z], [z, z, z, z]], h),
        Xminus => from_rows([[o, z, -I, z], [z, z, z, z], [-I, z, -o, z], [z, z, z, z]], h),
        P1plus => from_rows([[z, o, z, I], [o, z, I, z], [z, I, z, -o], [I, z, -o, z]], h),
        P1minus => from_rows([[z, o, z, -I], [o, z, -I, z], [z, -I, z, -o], [-I, z, -o, z]], h),
        P0plus => from_rows([[z, z, z, z], [z, o, z, I], [z, z, z, z], [z, I, z, -o]], h),
        P0minus => from_rows([[z, z, z, z], [z, o, z, -I], [z, z, z, z], [z, -I, z, -o]], h),
    };
    LieElement { mat }
}

pub fn bracket(x: &CMat4, y: &CMat4) -> CMat4 {
    x.mul(y).sub(&y.mul(x))
}

/// `θ(X) = −ᵗX`.
pub fn cartan_involution(x: &CMat4) -> CMat4 {
    x.transpose().scaled(c(-1.0))
}

type Combo = &'static [(f64, BasisTag)];

/// `[row, column]` for the complexified basis, in the order of [`COMPLEX_BASIS`].
const MULT_TABLE: [[Combo; 10]; 10] = [
    // Z
    [&[], &[], &[(1.0, Nplus)], &[(-1.0, Nminus)], &[(2.0, Xplus)], &[(-2.0, Xminus)],
     &[(1.0, P1plus)], &[(-1.0, P1minus)], &[], &[]],
    // Z'
    [&[], &[], &[(-1.0, Nplus)], &[(1.0, Nminus)], &[], &[],
     &[(1.0, P1plus)], &[(-1.0, P1minus)], &[(2.0, P0plus)], &[(-2.0, P0minus)]],
    // N+
    [&[(-1.0, Nplus)], &[(1.0, Nplus)], &[], &[(1.0, Zp), (-1.0, Z)], &[], &[(-1.0, P1minus)],
     &[(2.0, Xplus)], &[(-2.0, P0minus)], &[(1.0, P1plus)], &[]],
    // N-
    [&[(1.0, Nminus)], &[(-1.0, Nminus)], &[(1.0, Z), (-1.0, Zp)], &[], &[(-1.0, P1plus)], &[],
     &[(-2.0, P0plus)], &[(2.0, Xminus)], &[], &[(1.0, P1minus)]],
    // X+
    [&[(-2.0, Xplus)], &[], &[], &[(1.0, P1plus)], &[], &[(1.0, Z)],
     &[], &[(1.0, Nplus)], &[], &[]],
    // X-
    [&[(2.0, Xminus)], &[], &[(1.0, P1minus)], &[], &[(-1.0, Z)], &[],
     &[(1.0, Nminus)], &[], &[], &[]],
    // P1+
    [&[(-1.0, P1plus)], &[(-1.0, P1plus)], &[(-2.0, Xplus)], &[(2.0, P0plus)], &[], &[(-1.0, Nminus)],
     &[], &[(1.0, Z), (1.0, Zp)], &[], &[(1.0, Nplus)]],
    // P1-
    [&[(1.0, P1minus)], &[(1.0, P1minus)], &[(2.0, P0minus)], &[(-2.0, Xminus)], &[(-1.0, Nplus)], &[],
     &[(-1.0, Z), (-1.0, Zp)], &[], &[(1.0, Nminus)], &[]],
    // P0+
    [&[], &[(-2.0, P0plus)], &[(-1.0, P1plus)], &[], &[], &[],
     &[], &[(-1.0, Nminus)], &[], &[(1.0, Zp)]],
    // P0-
    [&[], &[(2.0, P0minus)], &[], &[(-1.0, P1minus)], &[], &[],
     &[(-1.0, Nplus)], &[], &[(-1.0, Zp)], &[]],
];

/// Tabulated value of `[row, col]` as a matrix.
pub fn table_entry(row: BasisTag, col: BasisTag) -> Option<CMat4> {
    let i = COMPLEX_BASIS.iter().position(|&t| t == row)?;
    let j = COMPLEX_BASIS.iter().position(|&t| t == col)?;
    Some(
        MULT_TABLE[i][j]
            .iter()
            .fold(CMat4::czero(), |acc, &(k, t)| acc.add(&t.matrix().scaled(c(k)))),
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableReport {
    /// Row-major agreement flags for the 100 cells.
    pub cells: Vec<bool>,
    pub passed: usize,
    pub failed: usize,
    pub max_deviation: f64,
}

pub fn verify_mult_table() -> TableReport {
    let mut cells = Vec::with_capacity(100);
    let mut max_deviation: f64 = 0.0;
    for &row in &COMPLEX_BASIS {
        for &col in &COMPLEX_BASIS {
            let got = bracket(&row.matrix(), &col.matrix());
            let want = table_entry(row, col).expect("complex tags");
            let dev = got.max_abs_diff(&want);
            max_deviation = max_deviation.max(dev);
            cells.push(dev < 1e-14);
        }
    }
    let passed = cells.iter().filter(|&&b| b).count();
    TableReport {
        failed: cells.len() - passed,
        passed,
        cells,
        max_deviation,
    }
}

/// Least-squares coordinates of `x` in the given basis; fails with
/// [`Error::NotInAlgebra`] if the residual exceeds `1e−10·(1+|x|)`.
pub fn coordinates(x: &CMat4, basis: &[BasisTag]) -> Result<Vec<C64>> {
    let n = basis.len();
    let mats: Vec<CMat4> = basis.iter().map(|t| t.matrix()).collect();
    // complex system written as a real one of twice the size
    let a = DMatrix::<f64>::from_fn(32, 2 * n, |r, k| {
        let z = mats[k % n].0[(r % 16) / 4][r % 4];
        match (r < 16, k < n) {
            (true, true) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
            (false, false) => z.re,
        }
    });
    let b = DVector::<f64>::from_fn(32, |r, _| {
        let z = x.0[(r % 16) / 4][r % 4];
        if r < 16 {
            z.re
        } else {
            z.im
        }
    });
    let sol = (a.transpose() * &a)
        .lu()
        .solve(&(a.transpose() * &b))
        .ok_or(Error::NotInAlgebra { residual: f64::INFINITY })?;
    let resid = (&a * &sol - &b).amax();
    if resid > 1e-10 * (1.0 + x.max_abs()) {
        return Err(Error::NotInAlgebra { residual: resid });
    }
    Ok((0..n).map(|k| C64::new(sol[k], sol[k + n])).collect())
}

/// Coordinates over the real basis `H₁ … Q′` (complex coefficients allowed).
pub fn real_coordinates(x: &CMat4) -> Result<[C64; 10]> {
    let v = coordinates(x, &REAL_BASIS)?;
    Ok(std::array::from_fn(|i| v[i]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CartanParts {
    pub k: CMat4,
    pub p_plus: CMat4,
    pub p_minus: CMat4,
}

/// Splits `x` along `𝔨_ℂ ⊕ 𝔭₊ ⊕ 𝔭₋`.
pub fn cartan_split(x: &CMat4) -> Result<CartanParts> {
    let v = coordinates(x, &COMPLEX_BASIS)?;
    let part = |tags: &[BasisTag]| {
        tags.iter().fold(CMat4::czero(), |acc, t| {
            let i = COMPLEX_BASIS.iter().position(|s| s == t).expect("complex tag");
            acc.add(&t.matrix().scaled(v[i]))
        })
    };
    Ok(CartanParts {
        k: part(&K_PART),
        p_plus: part(&P_PLUS),
        p_minus: part(&P_MINUS),
    })
}
