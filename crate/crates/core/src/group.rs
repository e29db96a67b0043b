//! GSp(4,ℝ): multiplier, Siegel action, chart elements and coset coordinates.

use nalgebra::{DMatrix, DVector, Matrix2, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::jets::{Jet, JetShape};
use crate::matrix::{CMat2, Mat2, Mat4, RMat4};
use crate::scalar::{c, Scalar, C64, I};

/// The symplectic form `[[0, 1], [−1, 0]]` in 2×2 blocks.
pub fn j_matrix() -> RMat4 {
    let mut m = RMat4::zeros();
    m.0[0][2] = 1.0;
    m.0[1][3] = 1.0;
    m.0[2][0] = -1.0;
    m.0[3][1] = -1.0;
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    NonSplit,
    Split,
}

/// Coordinates `(λ, ζ, φ₁, φ₂)` on the double-coset chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub flavor: Flavor,
    pub lambda: f64,
    pub zeta: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl ChartPoint {
    pub fn nonsplit(lambda: f64, zeta: f64, phi1: f64, phi2: f64) -> ChartPoint {
        ChartPoint {
            flavor: Flavor::NonSplit,
            lambda,
            zeta,
            phi1,
            phi2,
        }
    }

    pub fn split(lambda: f64, zeta: f64, phi1: f64, phi2: f64) -> ChartPoint {
        ChartPoint {
            flavor: Flavor::Split,
            lambda,
            zeta,
            phi1,
            phi2,
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.lambda, self.zeta, self.phi1, self.phi2]
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda == 0.0 || !self.lambda.is_finite() {
            return Err(Error::ChartSingularity { what: "lambda = 0" });
        }
        if self.flavor == Flavor::NonSplit && self.zeta <= 0.0 {
            return Err(Error::ChartSingularity { what: "non-split chart needs zeta > 0" });
        }
        Ok(())
    }
}

/// A point of the Siegel upper half space of degree two.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    pub z: CMat2,
}

impl SiegelPoint {
    pub fn new(z: CMat2) -> Result<SiegelPoint> {
        let sym = (z.0[0][1] - z.0[1][0]).norm();
        let y = Matrix2::new(z.0[0][0].im, z.0[0][1].im, z.0[1][0].im, z.0[1][1].im);
        let pos = y[(0, 0)] > 0.0 && y.determinant() > 0.0;
        if sym > 1e-12 * (1.0 + z.0[0][1].norm()) || !pos {
            return Err(Error::ParameterRegionUnsupported {
                what: "Siegel point must be symmetric with positive definite imaginary part".into(),
            });
        }
        Ok(SiegelPoint { z })
    }

    /// The base point `diag(i, i)`.
    pub fn i() -> SiegelPoint {
        SiegelPoint {
            z: CMat2::diag(I, I),
        }
    }
}

/// A real similitude with its cached multiplier.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub mat: RMat4,
    pub mu2: f64,
}

impl GroupElement {
    pub fn new(mat: RMat4) -> Result<GroupElement> {
        let mu2 = multiplier(&mat)?;
        Ok(GroupElement { mat, mu2 })
    }

    pub fn identity() -> GroupElement {
        GroupElement {
            mat: RMat4::identity(),
            mu2: 1.0,
        }
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement {
            mat: self.mat.mul(&o.mat),
            mu2: self.mu2 * o.mu2,
        }
    }
}

/// `(ᵗgJg)₁₃`, the multiplier of a similitude, as a ring expression.
pub fn multiplier_entry<T: Scalar>(g: &Mat4<T>) -> T {
    let m = &g.0;
    m[0][0].times(&m[2][2]) + m[1][0].times(&m[3][2])
        - m[2][0].times(&m[0][2])
        - m[3][0].times(&m[1][2])
}

/// Multiplier `μ₂(g)` with `ᵗgJg = μ₂J`.
pub fn multiplier(g: &RMat4) -> Result<f64> {
    multiplier_with(g, &Tolerances::default())
}

pub fn multiplier_with(g: &RMat4, tol: &Tolerances) -> Result<f64> {
    let mu = multiplier_entry(&g.to_complex()).re;
    let j = j_matrix();
    let resid = g.transpose().mul(&j).mul(g).sub(&j.scaled(mu)).frobenius();
    let scale = g.frobenius().powi(2);
    if !(resid <= tol.similitude * scale) || mu == 0.0 {
        return Err(Error::NotSimilitude { residual: resid });
    }
    Ok(mu)
}

/// `CZ + D`.
pub fn j_factor_t<T: Scalar>(g: &Mat4<T>, z: &CMat2) -> Mat2<T> {
    g.block(1, 0).mul_const(z).add(&g.block(1, 1))
}

pub fn j_factor(g: &RMat4, z: &SiegelPoint) -> CMat2 {
    j_factor_t(&g.to_complex(), &z.z)
}

/// `(AZ + B)(CZ + D)⁻¹`.
pub fn siegel_action_t<T: Scalar>(g: &Mat4<T>, z: &CMat2) -> Result<Mat2<T>> {
    let num = g.block(0, 0).mul_const(z).add(&g.block(0, 1));
    let den = j_factor_t(g, z);
    Ok(num.mul(&den.inverse()?))
}

pub fn siegel_action(g: &GroupElement, z: &SiegelPoint) -> Result<SiegelPoint> {
    if g.mu2 <= 0.0 {
        return Err(Error::WrongComponent { mu2: g.mu2 });
    }
    let gc = g.mat.to_complex();
    let den = j_factor_t(&gc, &z.z);
    let d = den.det();
    if d.norm() <= Tolerances::default().automorphy_det {
        return Err(Error::SingularAutomorphyFactor { det_abs: d.norm() });
    }
    let w = siegel_action_t(&gc, &z.z)?;
    Ok(SiegelPoint { z: w })
}

/// `tr h⟨Z⟩` times `det J(h, Z)`, free of denominators.
fn trace_numerator<T: Scalar>(g: &Mat4<T>, z: &CMat2) -> (T, T) {
    let num = g.block(0, 0).mul_const(z).add(&g.block(0, 1));
    let den = j_factor_t(g, z);
    (num.mul(&den.adj()).trace(), den.det())
}

/// `i·detJ(h,I)·detJ(h,Z′)·(tr h⟨Z′⟩ − tr h⟨I⟩)` with `Z′ = diag(−i, i)`.
pub fn w_poly_t<T: Scalar>(g: &Mat4<T>) -> T {
    let (tr_i, det_i) = trace_numerator(g, &CMat2::diag(I, I));
    let (tr_p, det_p) = trace_numerator(g, &CMat2::diag(-I, I));
    (det_i.times(&tr_p) - det_p.times(&tr_i)).scale(I)
}

pub fn w_poly(g: &RMat4) -> C64 {
    w_poly_t(&g.to_complex())
}

/// `tr h⟨I⟩` as a ring expression.
pub fn trace_at_i_t<T: Scalar>(g: &Mat4<T>) -> Result<T> {
    let (tr, det) = trace_numerator(g, &CMat2::diag(I, I));
    tr.div(&det)
}

/// `(μ₂(g)⁻² + Σ g_ij²)^{1/2}`.
pub fn group_norm(g: &RMat4) -> Result<f64> {
    let mu = multiplier(g)?;
    Ok(group_norm_with_mu(g, mu))
}

pub fn group_norm_with_mu(g: &RMat4, mu: f64) -> f64 {
    (mu.powi(-2) + g.0.iter().flatten().map(|x| x * x).sum::<f64>()).sqrt()
}

fn lift<T: Scalar>(like: &T, x: f64) -> T {
    like.real_like(x)
}

/// `r_i(φ)` for `i = 1..=4`.
pub fn rotation_t<T: Scalar>(i: usize, phi: &T) -> Mat4<T> {
    let cs = phi.cos();
    let sn = phi.sin();
    let z = lift(phi, 0.0);
    let o = lift(phi, 1.0);
    let ns = -sn.clone();
    let (c_, s_) = (cs.clone(), sn.clone());
    match i {
        1 => Mat4([
            [c_.clone(), s_.clone(), z.clone(), z.clone()],
            [ns.clone(), c_.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), c_.clone(), s_],
            [z.clone(), z, ns, c_],
        ]),
        2 => Mat4([
            [c_.clone(), z.clone(), z.clone(), s_.clone()],
            [z.clone(), c_.clone(), s_, z.clone()],
            [z.clone(), ns.clone(), c_.clone(), z.clone()],
            [ns, z.clone(), z, c_],
        ]),
        3 => Mat4([
            [c_.clone(), z.clone(), s_, z.clone()],
            [z.clone(), o.clone(), z.clone(), z.clone()],
            [ns, z.clone(), c_, z.clone()],
            [z.clone(), z.clone(), z, o],
        ]),
        4 => Mat4([
            [o.clone(), z.clone(), z.clone(), z.clone()],
            [z.clone(), c_.clone(), z.clone(), s_],
            [z.clone(), z.clone(), o, z.clone()],
            [z.clone(), ns, z, c_],
        ]),
        _ => panic!("rotation index must be 1..=4, got {i}"),
    }
}

pub fn rotation(i: usize, phi: f64) -> GroupElement {
    GroupElement {
        mat: rotation_t(i, &c(phi)).real_part(),
        mu2: 1.0,
    }
}

fn diag_t<T: Scalar>(d: [T; 4]) -> Mat4<T> {
    let z = d[0].zero_like();
    Mat4::from_fn(|i, j| if i == j { d[i].clone() } else { z.clone() })
}

/// Non-split torus element `diag(G, G)` with `G = γ·[[cos δ, sin δ], [−sin δ, cos δ]]`.
pub fn nonsplit_torus_t<T: Scalar>(gamma: &T, delta: &T) -> Mat4<T> {
    let r = rotation_t(1, delta);
    Mat4::from_fn(|i, j| r.0[i][j].times(gamma))
}

/// Split torus element `diag(T, det(T)·ᵗT⁻¹)` with `T = t₀·diag(a, b)·t₀⁻¹`.
pub fn split_torus_t<T: Scalar>(a: &T, b: &T) -> Mat4<T> {
    let p = a.plus(b).scale(c(0.5));
    let q = a.minus(b).scale(c(0.5));
    let z = a.zero_like();
    let nq = -q.clone();
    Mat4([
        [p.clone(), q.clone(), z.clone(), z.clone()],
        [q.clone(), p.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), p.clone(), nq.clone()],
        [z.clone(), z, nq, p],
    ])
}

/// Unipotent element `[[1, X], [0, 1]]` with `X = [[x, y], [y, z]]`.
pub fn unipotent_t<T: Scalar>(x: &T, y: &T, z: &T) -> Mat4<T> {
    let o = x.one_like();
    let n = x.zero_like();
    Mat4([
        [o.clone(), n.clone(), x.clone(), y.clone()],
        [n.clone(), o.clone(), y.clone(), z.clone()],
        [n.clone(), n.clone(), o.clone(), n.clone()],
        [n.clone(), n.clone(), n, o],
    ])
}

/// Non-split representative `diag(λζ, λζ⁻¹, ζ⁻¹, ζ)·r₁(φ₁)·r₂(φ₂)`.
pub fn nonsplit_h_t<T: Scalar>(x: &[T; 4]) -> Result<Mat4<T>> {
    let [lam, zeta, p1, p2] = x;
    let zi = zeta.recip()?;
    let d = diag_t([lam.times(zeta), lam.times(&zi), zi, zeta.clone()]);
    Ok(d.mul(&rotation_t(1, p1)).mul(&rotation_t(2, p2)))
}

/// Split representative `blockdiag(λ·t₀·n(ζ), −t₀·n̄(ζ))·r₁(φ₁)·r₂(φ₂)`.
pub fn split_h_t<T: Scalar>(x: &[T; 4]) -> Mat4<T> {
    let [lam, zeta, p1, p2] = x;
    let o = lam.one_like();
    let z = lam.zero_like();
    let up = [
        [lam.clone(), lam.times(&zeta.add_const(c(1.0)))],
        [lam.clone(), lam.times(&zeta.add_const(c(-1.0)))],
    ];
    let lo = [
        [zeta.add_const(c(-1.0)), -o.clone()],
        [-(zeta.add_const(c(1.0))), o],
    ];
    let d = Mat4::from_blocks(
        &Mat2(up),
        &Mat2([[z.clone(), z.clone()], [z.clone(), z.clone()]]),
        &Mat2([[z.clone(), z.clone()], [z.clone(), z]]),
        &Mat2(lo),
    );
    d.mul(&rotation_t(1, p1)).mul(&rotation_t(2, p2))
}

pub fn chart_element_t<T: Scalar>(flavor: Flavor, x: &[T; 4]) -> Result<Mat4<T>> {
    match flavor {
        Flavor::NonSplit => nonsplit_h_t(x),
        Flavor::Split => Ok(split_h_t(x)),
    }
}

pub fn chart_element(p: &ChartPoint) -> Result<GroupElement> {
    p.validate()?;
    let x = p.coords().map(c);
    let m = chart_element_t(p.flavor, &x)?.real_part();
    let mu2 = match p.flavor {
        Flavor::NonSplit => p.lambda,
        Flavor::Split => -2.0 * p.lambda,
    };
    Ok(GroupElement { mat: m, mu2 })
}

/// Eleven coset parameters of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CosetCoords {
    pub flavor: Flavor,
    /// `(γ, δ)` for the non-split torus, `(a, b)` for the split torus.
    pub torus: [f64; 2],
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub chart: ChartPoint,
    pub phi3: f64,
    pub phi4: f64,
}

impl CosetCoords {
    pub fn identity(flavor: Flavor, chart: ChartPoint) -> CosetCoords {
        let torus = match flavor {
            Flavor::NonSplit => [1.0, 0.0],
            Flavor::Split => [1.0, 1.0],
        };
        CosetCoords {
            flavor,
            torus,
            x: 0.0,
            y: 0.0,
            z: 0.0,
            chart: ChartPoint { flavor, ..chart },
            phi3: 0.0,
            phi4: 0.0,
        }
    }

    /// Flat parameter vector `[t₁, t₂, x, y, z, λ, ζ, φ₁, φ₂, φ₃, φ₄]`.
    pub fn to_vec(&self) -> [f64; 11] {
        let p = &self.chart;
        [
            self.torus[0],
            self.torus[1],
            self.x,
            self.y,
            self.z,
            p.lambda,
            p.zeta,
            p.phi1,
            p.phi2,
            self.phi3,
            self.phi4,
        ]
    }

    pub fn from_vec(flavor: Flavor, v: &[f64; 11]) -> CosetCoords {
        CosetCoords {
            flavor,
            torus: [v[0], v[1]],
            x: v[2],
            y: v[3],
            z: v[4],
            chart: ChartPoint {
                flavor,
                lambda: v[5],
                zeta: v[6],
                phi1: v[7],
                phi2: v[8],
            },
            phi3: v[9],
            phi4: v[10],
        }
    }

    pub fn reassemble(&self) -> Result<RMat4> {
        let v = self.to_vec().map(c);
        Ok(reassemble_t(self.flavor, &v)?.real_part())
    }
}

/// Rebuilds `t·u·h·r₃·r₄` (non-split) or `u·t·ĥ·r₃·r₄` (split) from parameters.
pub fn reassemble_t<T: Scalar>(flavor: Flavor, v: &[T; 11]) -> Result<Mat4<T>> {
    let u = unipotent_t(&v[2], &v[3], &v[4]);
    let chart = [v[5].clone(), v[6].clone(), v[7].clone(), v[8].clone()];
    let h = chart_element_t(flavor, &chart)?;
    let k = rotation_t(3, &v[9]).mul(&rotation_t(4, &v[10]));
    let head = match flavor {
        Flavor::NonSplit => nonsplit_torus_t(&v[0], &v[1]).mul(&u),
        Flavor::Split => u.mul(&split_torus_t(&v[0], &v[1])),
    };
    Ok(head.mul(&h).mul(&k))
}

/// Coset coordinates of `g`, seeded from closed-form invariants.
pub fn coset_decompose(g: &GroupElement, flavor: Flavor) -> Result<CosetCoords> {
    let seed = match flavor {
        Flavor::NonSplit => nonsplit_seed(g)?,
        Flavor::Split => {
            if g.mu2 == 0.0 {
                return Err(Error::WrongComponent { mu2: g.mu2 });
            }
            CosetCoords::identity(Flavor::Split, ChartPoint::split(-g.mu2 / 2.0, 0.0, 0.0, 0.0))
        }
    };
    coset_decompose_from(g, flavor, &seed)
}

/// Coset coordinates of `g` starting Newton from `initial`.
pub fn coset_decompose_from(
    g: &GroupElement,
    flavor: Flavor,
    initial: &CosetCoords,
) -> Result<CosetCoords> {
    if flavor == Flavor::NonSplit && g.mu2 <= 0.0 {
        return Err(Error::WrongComponent { mu2: g.mu2 });
    }
    let tol = Tolerances::default();
    let target = g.mat;
    let scale = target.frobenius();
    let shape = JetShape::total(11, 1);

    let residual = |v: &[f64; 11]| -> Result<(DVector<f64>, f64)> {
        let m = reassemble_t(flavor, &v.map(c))?.real_part();
        let r = DVector::from_iterator(16, (0..16).map(|k| m.0[k / 4][k % 4] - target.0[k / 4][k % 4]));
        let n = r.norm();
        Ok((r, n))
    };

    let mut v = initial.to_vec();
    let (mut r, mut rn) = residual(&v)?;
    for _ in 0..tol.newton_max_iter {
        if rn <= tol.newton_residual * scale {
            break;
        }
        let vars: [Jet; 11] = std::array::from_fn(|k| Jet::variable(&shape, k, c(v[k])));
        let m = reassemble_t(flavor, &vars)?;
        let mut jac = DMatrix::<f64>::zeros(16, 11);
        let mut e = [0usize; 11];
        for k in 0..11 {
            e[k] = 1;
            for row in 0..16 {
                jac[(row, k)] = m.0[row / 4][row % 4].coeff(&e).re;
            }
            e[k] = 0;
        }
        let svd = jac.svd(true, true);
        let cutoff = 1e-12 * svd.singular_values.max();
        let step = svd
            .solve(&r, cutoff)
            .map_err(|_| Error::NoConvergence { iterations: 0, residual: rn })?;

        let mut damping = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let mut trial = v;
            for k in 0..11 {
                trial[k] -= damping * step[k];
            }
            if flavor == Flavor::NonSplit && trial[6] <= 0.0 {
                damping *= 0.5;
                continue;
            }
            let (rt, rtn) = residual(&trial)?;
            if rtn < rn {
                v = trial;
                r = rt;
                rn = rtn;
                accepted = true;
                break;
            }
            damping *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if rn > 1e-10 * scale {
        return Err(Error::NoConvergence {
            iterations: tol.newton_max_iter,
            residual: rn / scale,
        });
    }
    Ok(CosetCoords::from_vec(flavor, &v))
}

/// Direct reconstruction of the non-split coordinates from `g⟨I⟩` and `J(g, I)`.
fn nonsplit_seed(g: &GroupElement) -> Result<CosetCoords> {
    if g.mu2 <= 0.0 {
        return Err(Error::WrongComponent { mu2: g.mu2 });
    }
    let gc = g.mat.to_complex();
    let jdet = j_factor_t(&gc, &CMat2::diag(I, I)).det();
    let gamma = jdet.norm().sqrt();
    let lam = g.mu2 / (gamma * gamma);
    let w = siegel_action_t(&gc, &CMat2::diag(I, I))?;
    let y = Matrix2::new(w.0[0][0].im, w.0[0][1].im, w.0[1][0].im, w.0[1][1].im);
    let eig = SymmetricEigen::new(y);
    let (imax, imin) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let (emax, emin) = (eig.eigenvalues[imax], eig.eigenvalues[imin]);
    let zeta = (emax / emin).sqrt().sqrt();
    let vcol = eig.eigenvectors.column(imax);
    // R(δ)·e₁ = (cos δ, −sin δ) spans the top eigenvector
    let delta = (-vcol[1]).atan2(vcol[0]);
    let (sd, cd) = delta.sin_cos();
    let rot = Matrix2::new(cd, sd, -sd, cd);
    let xr = Matrix2::new(w.0[0][0].re, w.0[0][1].re, w.0[1][0].re, w.0[1][1].re);
    let xm = rot.transpose() * xr * rot;

    let partial = CosetCoords {
        flavor: Flavor::NonSplit,
        torus: [gamma, delta],
        x: xm[(0, 0)],
        y: 0.5 * (xm[(0, 1)] + xm[(1, 0)]),
        z: xm[(1, 1)],
        chart: ChartPoint::nonsplit(lam, zeta, 0.0, 0.0),
        phi3: 0.0,
        phi4: 0.0,
    };
    let head = partial.reassemble()?;
    let k = head
        .inverse()
        .ok_or(Error::NoConvergence { iterations: 0, residual: f64::INFINITY })?
        .mul(&g.mat);
    let [p1, p2, p3, p4] = decode_compact(&k);
    Ok(CosetCoords {
        chart: ChartPoint::nonsplit(lam, zeta, p1, p2),
        phi3: p3,
        phi4: p4,
        ..partial
    })
}

/// Angles with `k ≈ r₁(φ₁)r₂(φ₂)r₃(φ₃)r₄(φ₄)`, using `k ↦ A + iB ∈ U(2)`.
fn decode_compact(k: &RMat4) -> [f64; 4] {
    let u = Mat2::from_fn(|i, j| C64::new(k.0[i][j], k.0[i][j + 2]));
    let (u11, u21) = (u.0[0][0], u.0[1][0]);
    let phi1 = 0.5 * (-2.0 * (u11 * u21.conj()).re).atan2(u11.norm_sqr() - u21.norm_sqr());
    let (s1, c1) = phi1.sin_cos();
    let rt = Mat2([[c(c1), c(-s1)], [c(s1), c(c1)]]);
    let v = rt.mul(&u);
    let mut phi2 = v.0[1][0].norm().atan2(v.0[0][0].norm());
    if (v.0[0][0] * v.0[1][0].conj()).im > 0.0 {
        phi2 = -phi2;
    }
    let c2 = phi2.cos();
    let (phi3, phi4) = if c2 > 1e-8 {
        (v.0[0][0].arg(), v.0[1][1].arg())
    } else {
        ((v.0[1][0] / I).arg(), (v.0[0][1] / I).arg())
    };
    [phi1, phi2, phi3, phi4]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(multiplier(&RMat4::identity()).unwrap(), 1.0);
        let h = chart_element(&ChartPoint::nonsplit(2.0, 1.5, 0.0, 0.0)).unwrap();
        assert!(close(multiplier(&h.mat).unwrap(), 2.0, 1e-15));
        assert!(close(multiplier(&RMat4::diag([1.7; 4])).unwrap(), 1.7 * 1.7, 1e-15));
    }

    #[test]
    fn multiplier_rejects_non_similitude() {
        let m = RMat4::diag([1.0, 2.0, 1.0, 1.0]);
        assert!(matches!(multiplier(&m), Err(Error::NotSimilitude { .. })));
    }

    #[test]
    fn split_multiplier_is_minus_two_lambda() {
        let h = chart_element(&ChartPoint::split(0.7, 0.4, 0.3, -0.2)).unwrap();
        assert!(close(multiplier(&h.mat).unwrap(), -1.4, 1e-14));
    }

    #[test]
    fn siegel_action_examples() {
        let i = SiegelPoint::i();
        let id = siegel_action(&GroupElement::identity(), &i).unwrap();
        assert!(id.z.max_abs_diff(&i.z) < 1e-15);
        for phi in [0.3, -1.1, 2.0] {
            let w = siegel_action(&rotation(1, phi), &i).unwrap();
            assert!(w.z.max_abs_diff(&i.z) < 1e-14);
        }
        let z = 1.3;
        let h = chart_element(&ChartPoint::nonsplit(1.0, z, 0.0, 0.0)).unwrap();
        let w = siegel_action(&h, &i).unwrap();
        assert!(w.z.max_abs_diff(&CMat2::diag(I * z * z, I / (z * z))) < 1e-14);
    }

    #[test]
    fn j_factor_examples() {
        let i = SiegelPoint::i();
        assert!(j_factor(&RMat4::identity(), &i).max_abs_diff(&CMat2::identity()) < 1e-15);
        let h = chart_element(&ChartPoint::nonsplit(2.0, 1.4, 0.0, 0.0)).unwrap();
        let j = j_factor(&h.mat, &i);
        assert!(j.max_abs_diff(&CMat2::diag(c(1.0 / 1.4), c(1.4))) < 1e-15);
    }

    #[test]
    fn w_poly_examples() {
        assert!((w_poly(&RMat4::identity()) - c(2.0)).norm() < 1e-15);
        let (l, z) = (1.7, 1.3);
        let h = chart_element(&ChartPoint::nonsplit(l, z, 0.0, 0.0)).unwrap();
        assert!((w_poly(&h.mat) - c(2.0 * l * z * z)).norm() < 1e-13);
    }

    #[test]
    fn norm_examples() {
        assert!(close(group_norm(&RMat4::identity()).unwrap(), 5f64.sqrt(), 1e-15));
        let (l, z) = (1.5, 2.0);
        let h = chart_element(&ChartPoint::nonsplit(l, z, 0.0, 0.0)).unwrap();
        let want = (l.powi(-2) + (l * z).powi(2) + (l / z).powi(2) + z.powi(-2) + z * z).sqrt();
        assert!(close(group_norm(&h.mat).unwrap(), want, 1e-14));
    }

    #[test]
    fn chart_element_at_zero_angles_is_diagonal() {
        let h = chart_element(&ChartPoint::nonsplit(2.0, 3.0, 0.0, 0.0)).unwrap();
        assert_eq!(h.mat, RMat4::diag([6.0, 2.0 / 3.0, 1.0 / 3.0, 3.0]));
        assert_eq!(rotation(3, 0.0).mat, RMat4::identity());
    }

    #[test]
    fn decompose_chart_element() {
        let p = ChartPoint::nonsplit(2.0, 1.5, 0.1, 0.2);
        let g = chart_element(&p).unwrap();
        let cc = coset_decompose(&g, Flavor::NonSplit).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0, 0.0, 2.0, 1.5, 0.1, 0.2, 0.0, 0.0];
        for (a, b) in cc.to_vec().iter().zip(want) {
            assert!((a - b).abs() < 1e-9, "{:?}", cc.to_vec());
        }
    }

    #[test]
    fn decompose_full_product() {
        let want = [1.1, 0.3, 0.2, -0.1, 0.4, 1.2, 1.3, 0.05, -0.07, 0.02, -0.03];
        let g = GroupElement::new(CosetCoords::from_vec(Flavor::NonSplit, &want).reassemble().unwrap())
            .unwrap();
        let cc = coset_decompose(&g, Flavor::NonSplit).unwrap();
        for (a, b) in cc.to_vec().iter().zip(want) {
            assert!((a - b).abs() < 1e-9, "{:?}", cc.to_vec());
        }
    }

    #[test]
    fn split_decomposition_round_trip() {
        let want = [1.2, 0.8, 0.1, -0.2, 0.3, 0.9, 0.4, 0.1, -0.15, 0.05, 0.07];
        let g = GroupElement::new(CosetCoords::from_vec(Flavor::Split, &want).reassemble().unwrap())
            .unwrap();
        let mut guess = want;
        for (k, x) in guess.iter_mut().enumerate() {
            *x += 0.01 * ((k % 3) as f64 - 1.0);
        }
        let cc = coset_decompose_from(&g, Flavor::Split, &CosetCoords::from_vec(Flavor::Split, &guess))
            .unwrap();
        for (a, b) in cc.to_vec().iter().zip(want) {
            assert!((a - b).abs() < 1e-9, "{:?}", cc.to_vec());
        }
    }

    #[test]
    fn wrong_component_is_rejected() {
        let g = GroupElement::new(RMat4::diag([1.0, 1.0, -1.0, -1.0])).unwrap();
        assert!(matches!(
            coset_decompose(&g, Flavor::NonSplit),
            Err(Error::WrongComponent { .. })
        ));
    }
}
