//! Randomised invariants of the group layer, the derivative engines and the
//! non-split Bessel function.

use std::f64::consts::PI;

use gsp4_core::group::{
    chart_element, coset_decompose, group_norm, j_factor, multiplier, nonsplit_torus_t, rotation,
    siegel_action, unipotent_t, w_poly, ChartPoint, CosetCoords, Flavor, GroupElement, SiegelPoint,
};
use gsp4_core::jets::{chart_jet, lie_derivative, GroupFunction, JetShape};
use gsp4_core::lie::{BasisTag, COMPLEX_BASIS, REAL_BASIS};
use gsp4_core::matrix::{CMat2, Mat4, RMat4};
use gsp4_core::nonsplit::{
    word_value, B0Coords, B0Global, BesselParams, ChangeOfModel, ChartOperator, LadderWord,
    ThetaChar, Twist,
};
use gsp4_core::scalar::{c, Scalar, C64};
use gsp4_core::Result;
use proptest::prelude::*;

fn coset_vec() -> impl Strategy<Value = [f64; 11]> {
    (
        (0.5f64..2.0, -0.5f64..0.5, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
        (0.3f64..3.0, 1.05f64..3.0, -0.6f64..0.6, -0.6f64..0.6, -0.6f64..0.6, -0.6f64..0.6),
    )
        .prop_map(|((g, d, x, y, z), (lam, zeta, p1, p2, p3, p4))| {
            [g, d, x, y, z, lam, zeta, p1, p2, p3, p4]
        })
}

fn element() -> impl Strategy<Value = GroupElement> {
    coset_vec().prop_map(|v| {
        GroupElement::new(CosetCoords::from_vec(Flavor::NonSplit, &v).reassemble().unwrap()).unwrap()
    })
}

fn chart_point() -> impl Strategy<Value = ChartPoint> {
    (0.3f64..1.8, 0.6f64..1.8, -1.0f64..1.0, -0.6f64..0.6)
        .prop_map(|(l, z, a, b)| ChartPoint::nonsplit(l, z, a, b))
}

fn params() -> impl Strategy<Value = BesselParams> {
    (
        prop::sample::select(vec![(5, 1, 0), (6, 2, 2), (6, 2, -2), (7, 3, -2), (8, 4, 0), (8, 3, 3)]),
        -0.8f64..0.8,
        -1.5f64..1.5,
    )
        .prop_map(|((l, lp, m), re, im)| BesselParams::new(l, lp, m, C64::new(re, im)).unwrap())
}

fn close(a: C64, b: C64, rel: f64) -> bool {
    (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
}

fn close_rel(a: C64, b: C64, rel: f64, scale: f64) -> bool {
    (a - b).norm() <= rel * scale
}

fn minus_mu_element() -> GroupElement {
    GroupElement::new(RMat4::diag([1.0, 1.0, -1.0, -1.0])).unwrap()
}

/// Pointwise product of two group functions.
struct Prod<A, B>(A, B);

impl<A: GroupFunction, B: GroupFunction> GroupFunction for Prod<A, B> {
    fn eval<T: Scalar>(&self, g: &Mat4<T>) -> Result<T> {
        Ok(self.0.eval(g)?.times(&self.1.eval(g)?))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplier_is_a_character(g in element(), h in element(), flip in any::<bool>()) {
        let g = if flip { g.mul(&minus_mu_element()) } else { g };
        let gh = multiplier(&g.mat.mul(&h.mat)).unwrap();
        let prod = multiplier(&g.mat).unwrap() * multiplier(&h.mat).unwrap();
        prop_assert!((gh - prod).abs() <= 1e-10 * prod.abs());
    }

    #[test]
    fn siegel_action_and_cocycle(g in element(), h in element(), z0 in element()) {
        let z = siegel_action(&z0, &SiegelPoint::i()).unwrap();
        let hz = siegel_action(&h, &z).unwrap();
        let lhs = siegel_action(&g, &hz).unwrap();
        let gh = g.mul(&h);
        let rhs = siegel_action(&gh, &z).unwrap();
        let scale = 1.0 + rhs.z.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assert!(lhs.z.max_abs_diff(&rhs.z) <= 1e-9 * scale);

        let jgh = j_factor(&gh.mat, &z);
        let jprod = j_factor(&g.mat, &hz).mul(&j_factor(&h.mat, &z));
        let scale = 1.0 + jgh.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assert!(jgh.max_abs_diff(&jprod) <= 1e-9 * scale);
    }

    #[test]
    fn w_is_homogeneous_of_degree_four(g in element(), k in 0.2f64..5.0) {
        let a = w_poly(&g.mat.scaled(k));
        let b = w_poly(&g.mat) * k.powi(4);
        prop_assert!(close(a, b, 1e-10), "{a} vs {b}");
    }

    #[test]
    fn chart_jets_of_different_orders_agree(prm in params(), p in chart_point()) {
        let hi = chart_jet(&B0Coords(prm), &p, 5).unwrap();
        let lo = chart_jet(&B0Coords(prm), &p, 2).unwrap();
        let cut = hi.restrict(&JetShape::chart(2));
        for (a, b) in cut.coeffs().iter().zip(lo.coeffs()) {
            prop_assert!(close(*a, *b, 1e-11), "{a} vs {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coset_round_trip(v in coset_vec()) {
        let m = CosetCoords::from_vec(Flavor::NonSplit, &v).reassemble().unwrap();
        let g = GroupElement::new(m.clone()).unwrap();
        let cc = coset_decompose(&g, Flavor::NonSplit).unwrap();
        let back = cc.reassemble().unwrap();
        prop_assert!(back.sub(&m).frobenius() <= 1e-9 * m.frobenius());
        for (a, b) in cc.to_vec().iter().zip(v) {
            prop_assert!((a - b).abs() < 1e-8, "{:?} vs {:?}", cc.to_vec(), v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lie_derivative_obeys_leibniz(
        p1 in params(),
        p2 in params(),
        g in element(),
        i in 0usize..10,
        j in 0usize..10,
    ) {
        let (f, h) = (B0Global(p1), B0Global(p2));
        let (x, y) = (COMPLEX_BASIS[i].matrix(), COMPLEX_BASIS[j].matrix());
        let fg = Prod(f, h);
        let d = |w: &[gsp4_core::matrix::CMat4], a: &B0Global| lie_derivative(a, &g.mat, w).unwrap();
        let lhs1 = lie_derivative(&fg, &g.mat, &[x.clone()]).unwrap();
        let rhs1 = d(&[x.clone()], &f) * d(&[], &h) + d(&[], &f) * d(&[x.clone()], &h);
        let scale = d(&[], &f).norm() * d(&[], &h).norm() + 1e-300;
        prop_assert!(close_rel(lhs1, rhs1, 1e-8, scale * 1e3), "{lhs1} vs {rhs1}");

        let xy = [x.clone(), y.clone()];
        let lhs2 = lie_derivative(&fg, &g.mat, &xy).unwrap();
        let rhs2 = d(&xy, &f) * d(&[], &h)
            + d(&[x.clone()], &f) * d(&[y.clone()], &h)
            + d(&[y.clone()], &f) * d(&[x.clone()], &h)
            + d(&[], &f) * d(&xy, &h);
        prop_assert!(close_rel(lhs2, rhs2, 1e-8, scale * 1e6), "{lhs2} vs {rhs2}");
    }

    #[test]
    fn mixed_lie_derivatives_match_finite_differences(
        prm in params(),
        p in chart_point(),
        i in 0usize..10,
        j in 0usize..10,
    ) {
        let f = B0Global(prm);
        let g = chart_element(&p).unwrap().mat;
        let (xc, yc) = (REAL_BASIS[i].matrix(), REAL_BASIS[j].matrix());
        let (x, y) = (xc.real_part(), yc.real_part());
        let exact = lie_derivative(&f, &g, &[xc, yc]).unwrap();
        let at = |s: f64, t: f64| {
            let m = g.mul(&x.scaled(s).expm()).mul(&y.scaled(t).expm());
            f.eval_at(&m).unwrap()
        };
        let stencil = |h: f64| (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
        // one Richardson step on the central stencil
        let fd = (stencil(1e-3) * 4.0 - stencil(2e-3)) / 3.0;
        let scale = f.eval_at(&g).unwrap().norm().max(exact.norm());
        prop_assert!(close_rel(exact, fd, 1e-5, scale), "{:?}{:?}: {exact} vs {fd}", REAL_BASIS[i], REAL_BASIS[j]);
    }

    #[test]
    fn b0_has_the_minimal_weight_and_is_annihilated(prm in params(), g in element()) {
        let f = B0Global(prm);
        let v = f.eval_at(&g.mat).unwrap();
        let scale = v.norm();
        let z = lie_derivative(&f, &g.mat, &[BasisTag::Z.matrix()]).unwrap();
        let zp = lie_derivative(&f, &g.mat, &[BasisTag::Zp.matrix()]).unwrap();
        prop_assert!(close_rel(z, v * prm.l as f64, 1e-9, scale * 10.0), "Z: {z} vs {}", v * prm.l as f64);
        prop_assert!(close_rel(zp, v * prm.lp as f64, 1e-9, scale * 10.0), "Z': {zp}");
        for tag in [BasisTag::Nplus, BasisTag::Xminus, BasisTag::P1minus, BasisTag::P0minus] {
            let d = lie_derivative(&f, &g.mat, &[tag.matrix()]).unwrap();
            prop_assert!(d.norm() <= 1e-9 * scale * 10.0, "{tag:?}: {d} against {v}");
        }
    }

    #[test]
    fn b0_transforms_under_k_rotations(prm in params(), g in element(), a in -PI..PI, b in -PI..PI) {
        let f = B0Global(prm);
        let v = f.eval_at(&g.mat).unwrap();
        let gk = g.mul(&rotation(3, a)).mul(&rotation(4, b));
        let lhs = f.eval_at(&gk.mat).unwrap();
        let phase = (C64::i() * (prm.l as f64 * a + prm.lp as f64 * b)).exp();
        prop_assert!(close_rel(lhs, phase * v, 1e-9, v.norm()), "{lhs} vs {}", phase * v);
    }

    #[test]
    fn b0_is_equivariant_under_the_bessel_subgroup(
        prm in params(),
        g in element(),
        t in (0.4f64..2.5, -PI..PI),
        u in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
    ) {
        let f = B0Global(prm);
        let tm = nonsplit_torus_t(&c(t.0), &c(t.1)).real_part();
        let um = unipotent_t(&c(u.0), &c(u.1), &c(u.2)).real_part();
        let lhs = f.eval_at(&tm.mul(&um).mul(&g.mat)).unwrap();
        let factor = prm.character().eval(t.0, t.1) * ThetaChar::NONSPLIT.eval(u.0, u.1, u.2);
        let v = f.eval_at(&g.mat).unwrap();
        prop_assert!(close_rel(lhs, factor * v, 1e-9, (factor * v).norm()), "{lhs} vs {}", factor * v);
    }

    #[test]
    fn change_of_model_transports_the_equivariance(
        prm in params(),
        g in element(),
        t in (0.4f64..2.5, -PI..PI),
        u in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
        theta in -PI..PI,
    ) {
        let tm = nonsplit_torus_t(&c(t.0), &c(t.1)).real_part();
        let um = unipotent_t(&c(u.0), &c(u.1), &c(u.2)).real_part();
        let tug = tm.mul(&um).mul(&g.mat);

        // A = diag(1, −1): the torus character is conjugated and y changes sign.
        let f = ChangeOfModel::new(B0Global(prm), [[1.0, 0.0], [0.0, -1.0]], 1.0);
        let v = f.eval_at(&g.mat).unwrap();
        let lhs = f.eval_at(&tug).unwrap();
        let factor = c(t.0).powc(prm.s) * (-C64::i() * (prm.m as f64 * t.1)).exp()
            * ThetaChar::NONSPLIT.eval(u.0, -u.1, u.2);
        prop_assert!(close_rel(lhs, factor * v, 1e-9, v.norm()), "reflection: {lhs} vs {}", factor * v);

        // A a rotation: the character and θ are unchanged.
        let (s, co) = theta.sin_cos();
        let f = ChangeOfModel::new(B0Global(prm), [[co, s], [-s, co]], 1.0);
        let v = f.eval_at(&g.mat).unwrap();
        let lhs = f.eval_at(&tug).unwrap();
        let factor = prm.character().eval(t.0, t.1) * ThetaChar::NONSPLIT.eval(u.0, u.1, u.2);
        prop_assert!(close_rel(lhs, factor * v, 1e-9, v.norm()), "rotation: {lhs} vs {}", factor * v);
    }

    #[test]
    fn twist_multiplies_by_chi_of_the_multiplier(
        prm in params(),
        g in element(),
        t in (0.4f64..2.5, -PI..PI),
        u in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
        e in (-1.0f64..1.0, -1.0f64..1.0),
        sign in prop::sample::select(vec![1, -1]),
    ) {
        let f = Twist::new(B0Global(prm), C64::new(e.0, e.1), sign);
        let tm = nonsplit_torus_t(&c(t.0), &c(t.1)).real_part();
        let um = unipotent_t(&c(u.0), &c(u.1), &c(u.2)).real_part();
        let lhs = f.eval_at(&tm.mul(&um).mul(&g.mat)).unwrap();
        let v = f.eval_at(&g.mat).unwrap();
        let factor = f.chi(t.0 * t.0)
            * prm.character().eval(t.0, t.1)
            * ThetaChar::NONSPLIT.eval(u.0, u.1, u.2);
        prop_assert!(close_rel(lhs, factor * v, 1e-9, (factor * v).norm()), "{lhs} vs {}", factor * v);
    }

    #[test]
    fn b0_has_moderate_growth_on_the_diagonal(
        prm in params(),
        ll in -6.0f64..6.0,
        lz in 0.0f64..4.0,
    ) {
        let (lam, zeta) = (10f64.powf(ll), 10f64.powf(lz));
        let g = chart_element(&ChartPoint::nonsplit(lam, zeta, 0.0, 0.0)).unwrap().mat;
        let v = B0Global(prm).eval_at(&g).unwrap().norm();
        let n = group_norm(&g).unwrap();
        let deg = (prm.l + prm.lp) as f64 + prm.s.re.abs();
        prop_assert!(v <= 10.0 * n.powf(deg), "|B0| = {v}, norm {n}");
    }

    #[test]
    fn operator_formulas_agree_with_lie_derivatives_on_words(
        prm in params(),
        p in chart_point(),
        ops in prop::collection::vec(0usize..8, 1..=3),
    ) {
        let letters: Vec<ChartOperator> = ops.iter().map(|&k| ChartOperator::ALL[k]).collect();
        let a = word_value(&prm, &LadderWord::new(letters.clone()), &p).unwrap();
        let g = chart_element(&p).unwrap().mat;
        let word: Vec<_> = letters.iter().map(|o| o.tag().matrix()).collect();
        let b = lie_derivative(&B0Global(prm), &g, &word).unwrap();
        let scale = B0Global(prm).eval_at(&g).unwrap().norm().max(a.norm());
        prop_assert!(close_rel(a, b, 1e-7, scale * 10.0), "{letters:?}: {a} vs {b}");
    }
}

#[test]
fn compact_rotations_fix_the_base_point() {
    for k in [3, 4] {
        let z = siegel_action(&rotation(k, 0.7), &SiegelPoint::i()).unwrap();
        assert!(z.z.max_abs_diff(&CMat2::diag(C64::i(), C64::i())) < 1e-12);
    }
}
