use gsp4_core::nonsplit::{BesselParams, ChartOperator, LadderWord};
use gsp4_core::scalar::c;
use gsp4_core::zeta::*;
use gsp4_core::C64;

fn prm(l: i32, d: u32, r: f64) -> ZetaParams {
    ZetaParams::new(l, 3, d, c(r), c(1.0)).unwrap()
}

#[test]
fn pieces_match_closed_form_on_a_sweep() {
    let sweep = [(10, 4, 2.0, 1.0), (12, 3, 1.5, 0.8), (14, 8, 0.7, 1.1)];
    let pairs = [(0, 0), (1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (4, 1), (4, 2)];
    for (k, j) in pairs {
        for &(l, d, r, s) in &sweep {
            let p = prm(l, d, r);
            let a = z_kj_closed(c(s), k, j, &p).unwrap();
            let b = z_kj_quadrature(c(s), k, j, &p, 1e-8).unwrap();
            let rel = ((b - a) / a).norm();
            assert!(rel < 1e-6, "(k, j) = ({k}, {j}), l = {l}: {a} vs {b}");
            assert!(b.im.abs() < 1e-10 * b.re.abs());
        }
    }
}

#[test]
fn spec_parameter_sets() {
    for (l, k, j, s, r, d) in [(10, 0, 0, 1.0, 2.0, 4), (12, 1, 0, 0.8, 1.5, 3), (12, 2, 1, 0.8, 1.5, 3)] {
        let p = prm(l, d, r);
        let a = z_kj_closed(c(s), k, j, &p).unwrap();
        let b = z_kj_quadrature(c(s), k, j, &p, 1e-8).unwrap();
        assert!(((b - a) / a).norm() < 1e-6);
    }
}

#[test]
fn divergent_region_is_rejected() {
    let p = prm(10, 4, 2.0);
    assert!(matches!(
        z_kj_quadrature(c(-1.5), 0, 0, &p, 1e-8),
        Err(gsp4_core::Error::DivergentRegion { .. })
    ));
}

#[test]
fn assembly_is_termwise() {
    let table = extract_ckj(12, 5).unwrap();
    let p = ZetaParams::new(12, 5, 4, c(1.3), c(0.7)).unwrap();
    let s = C64::new(0.9, 0.4);
    let whole = z_infinity(s, &p, &table).unwrap();
    let mut sum = c(0.0);
    for e in &table.entries {
        sum += e.value * z_kj_closed(s, e.k, e.j, &p).unwrap();
    }
    assert!((whole - sum).norm() < 1e-12 * whole.norm());
}

#[test]
fn assembly_matches_quadrature_for_small_n() {
    for n in [3, 5] {
        let table = extract_ckj(12, n).unwrap();
        let p = ZetaParams::new(12, n, 4, c(2.0), c(1.0)).unwrap();
        let a = z_infinity(c(1.0), &p, &table).unwrap();
        let b = z_infinity_quadrature(c(1.0), &p, &table, 1e-8).unwrap();
        assert!(((a - b) / a).norm() < 1e-6, "n = {n}: {a} vs {b}");
    }
}

#[test]
fn extracted_tables_certify_the_shape() {
    for n in [3, 5, 7, 9] {
        let t = extract_ckj(12, n).unwrap();
        assert!(t.residual < 1e-7, "n = {n}: {}", t.residual);
    }
}

#[test]
fn printed_tables_agree_except_first_step() {
    // The recursion reproduces the printed l−4, l−6, l−8 expansions exactly;
    // the l−2 display has the wrong sign on its λ-term.
    for n in [5, 7, 9] {
        let (t, dev) = extract_ckj(12, n).unwrap().proportionality(&closed_form_ckj(12, n).unwrap());
        assert!((t - 1.0).abs() < 1e-6 && dev < 1e-6, "n = {n}: {t} {dev}");
    }
    let fitted = extract_ckj(12, 3).unwrap();
    let printed = closed_form_ckj(12, 3).unwrap();
    let pi = std::f64::consts::PI;
    assert!((printed.get(0, 0).unwrap() - 32.0 * pi).abs() < 1e-9);
    assert!((printed.get(1, 0).unwrap() - 72.0).abs() < 1e-9);
    assert!((fitted.get(0, 0).unwrap() + 16.0 * pi / 3.0).abs() < 1e-9);
    assert!((fitted.get(1, 0).unwrap() - 12.0).abs() < 1e-9);
}

fn grid() -> Vec<(f64, i32, i32, f64)> {
    vec![
        (0.0, 0, 0, 0.0),
        (0.0, 0, 0, 1.0),
        (1.0, 1, 0, 2.0),
        (2.0, 0, 1, 3.0),
        (3.0, 1, 1, 4.0),
        (-2.0, 2, 0, 1.5),
        (5.0, 1, 0, 6.0),
        (0.5, 0, 0, -0.5),
        (4.0, 2, 2, 8.0),
        (-3.0, 0, 1, 0.0),
        // divergent cases
        (0.0, 0, 0, -1.0),
        (0.0, 0, 0, -1.5),
        (3.0, 1, 0, 2.0),
        (5.0, 0, 0, 1.0),
        (4.0, 2, 1, 3.0),
        (9.0, 1, 0, 3.0),
        (0.0, 0, 2, 0.5),
        (2.0, -1, 0, 4.0),
        (7.0, 0, 0, 2.5),
        (1.0, 3, 0, 2.0),
    ]
}

#[test]
fn predicate_agrees_with_partial_integrals() {
    let radii = default_radii();
    let mut both = [0, 0];
    for (a, b, g, d) in grid() {
        let pred = convergence_predicate(a, b, g, d);
        both[pred as usize] += 1;
        let curve = double_integral_partials(a, b, g, d, &radii).unwrap();
        let want = if pred { Classification::Plateau } else { Classification::Growing };
        assert_eq!(curve.classification, want, "({a}, {b}, {g}, {d}): {:?}", curve.values);
    }
    assert!(both[0] >= 5 && both[1] >= 5);
}

#[test]
fn lp_boundaries() {
    let cases = [
        (6, 3, 1, 2.0, true),
        (6, 2, 0, 2.0, false),
        (6, 2, 0, 2.5, true),
        (4, 1, 1, 2.5, false),
        (7, 3, 0, 2.0, true),
        (5, 1, 0, 2.0, false),
        (8, 2, 2, 2.2, true),
        (9, 3, 2, 2.0, true),
        (8, 2, 0, 2.0, false),
        (7, 1, 2, 2.0, false),
    ];
    for (l, lp, m, p, want) in cases {
        let r = lp_norm_check(l, lp, m, p).unwrap();
        assert_eq!(r.convergent, want, "{l} {lp} {m} {p}");
        assert!(r.consistent, "{l} {lp} {m} {p}: {:?}", r.numeric);
    }
}

#[test]
fn scalar_products() {
    let cfg = ScalarProductConfig { n_phi1: 4, n_phi2: 6, rel_tol: 1e-7 };
    let p3 = BesselParams::new(6, 3, 1, c(0.0)).unwrap();
    let b = BesselSpec::lowest(p3);
    let ScalarProduct::Finite(norm) = scalar_product(&b, &b, &cfg).unwrap() else {
        panic!("expected a finite value");
    };
    assert!(norm.re > 0.0 && norm.im.abs() < 1e-12 * norm.re);

    let p2 = BesselParams::new(6, 2, 0, c(0.0)).unwrap();
    let b2 = BesselSpec::lowest(p2);
    assert_eq!(scalar_product(&b2, &b2, &cfg).unwrap(), ScalarProduct::Divergent);

    let w = BesselSpec { params: p3, word: LadderWord::new(vec![ChartOperator::Nplus, ChartOperator::Nminus]) };
    let (ScalarProduct::Finite(x), ScalarProduct::Finite(y)) =
        (scalar_product(&b, &w, &cfg).unwrap(), scalar_product(&w, &b, &cfg).unwrap())
    else {
        panic!("expected finite values");
    };
    assert!((x - y.conj()).norm() < 1e-10 * x.norm());

    let other = BesselSpec { params: p3, word: LadderWord::new(vec![ChartOperator::Xplus]) };
    assert_eq!(scalar_product(&b, &other, &cfg).unwrap(), ScalarProduct::Finite(c(0.0)));
}
