use gsp4_core::group::ChartPoint;
use gsp4_core::jets::{chart_jet, ChartFunction};
use gsp4_core::nonsplit::ChartOperator;
use gsp4_core::scalar::{c, Scalar, C64, I};
use gsp4_core::split::{apply_operator_split, operator_fd_split, FSplit, SplitParams};
use gsp4_core::Result;

/// A smooth function with no special relation to the split system.
struct Smooth;

impl ChartFunction for Smooth {
    fn eval<T: Scalar>(&self, x: &[T; 4]) -> Result<T> {
        let [lam, zeta, p1, p2] = x;
        let e = lam.scale(c(0.3)) + zeta.scale(c(0.2)) + p1.scale(I) - p2.scale(I * 0.5);
        Ok(e.exp().times(&lam.times(zeta).add_const(c(1.0))))
    }
}

fn check<F: ChartFunction>(f: &F, prm: &SplitParams, p: &ChartPoint) {
    let j = chart_jet(f, p, 1).unwrap();
    for op in ChartOperator::ALL {
        let a = apply_operator_split(op, p, &j, prm).unwrap().value();
        let b = operator_fd_split(op, p, f, prm, 1e-3).unwrap();
        let scale = j.value().norm().max(b.norm());
        println!("{op:?}: formula {a:.8e} fd {b:.8e}");
        assert!((a - b).norm() < 1e-5 * scale, "{op:?}: formula {a} fd {b}");
    }
}

#[test]
fn split_formulas_match_finite_differences_on_smooth_function() {
    let prm = SplitParams::new(5, 3, C64::new(0.3, 0.1), c(-0.2)).unwrap();
    for p in [ChartPoint::split(0.6, 0.4, 0.3, 0.2), ChartPoint::split(-0.8, 0.7, -0.4, 0.1)] {
        check(&Smooth, &prm, &p);
    }
}

#[test]
fn lowest_weight_operators_annihilate_formal_solution() {
    let prm = SplitParams::new(6, 2, C64::new(0.3, 0.1), c(-0.2)).unwrap();
    for p in [ChartPoint::split(0.6, 0.4, 0.3, 0.2), ChartPoint::split(1.1, -0.5, 0.9, -0.3)] {
        let j = chart_jet(&FSplit(prm), &p, 1).unwrap();
        for op in [ChartOperator::Nplus, ChartOperator::Xminus, ChartOperator::P1minus, ChartOperator::P0minus] {
            let v = apply_operator_split(op, &p, &j, &prm).unwrap().value();
            assert!(v.norm() < 1e-8 * j.value().norm(), "{op:?}: {v}");
        }
        check(&FSplit(prm), &prm, &p);
    }
}
