use gsp4_core::group::{chart_element, ChartPoint};
use gsp4_core::jets::{chart_jet, lie_derivative};
use gsp4_core::nonsplit::{apply_operator, B0Coords, B0Global, BesselParams, ChartOperator};
use gsp4_core::scalar::{c, Scalar};

#[test]
fn operators_match_ad_on_b0() {
    for &(l, lp, m) in &[(5, 1, 0), (6, 2, 2), (7, 3, -2), (4, 4, 0)] {
        let prm = BesselParams::new(l, lp, m, c(0.3)).unwrap();
        for p in [ChartPoint::nonsplit(0.7, 1.3, 0.2, 0.1), ChartPoint::nonsplit(1.1, 1.6, -0.5, 0.4)] {
            let j = chart_jet(&B0Coords(prm), &p, 1).unwrap();
            let g = chart_element(&p).unwrap().mat;
            for op in ChartOperator::ALL {
                let a = apply_operator(op, &p, &j, l, lp, prm.s, m).unwrap().value();
                let b = lie_derivative(&B0Global(prm), &g, &[op.tag().matrix()]).unwrap();
                let scale = j.value().norm();
                println!("{l} {lp} {m} {op:?}: formula {a:.6e} ad {b:.6e}");
                assert!((a - b).norm() < 1e-7 * scale, "{op:?} {l} {lp} {m}: {a} vs {b}");
            }
        }
    }
}
