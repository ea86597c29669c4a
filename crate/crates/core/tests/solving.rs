use std::f64::consts::SQRT_2;

use limitshape::hplane::Extended;
use limitshape::models::ModelKind;
use limitshape::regions::{PolygonRegion, Side};
use limitshape::solver::{
    closed_form_fv_hexagon, closed_form_octagon, fv_hexagon_bound, octagon_bound, octagon_feasible, solve_fv_hexagon,
    solve_octagon, solve_parameters, InitialGuess, MatchingProblem, SolverOptions,
};
use limitshape::{Error, ExtReal, Mobius};
use proptest::prelude::*;

fn f(a: ExtReal) -> f64 {
    a.finite().unwrap()
}

/// Octagon anchors written out from the closed form, independent of the library.
fn octagon_oracle(m1: f64, m2: f64) -> [f64; 7] {
    let s = 2.0 - m1 - m2;
    let d = m1 - m2;
    [
        0.0,
        -1.0,
        -SQRT_2,
        -(1.0 + SQRT_2) * s / (2.0 * (1.0 - m2)),
        -(4.0 - 2.0 * SQRT_2) * (1.0 - m2) / d,
        -s / d,
        -SQRT_2 * s / d,
    ]
}

#[test]
fn octagon_half_quarter() {
    let shape = solve_octagon(0.5, 0.25, &SolverOptions::default()).unwrap();
    let got = shape.descending_anchors();
    let want = [0.0, -1.0, -SQRT_2, -(1.0 + SQRT_2) * 5.0 / 6.0, -12.0 + 6.0 * SQRT_2, -5.0, -5.0 * SQRT_2];
    for (g, w) in got.iter().zip(want) {
        assert!((f(*g) - w).abs() < 1e-9);
    }
    assert!(got[7].is_infinite());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn feasible_octagons_match_closed_form(m1 in 0.05f64..0.95, frac in 0.05f64..0.95) {
        let lo = octagon_bound(m1).max(-3.0);
        let m2 = lo + frac * (m1 - lo);
        prop_assume!(m1 - m2 > 0.02 && m2 - octagon_bound(m1) > 0.02);
        let shape = solve_octagon(m1, m2, &SolverOptions::default()).unwrap();
        for (g, w) in shape.descending_anchors().iter().zip(octagon_oracle(m1, m2)) {
            prop_assert!((f(*g) - w).abs() < 1e-8 * w.abs().max(1.0));
        }
        for r in shape.critical_residuals().unwrap() {
            prop_assert!(r < 1e-9);
        }
    }

    #[test]
    fn residuals_invariant_under_mobius(a in 0.5f64..2.0, b in -1.0f64..1.0, c in -0.3f64..0.3) {
        let d = (1.0 + b * c) / a;
        let m = Mobius::new(a, b, c, d).unwrap();
        let shape = solve_octagon(0.5, 0.25, &SolverOptions::default()).unwrap();
        let moved = shape.regauge(&m).unwrap();
        let problem = MatchingProblem::from_region(shape.region()).unwrap();
        let r = problem.residuals(&moved.anchors, moved.map.b).unwrap();
        prop_assert!(r.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-8);
    }
}

#[test]
fn feasibility_boundary() {
    assert!((octagon_bound(0.9) - 0.417157).abs() < 1e-6);
    assert!(!octagon_feasible(0.9, 0.05));
    assert!(octagon_feasible(0.8, 0.1));
    assert!(octagon_feasible(0.2, -2.0));
    let err = solve_octagon(0.9, 0.05, &SolverOptions::default()).unwrap_err();
    assert!(matches!(err, Error::Infeasible(ref msg) if msg.contains("0.417157")), "{err}");
}

#[test]
fn octagon_edge_parameters_solve() {
    for (m1, m2) in [(0.8, 0.1), (0.2, -2.0)] {
        let shape = solve_octagon(m1, m2, &SolverOptions::default()).unwrap();
        for (g, w) in shape.descending_anchors().iter().zip(closed_form_octagon(m1, m2).unwrap()) {
            if let (Extended::Finite(g), Extended::Finite(w)) = (g, w) {
                assert!((g - w).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn hexagon_closed_form_at_unit_m() {
    let shape = solve_parameters(&PolygonRegion::fv_hexagon(1.0, SQRT_2).unwrap(), None, &SolverOptions::default()).unwrap();
    let d: Vec<f64> = shape.descending_anchors().iter().take(7).map(|a| f(*a)).collect();
    let lam = 1.0 / (d[3] * d[4]).sqrt();
    let printed = [0.0, -0.485492, -0.686590, -0.879060];
    for k in 0..4 {
        assert!((d[k] * lam - printed[k]).abs() < 1e-5);
    }
    let exact = closed_form_fv_hexagon(1.0, SQRT_2).unwrap();
    for (g, w) in d.iter().zip(exact) {
        assert!((g * lam - f(w)).abs() < 1e-9);
    }
    assert!(shape.critical_residuals().unwrap()[0] < 1e-9);
}

/// Hexagon anchors in decreasing order, scaled so the middle pair is reciprocal.
fn scaled_hexagon(m: f64, r: f64) -> Vec<f64> {
    let shape = solve_fv_hexagon(m, r, &SolverOptions::default()).unwrap();
    let d: Vec<f64> = shape.descending_anchors().iter().filter_map(|a| a.finite()).collect();
    let lam = 1.0 / (d[3] * d[4]).sqrt();
    d.iter().map(|a| a * lam).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hexagon_matches_closed_form(m in 0.2f64..4.0, frac in 0.02f64..0.95) {
        let r = 1.0 + frac * (fv_hexagon_bound(m) - 1.0);
        let want = closed_form_fv_hexagon(m, r).unwrap();
        for (g, w) in scaled_hexagon(m, r).iter().zip(&want) {
            prop_assert!((g - f(*w)).abs() < 1e-9 * f(*w).abs().max(1.0));
        }
    }
}

#[test]
fn hexagon_anchors_depend_on_weight() {
    let (a, b) = (scaled_hexagon(1.0, SQRT_2), scaled_hexagon(1.0, 2.0));
    // a_3 / a_2 = r
    assert!((a[2] / a[1] - SQRT_2).abs() < 1e-9 && (b[2] / b[1] - 2.0).abs() < 1e-9);
    assert!((a[1] * a[2] - b[1] * b[2]).abs() < 1e-12);
}

#[test]
fn hexagon_weight_bound_rejected() {
    for r in [3.0, 4.0] {
        assert!(matches!(solve_fv_hexagon(1.0, r, &SolverOptions::default()), Err(Error::Infeasible(_))));
    }
    assert!(solve_fv_hexagon(1.0, 2.95, &SolverOptions::default()).is_ok());
}

#[test]
fn hexagon_solutions_for_other_weights() {
    for r in [1.2, 2.0] {
        let shape =
            solve_parameters(&PolygonRegion::fv_hexagon(1.0, r).unwrap(), None, &SolverOptions::default()).unwrap();
        assert!(shape.residual_norm < 1e-10);
        assert!(shape.critical_residuals().unwrap()[0] < 1e-9);
    }
}

#[test]
fn dodecagon_lemma_holds() {
    let lengths = [0.5, 0.5, 0.25, -0.25, -0.25, 0.25, 0.5, 0.5, 0.25, -0.25, -0.25, 0.25];
    let sides = lengths.iter().enumerate().map(|(i, &l)| Side::new((i % 4) as u8 + 1, l)).collect();
    let region = PolygonRegion::new(ModelKind::Domino, sides).unwrap();
    let shape = solve_parameters(&region, None, &SolverOptions::default()).unwrap();
    let r = shape.critical_residuals().unwrap();
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|v| *v < 1e-9));
}

#[test]
fn wrong_anchor_count_rejected() {
    let region = PolygonRegion::octagon(0.5, 0.25).unwrap();
    let init = InitialGuess { anchors: vec![Extended::Infinity; 3], b: None };
    assert!(matches!(
        solve_parameters(&region, Some(&init), &SolverOptions::default()),
        Err(Error::AnchorCount { expected: 8, found: 3 })
    ));
}
