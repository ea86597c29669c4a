use std::f64::consts::{PI, SQRT_2};

use limitshape::envelope::{
    arctic_point, envelope_defect, gradient_error, orientation_sign, sample_arctic, sample_surface, surface_point,
    TangentField,
};
use limitshape::models::FortressField;
use limitshape::regions::PolygonRegion;
use limitshape::solver::{solve_octagon, solve_parameters, SolvedShape, SolverOptions};
use limitshape::{Complex64, Mobius};
use proptest::prelude::*;

fn aztec() -> SolvedShape {
    solve_parameters(&PolygonRegion::aztec(), None, &SolverOptions::default()).unwrap()
}

fn hexagon() -> SolvedShape {
    let shape = solve_parameters(&PolygonRegion::fv_hexagon(1.0, SQRT_2).unwrap(), None, &SolverOptions::default()).unwrap();
    // scale so the two middle anchors are reciprocal
    let (a3, a4) = (shape.anchors[3].finite().unwrap(), shape.anchors[4].finite().unwrap());
    shape.regauge(&Mobius::affine(1.0 / (a3 * a4).sqrt(), 0.0).unwrap()).unwrap()
}

/// Closed-form Aztec surface, written out independently of the library.
fn aztec_oracle(z: Complex64) -> [f64; 3] {
    let n2 = z.norm_sqr();
    let x = n2 / (1.0 + n2);
    let y = (z + 1.0).norm_sqr() / (2.0 * (1.0 + n2));
    let w = (z + 1.0) / (z - 1.0);
    let h = -1.0 + (z - 1.0).arg() / PI + n2 * (PI - z.arg()) / (PI * (1.0 + n2))
        + (z + 1.0).norm_sqr() * (PI + w.arg()) / (2.0 * PI * (1.0 + n2));
    [x, y, h]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn aztec_matches_closed_form(re in -5.0f64..5.0, im in 0.01f64..5.0) {
        let z = Complex64::new(re, im);
        let p = surface_point(&aztec(), z).unwrap();
        let [x, y, h] = aztec_oracle(z);
        prop_assert!((p.x - x).abs() < 1e-10);
        prop_assert!((p.y - y).abs() < 1e-10);
        prop_assert!((p.h - h).abs() < 1e-10);
    }

    #[test]
    fn octagon_orientation_is_constant(re in -15.0f64..2.0, im in 0.05f64..10.0) {
        let shape = solve_octagon(0.5, 0.25, &SolverOptions::default()).unwrap();
        prop_assert_eq!(orientation_sign(&shape, Complex64::new(re, im), 1e-6).unwrap(), -1.0);
    }
}

#[test]
fn aztec_spot_values() {
    let p = surface_point(&aztec(), Complex64::i()).unwrap();
    assert!((p.x - 0.5).abs() < 1e-15 && (p.y - 0.5).abs() < 1e-15 && (p.h - 0.25).abs() < 1e-15);
}

#[test]
fn aztec_arctic_circle() {
    let curve = sample_arctic(&aztec(), 100).unwrap();
    let pts: Vec<_> = curve.arcs.iter().flat_map(|a| a.points.iter()).collect();
    assert_eq!(pts.len(), 400);
    let worst = pts.iter().map(|p| ((p.x - 0.5).powi(2) + (p.y - 0.5).powi(2) - 0.25).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-10, "{worst}");
}

fn cayley_stencils(n: usize) -> Vec<[Complex64; 5]> {
    // n × n Cartesian grid on [−0.5, 0.5]² in the disk, pushed to the half-plane
    let h = 1.0 / (n - 1) as f64;
    let i = Complex64::i();
    let u = |w: Complex64| i * (1.0 + w) / (1.0 - w);
    let mut out = Vec::new();
    for a in 1..n - 1 {
        for b in 1..n - 1 {
            let w = Complex64::new(-0.5 + a as f64 * h, -0.5 + b as f64 * h);
            out.push([u(w), u(w + h), u(w - h), u(w + i * h), u(w - i * h)]);
        }
    }
    out
}

#[test]
fn gradient_matches_slopes() {
    let shape = aztec();
    let coarse = gradient_error(&shape, &cayley_stencils(100)).unwrap();
    let fine = gradient_error(&shape, &cayley_stencils(200)).unwrap();
    assert!(coarse < 1e-4, "{coarse}");
    assert!(fine <= coarse / 2.0, "{coarse} {fine}");
}

#[test]
fn stationarity_by_differences() {
    let shape = solve_octagon(0.5, 0.25, &SolverOptions::default()).unwrap();
    let hex = hexagon();
    let cases: [(&SolvedShape, Complex64); 4] = [
        (&shape, Complex64::new(-3.0, 1.5)),
        (&shape, Complex64::new(-0.4, 0.3)),
        (&hex, Complex64::new(-0.5, -0.4)),
        (&hex, Complex64::new(-2.0, -1.0)),
    ];
    for (field, u) in cases {
        let p = surface_point(field, u).unwrap();
        // θ (s x + t y + c − h) with the point held fixed
        let f = |v: Complex64| {
            let j = field.jet(v).unwrap();
            j.phi[0] * p.x + j.phi[1] * p.y + j.phi[2] - j.theta * p.h
        };
        let d = 1e-5;
        let dx = (f(u + d) - f(u - d)) / (2.0 * d);
        let dy = (f(u + Complex64::new(0.0, d)) - f(u - Complex64::new(0.0, d))) / (2.0 * d);
        assert!(dx.hypot(dy) < 1e-9, "{u}: {dx} {dy}");
        assert!(envelope_defect(field, u, [p.x, p.y, p.h]).unwrap().norm() < 1e-10);
    }
}

#[test]
fn plane_identity_on_samples() {
    for shape in [aztec(), hexagon()] {
        let s = sample_surface(&shape, 50);
        assert_eq!(s.points.len() + s.skipped.len(), 2500);
        for p in &s.points {
            assert!((p.h - (p.s * p.x + p.t * p.y + p.c)).abs() < 1e-12);
        }
    }
}

#[test]
fn sampling_is_deterministic() {
    let shape = solve_octagon(0.5, 0.25, &SolverOptions::default()).unwrap();
    assert_eq!(sample_surface(&shape, 30), sample_surface(&shape, 30));
    assert_eq!(sample_arctic(&shape, 30).unwrap(), sample_arctic(&shape, 30).unwrap());
}

#[test]
fn octagon_curve_touches_every_side() {
    let shape = solve_octagon(0.5, 0.25, &SolverOptions::default()).unwrap();
    let region = shape.region().clone();
    let curve = sample_arctic(&shape, 30).unwrap();
    assert_eq!(curve.arcs.len(), 8);
    for (k, (side, _)) in region.transitions().iter().enumerate() {
        let [a, b, c] = region.side_line(*side);
        let p = curve.tangency[k];
        assert!((a * p[0] + b * p[1] + c).abs() < 1e-8);
    }
}

#[test]
fn hexagon_symmetry_axis_maps_to_diagonal() {
    let hex = hexagon();
    for phi in [0.3, 0.9, 1.5, 2.2, 2.9] {
        let u = Complex64::from_polar(1.0, -phi);
        let p = surface_point(&hex, u).unwrap();
        assert!((p.x - p.y).abs() < 1e-10, "{phi}: {} {}", p.x, p.y);
    }
}

#[test]
fn hexagon_has_eight_tangency_points() {
    let hex = hexagon();
    let region = hex.region().clone();
    let curve = sample_arctic(&hex, 20).unwrap();
    assert_eq!(curve.tangency.len(), 8);
    let mut per_side = [0; 6];
    for (k, (side, _)) in region.transitions().iter().enumerate() {
        let [a, b, c] = region.side_line(*side);
        let p = curve.tangency[k];
        assert!((a * p[0] + b * p[1] + c).abs() < 1e-8);
        per_side[*side] += 1;
    }
    assert_eq!(per_side, [1, 2, 1, 1, 2, 1]);
}

#[test]
fn hexagon_half_slope_facets_sit_mid_diagonal() {
    let hex = hexagon();
    let s = sample_surface(&hex, 40);
    let half: Vec<_> =
        s.points.iter().filter(|p| p.facet_adjacent && (p.s - 0.5).abs() < 1e-6 && (p.t - 0.5).abs() < 1e-6).collect();
    assert!(!half.is_empty());
    for p in half {
        let near_upper = (p.x - 0.5).hypot(p.y - 1.5) < 0.2;
        let near_lower = (p.x - 1.5).hypot(p.y - 0.5) < 0.2;
        assert!(near_upper || near_lower, "({}, {})", p.x, p.y);
    }
}

#[test]
fn hexagon_arctic_endpoints_on_same_diagonal() {
    let hex = hexagon();
    // the two anchors on the upper diagonal side
    let a = arctic_point(&hex, hex.anchors[1]).unwrap();
    let b = arctic_point(&hex, hex.anchors[2]).unwrap();
    assert!((a.y - a.x - 1.0).abs() < 1e-8 && (b.y - b.x - 1.0).abs() < 1e-8);
    assert!((a.x - b.x).abs() > 0.1);
}

#[test]
fn fortress_surface_stays_in_square() {
    let field = FortressField::new();
    let s = sample_surface(&field, 20);
    assert!(s.skipped.is_empty());
    for p in &s.points {
        assert!((p.x - 2.0).abs() < 6.2 && p.y.abs() < 6.2, "({}, {})", p.x, p.y);
        assert!(p.s.abs() + p.t.abs() <= 1.0 + 1e-9);
    }
}

#[test]
fn fortress_columns_periodic() {
    let field = FortressField::new();
    for (re, im) in [(0.3, 0.2), (1.1, 0.5), (0.7, 0.9)] {
        let a = TangentField::jet(&field, Complex64::new(re, im)).unwrap();
        let b = TangentField::jet(&field, Complex64::new(re + 2.0, im)).unwrap();
        for k in 0..3 {
            assert!((a.phi[k] - b.phi[k]).abs() < 1e-10);
        }
    }
}
