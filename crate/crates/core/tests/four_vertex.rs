use std::f64::consts::PI;

use limitshape::fourvertex::{
    conic_fit_residual, fourvertex_arctic, inscribed_conic, inscribed_conic_of_lines, kappa_of_t, lozenge_facets,
    shear3d, slope_map, slope_unmap, unshear3d, winding_number, Hexagon,
};
use proptest::prelude::*;

fn regular_lines(side: f64) -> [[f64; 3]; 6] {
    // tangent lines of the circle of radius side·√3/2 at angles kπ/3, traversed clockwise
    let r = side * 3f64.sqrt() / 2.0;
    std::array::from_fn(|k| {
        let a = -(k as f64) * PI / 3.0;
        [a.cos(), a.sin(), -r]
    })
}

#[test]
fn regular_hexagon_has_inscribed_circle() {
    let (conic, _, residual) = inscribed_conic_of_lines(&regular_lines(1.0)).unwrap();
    assert!(residual < 1e-10);
    let c = conic.center();
    assert!(c[0].abs() < 1e-12 && c[1].abs() < 1e-12);
    let ([a, b], _) = conic.axes();
    assert!((a - 3f64.sqrt() / 2.0).abs() < 1e-12 && (b - 3f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn conic_scales_with_hexagon() {
    let base = inscribed_conic(&Hexagon::new(1.0, 2.0, 1.5).unwrap()).unwrap();
    let big = inscribed_conic(&Hexagon::new(3.0, 6.0, 4.5).unwrap()).unwrap();
    let ([a0, b0], _) = base.axes();
    let ([a1, b1], _) = big.axes();
    assert!((a1 - 3.0 * a0).abs() < 1e-10 && (b1 - 3.0 * b0).abs() < 1e-10);
    let (c0, c1) = (base.center(), big.center());
    assert!((c1[0] - 3.0 * c0[0]).abs() < 1e-10 && (c1[1] - 3.0 * c0[1]).abs() < 1e-10);
}

#[test]
fn lines_without_common_conic_rejected() {
    let mut lines = regular_lines(1.0);
    lines[4][2] -= 0.3;
    assert!(inscribed_conic_of_lines(&lines).is_err());
    // only four distinct lines: a whole pencil of tangent conics
    let mut degenerate = regular_lines(1.0);
    degenerate[2] = degenerate[1];
    degenerate[4] = degenerate[3];
    assert!(inscribed_conic_of_lines(&degenerate).is_err());
}

#[test]
fn facet_planes_agree_on_sides() {
    let hex = Hexagon::new(1.0, 2.0, 1.5).unwrap();
    let planes = lozenge_facets(&hex).unwrap();
    let corners = hex.region().corners();
    for k in 0..6 {
        // plane k+1 starts at the side-k start corner; planes k and k+1 meet along side k
        let (p, q) = (corners[k], corners[(k + 1) % 6]);
        for pt in [p, q] {
            let (a, b) = (planes[k].height(pt[0], pt[1]), planes[(k + 1) % 6].height(pt[0], pt[1]));
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn six_arcs_unshear_to_one_ellipse() {
    for (a, b, c) in [(1.0, 1.0, 1.0), (1.0, 2.0, 1.5), (0.7, 0.3, 2.0)] {
        let hex = Hexagon::new(a, b, c).unwrap();
        let curve = fourvertex_arctic(&hex, 60).unwrap();
        assert_eq!(curve.arcs.len(), 6);
        let mut worst: f64 = 0.0;
        for arc in &curve.arcs {
            for p in &arc.four_vertex {
                let back = shear3d(*p);
                worst = worst.max(curve.ellipse.eval(back[0], back[1]).abs());
            }
            let pts: Vec<[f64; 2]> = arc.four_vertex.iter().map(|p| [p[0], p[1]]).collect();
            assert!(conic_fit_residual(&pts) < 1e-10);
        }
        assert!(worst < 1e-10, "{worst}");
        // consecutive arcs meet
        for k in 0..6 {
            let end = curve.arcs[k].four_vertex.last().unwrap();
            let start = curve.arcs[(k + 1) % 6].four_vertex[0];
            assert!((end[0] - start[0]).abs() < 1e-12 && (end[1] - start[1]).abs() < 1e-12);
        }
        let closed: Vec<[f64; 2]> =
            curve.arcs.iter().flat_map(|a| a.four_vertex[..a.four_vertex.len() - 1].iter().map(|p| [p[0], p[1]])).collect();
        let n = closed.len() as f64;
        let centroid = [closed.iter().map(|p| p[0]).sum::<f64>() / n, closed.iter().map(|p| p[1]).sum::<f64>() / n];
        assert_eq!(winding_number(&closed, centroid).abs(), 1);
    }
}

#[test]
fn six_arcs_are_six_different_ellipses() {
    let hex = Hexagon::new(1.0, 1.0, 1.0).unwrap();
    let curve = fourvertex_arctic(&hex, 40).unwrap();
    // points from two different arcs do not lie on one conic
    let mixed: Vec<[f64; 2]> = curve.arcs[0].four_vertex.iter().chain(&curve.arcs[1].four_vertex).map(|p| [p[0], p[1]]).collect();
    assert!(conic_fit_residual(&mixed) > 1e-6);
}

#[test]
fn image_boundary_slopes_in_four_vertex_triangle() {
    let hex = Hexagon::new(1.0, 2.0, 1.5).unwrap();
    let corners = [[0.0, 0.0], [-1.0, 0.0], [-0.5, 0.5]];
    for p in lozenge_facets(&hex).unwrap() {
        let q = slope_map(p.slope[0], p.slope[1]).unwrap();
        assert!(corners.iter().any(|c| (c[0] - q[0]).abs() < 1e-15 && (c[1] - q[1]).abs() < 1e-15), "{q:?}");
    }
}

#[test]
fn kappa_corners() {
    assert_eq!(kappa_of_t(0.0), PI);
    assert_eq!(kappa_of_t(1.0), 4.0 * PI);
}

#[test]
fn kappa_root_harmonic_on_grid() {
    // t harmonic: Re of a polynomial; the discrete Laplacian of √π(1 + t) is √π times that of t
    let n = 20;
    let h = 0.05;
    let t = |i: usize, j: usize| {
        let (x, y) = (i as f64 * h, j as f64 * h);
        0.3 + 0.1 * (x * x - y * y) + 0.2 * x * y
    };
    let k = |i: usize, j: usize| PI.sqrt() * (1.0 + t(i, j));
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            let lap = |f: &dyn Fn(usize, usize) -> f64| f(i + 1, j) + f(i - 1, j) + f(i, j + 1) + f(i, j - 1) - 4.0 * f(i, j);
            assert!((lap(&k) - PI.sqrt() * lap(&t)).abs() < 1e-14);
        }
    }
    assert!(kappa_of_t(0.3).sqrt() - PI.sqrt() * 1.3 < 1e-15);
}

proptest! {
    #[test]
    fn slope_map_round_trip(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        // a point of the lozenge triangle cvx{(0,0), (−1,0), (0,1)}
        let (a, b) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
        let (s, t) = (-a, b);
        let [p, q] = slope_map(s, t).unwrap();
        let [s2, t2] = slope_unmap(p, q).unwrap();
        prop_assert!((s - s2).abs() < 1e-12 && (t - t2).abs() < 1e-12);
        // lands in cvx{(0,0), (−1,0), (−1/2,1/2)}
        prop_assert!(q >= -1e-15 && q <= -p + 1e-15 && q <= p + 1.0 + 1e-15);
    }

    #[test]
    fn shear_round_trip(x in -10.0f64..10.0, y in -10.0f64..10.0, h in -10.0f64..10.0) {
        let back = unshear3d(shear3d([x, y, h]));
        prop_assert_eq!(back[0], x);
        prop_assert_eq!(back[2], h);
        prop_assert!((back[1] - y).abs() <= 8.0 * f64::EPSILON * (x.abs() + y.abs() + h.abs()));
    }
}
