//! Polygonal domains with cyclically labelled sides.
//!
//! Sides are traversed clockwise starting at the corner `(0, 0)`. A side with
//! label `k` points along the model's direction for `k` and carries a signed
//! length. Walking the boundary, each side switches the corner slope one or
//! more times (see [`ModelKind::side_transitions`]); the facet plane after a
//! switch is fixed by agreeing with the previous plane along the side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, RegionError, Result};
use crate::hplane::{BoundaryData, ExtReal};
use crate::models::{ModelKind, Transition};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Side {
    pub label: u8,
    pub length: f64,
}

impl Side {
    pub fn new(label: u8, length: f64) -> Self {
        Side { label, length }
    }
}

/// The affine height `h = s x + t y + c` of a frozen facet.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetPlane {
    pub slope: [f64; 2],
    pub intercept: f64,
    /// Index of the boundary interval carrying this plane.
    pub interval: usize,
}

impl FacetPlane {
    pub fn height(&self, x: f64, y: f64) -> f64 {
        self.slope[0] * x + self.slope[1] * y + self.intercept
    }
}

/// The four harmonic boundary tables `θ, θs, θt, θc`.
///
/// For models without a weight function `θ ≡ 1`, so the last three are
/// simply `s`, `t` and `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTables {
    pub theta: BoundaryData,
    pub theta_s: BoundaryData,
    pub theta_t: BoundaryData,
    pub theta_c: BoundaryData,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonRegion {
    model: ModelKind,
    sides: Vec<Side>,
    corners: Vec<[f64; 2]>,
}

const CLOSURE_TOL: f64 = 1e-9;

/// Checks label cycle, closure and clockwise orientation; returns corners.
pub fn validate_region(model: ModelKind, sides: &[Side]) -> Result<Vec<[f64; 2]>> {
    model.validate()?;
    let k = model.label_count();
    if model.side_direction(1).is_none() {
        return Err(Error::InvalidParameter(format!("{model:?} has no polygonal regions")));
    }
    if sides.len() < k || !sides.len().is_multiple_of(k) {
        return Err(RegionError::TooFewSides { min: k, found: sides.len() }.into());
    }
    let mut corners = vec![[0.0, 0.0]];
    for (index, side) in sides.iter().enumerate() {
        let expected = (index % k) as u8 + 1;
        if side.label != expected {
            return Err(RegionError::LabelCycle { index, expected, found: side.label }.into());
        }
        if !side.length.is_finite() {
            return Err(RegionError::BadLength { index }.into());
        }
        let d = model.side_direction(side.label).unwrap();
        let p = corners[index];
        corners.push([p[0] + side.length * d[0], p[1] + side.length * d[1]]);
    }
    let last = corners.pop().unwrap();
    let scale = sides.iter().map(|s| s.length.abs()).fold(1.0, f64::max);
    let gap = last[0].hypot(last[1]);
    if gap > CLOSURE_TOL * scale {
        return Err(RegionError::NotClosed { gap }.into());
    }
    let n = corners.len();
    let twice_area: f64 = (0..n)
        .map(|i| {
            let (a, b) = (corners[i], corners[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum();
    if twice_area >= 0.0 {
        return Err(RegionError::Orientation { area: twice_area / 2.0 }.into());
    }
    Ok(corners)
}

/// `Σ(type-2 lengths) − Σ(type-3 lengths)` for dominos; for other models the
/// height mismatch after one loop of the continuity walk.
pub fn balance_check(model: ModelKind, sides: &[Side]) -> f64 {
    match model {
        ModelKind::Domino => {
            let sum = |label| sides.iter().filter(|s| s.label == label).map(|s| s.length).sum::<f64>();
            sum(2) - sum(3)
        }
        _ => walk_planes(model, sides).1,
    }
}

/// Walks the boundary; returns planes and the intercept closure residual.
fn walk_planes(model: ModelKind, sides: &[Side]) -> (Vec<FacetPlane>, f64) {
    let mut planes = Vec::new();
    let mut corner = [0.0, 0.0];
    let first = sides
        .first()
        .and_then(|s| model.side_transitions(s.label).first().copied())
        .map(|t| t.from)
        .unwrap_or([0.0, 0.0]);
    let mut current = FacetPlane { slope: first, intercept: 0.0, interval: 0 };
    for side in sides {
        for tr in model.side_transitions(side.label) {
            planes.push(current);
            let [s, t] = current.slope;
            let intercept =
                current.intercept + (s - tr.to[0]) * corner[0] + (t - tr.to[1]) * corner[1];
            current = FacetPlane { slope: tr.to, intercept, interval: planes.len() };
        }
        let d = model.side_direction(side.label).unwrap_or([0.0, 0.0]);
        corner = [corner[0] + side.length * d[0], corner[1] + side.length * d[1]];
    }
    (planes, current.intercept)
}

impl PolygonRegion {
    pub fn new(model: ModelKind, sides: Vec<Side>) -> Result<Self> {
        let corners = validate_region(model, &sides)?;
        Ok(PolygonRegion { model, sides, corners })
    }

    /// The unit square.
    pub fn aztec() -> Self {
        let sides = (1..=4).map(|l| Side::new(l, 1.0)).collect();
        PolygonRegion::new(ModelKind::Domino, sides).expect("unit square is valid")
    }

    /// The unit square with a two-step staircase cut from its upper right
    /// corner, symmetric under `(x, y) ↦ (y, x)`.
    ///
    /// Side lengths are `1, m1, m2, m1+m2−1, m1+m2−1, m2, m1, 1`.
    pub fn octagon(m1: f64, m2: f64) -> Result<Self> {
        let d = m1 + m2 - 1.0;
        let lengths = [1.0, m1, m2, d, d, m2, m1, 1.0];
        let sides = lengths.iter().enumerate().map(|(i, &l)| Side::new((i % 4) as u8 + 1, l)).collect();
        PolygonRegion::new(ModelKind::Domino, sides)
    }

    /// The hexagon with corners `(0,0), (0,1), (m,m+1), (m+1,m+1), (m+1,m), (1,0)`.
    pub fn fv_hexagon(m: f64, r: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidParameter(format!("hexagon needs m > 0, got {m}")));
        }
        let d = m * std::f64::consts::SQRT_2;
        let sides = vec![
            Side::new(1, 1.0),
            Side::new(2, d),
            Side::new(3, 1.0),
            Side::new(1, -1.0),
            Side::new(2, -d),
            Side::new(3, -1.0),
        ];
        PolygonRegion::new(ModelKind::FiveVertex { r }, sides)
    }

    /// The boxed plane-partition hexagon with sides `a, b, c` in lozenge
    /// coordinates: corners `(0,0), (0,a), (b,a), (b+c,a−c), (b+c,−c), (c,−c)`.
    pub fn lozenge_hexagon(a: f64, b: f64, c: f64) -> Result<Self> {
        let d = c * std::f64::consts::SQRT_2;
        let sides = vec![
            Side::new(1, a),
            Side::new(2, b),
            Side::new(3, d),
            Side::new(1, -a),
            Side::new(2, -b),
            Side::new(3, -d),
        ];
        PolygonRegion::new(ModelKind::Lozenge, sides)
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn corners(&self) -> &[[f64; 2]] {
        &self.corners
    }

    /// Largest corner coordinate, at least 1.
    pub fn scale(&self) -> f64 {
        self.corners.iter().flat_map(|c| c.iter()).fold(1.0, |m: f64, v| m.max(v.abs()))
    }

    pub fn balance_check(&self) -> f64 {
        balance_check(self.model, &self.sides)
    }

    /// Height mismatch after walking once around the boundary.
    pub fn intercept_closure(&self) -> f64 {
        walk_planes(self.model, &self.sides).1
    }

    /// Facet planes in boundary order; plane `k` sits on interval `k`, just
    /// before transition `k`.
    pub fn facet_planes(&self) -> Result<Vec<FacetPlane>> {
        let (planes, residual) = walk_planes(self.model, &self.sides);
        if residual.abs() > CLOSURE_TOL * self.scale() {
            return Err(Error::Imbalance { residual });
        }
        Ok(planes)
    }

    /// Slope transitions in boundary order, each with the index of its side.
    pub fn transitions(&self) -> Vec<(usize, Transition)> {
        self.sides
            .iter()
            .enumerate()
            .flat_map(|(i, s)| self.model.side_transitions(s.label).into_iter().map(move |t| (i, t)))
            .collect()
    }

    /// The line `a x + b y + c = 0` through side `i`, with `(a, b)` a unit normal.
    pub fn side_line(&self, i: usize) -> [f64; 3] {
        let d = self.model.side_direction(self.sides[i].label).unwrap();
        let p = self.corners[i];
        let (a, b) = (-d[1], d[0]);
        [a, b, -(a * p[0] + b * p[1])]
    }

    /// Boundary tables for tangency anchors given in transition order.
    ///
    /// Anchor `k` separates interval `k` (plane `k`) from interval `k + 1`.
    pub fn boundary_tables(&self, anchors: &[ExtReal]) -> Result<BoundaryTables> {
        let planes = self.facet_planes()?;
        if anchors.len() != planes.len() {
            return Err(Error::AnchorCount { expected: planes.len(), found: anchors.len() });
        }
        let n = planes.len();
        let next = |k: usize| &planes[(k + 1) % n];
        let theta: Vec<f64> = (0..n).map(|k| self.model.theta_for_slope(next(k).slope)).collect();
        let col = |f: &dyn Fn(&FacetPlane) -> f64| -> Vec<f64> {
            (0..n).map(|k| theta[k] * f(next(k))).collect()
        };
        let build = |v: Vec<f64>| {
            BoundaryData::from_arcs(anchors, &v).map_err(|_| Error::OrderViolation {
                first: first_order_violation(anchors).0,
                second: first_order_violation(anchors).1,
            })
        };
        Ok(BoundaryTables {
            theta: build(theta.clone())?,
            theta_s: build(col(&|p| p.slope[0]))?,
            theta_t: build(col(&|p| p.slope[1]))?,
            theta_c: build(col(&|p| p.intercept))?,
        })
    }
}

fn first_order_violation(anchors: &[ExtReal]) -> (usize, usize) {
    crate::hplane::check_cyclic_order(anchors).err().unwrap_or((0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hplane::Extended;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn planes(r: &PolygonRegion) -> Vec<(f64, f64, f64)> {
        r.facet_planes().unwrap().iter().map(|p| (p.slope[0], p.slope[1], p.intercept)).collect()
    }

    #[test]
    fn aztec_square() {
        let r = PolygonRegion::aztec();
        assert_eq!(r.corners(), &[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]);
        assert_eq!(r.balance_check(), 0.0);
        assert_eq!(
            planes(&r),
            vec![(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, 1.0, -1.0), (0.0, 1.0, 0.0)]
        );
    }

    #[test]
    fn label_cycle_error() {
        let sides = [1u8, 3, 2, 4].iter().map(|&l| Side::new(l, 1.0)).collect();
        let err = PolygonRegion::new(ModelKind::Domino, sides).unwrap_err();
        assert_eq!(err, Error::Region(RegionError::LabelCycle { index: 1, expected: 2, found: 3 }));
    }

    #[test]
    fn closure_and_orientation_errors() {
        let open = vec![Side::new(1, 1.0), Side::new(2, 2.0), Side::new(3, 1.0), Side::new(4, 1.0)];
        assert!(matches!(
            PolygonRegion::new(ModelKind::Domino, open),
            Err(Error::Region(RegionError::NotClosed { .. }))
        ));
        // up, left, down, right
        let ccw = vec![Side::new(1, 1.0), Side::new(2, -1.0), Side::new(3, 1.0), Side::new(4, -1.0)];
        assert!(matches!(
            PolygonRegion::new(ModelKind::Domino, ccw),
            Err(Error::Region(RegionError::Orientation { .. }))
        ));
        let three = (1..=3).map(|l| Side::new(l, 1.0)).collect();
        assert!(matches!(
            PolygonRegion::new(ModelKind::Domino, three),
            Err(Error::Region(RegionError::TooFewSides { .. }))
        ));
    }

    #[test]
    fn stretched_square_is_unbalanced() {
        let sides = [Side::new(1, 1.0), Side::new(2, 2.0), Side::new(3, 1.0), Side::new(4, 1.0)];
        assert_eq!(balance_check(ModelKind::Domino, &sides), 1.0);
    }

    #[test]
    fn unbalanced_region_has_no_planes() {
        // closes geometrically but type-2 and type-3 totals differ
        let sides = vec![
            Side::new(1, 1.0),
            Side::new(2, 1.0),
            Side::new(3, 2.0),
            Side::new(4, 0.5),
            Side::new(1, 1.0),
            Side::new(2, -0.5),
            Side::new(3, 0.0),
            Side::new(4, 0.0),
        ];
        let r = PolygonRegion::new(ModelKind::Domino, sides).unwrap();
        assert_eq!(r.balance_check(), -1.5);
        assert!(matches!(r.facet_planes(), Err(Error::Imbalance { .. })));
    }

    #[test]
    fn octagon_planes() {
        let (m1, m2) = (0.5, 0.25);
        let r = PolygonRegion::octagon(m1, m2).unwrap();
        assert_eq!(r.balance_check(), 0.0);
        let c: Vec<f64> = planes(&r).iter().map(|p| p.2).collect();
        // one rotation of (0, −1, m1−1, m1−m2, m1−1, −1, 0, 0)
        assert_eq!(c, vec![0.0, 0.0, -1.0, m1 - 1.0, m1 - m2, m1 - 1.0, -1.0, 0.0]);
        assert_eq!(
            r.corners(),
            &[[0.0, 0.0], [0.0, 1.0], [0.5, 1.0], [0.5, 0.75], [0.75, 0.75], [0.75, 0.5], [1.0, 0.5], [1.0, 0.0]]
        );
    }

    #[test]
    fn fv_hexagon_planes() {
        let m = 1.0;
        let r = PolygonRegion::fv_hexagon(m, std::f64::consts::SQRT_2).unwrap();
        let p = planes(&r);
        let expected = [
            (0.0, 0.0, 0.0),
            (1.0, 0.0, 0.0),
            (0.5, 0.5, -0.5),
            (0.0, 1.0, -1.0),
            (0.0, 0.0, m),
            (1.0, 0.0, -1.0),
            (0.5, 0.5, -0.5),
            (0.0, 1.0, 0.0),
        ];
        for (a, b) in p.iter().zip(expected) {
            assert!((a.0 - b.0).abs() + (a.1 - b.1).abs() + (a.2 - b.2).abs() < 1e-15);
        }
        assert!(r.intercept_closure().abs() < 1e-15);
    }

    #[test]
    fn fv_theta_weighted_table() {
        let m = 1.0;
        let r = PolygonRegion::fv_hexagon(m, 1.5).unwrap();
        let anchors: Vec<ExtReal> =
            [-2.0, -1.5, -1.1, -0.9, -0.5, -0.3, 0.0].iter().map(|&x| x.into()).collect();
        let mut all = vec![Extended::Infinity];
        all.extend(anchors);
        let tables = r.boundary_tables(&all).unwrap();
        // G/π over the intervals in order of increasing u
        let g: Vec<f64> = tables.theta_c.values().iter().map(|v| v / PI).collect();
        let expected = [0.0, -1.0, -1.0, m, -1.0, -1.0, 0.0, 0.0];
        for (a, b) in g.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{g:?}");
        }
        let th: Vec<f64> = tables.theta.values().iter().map(|v| v / PI).collect();
        assert_eq!(th, vec![1.0, 2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0]);
    }

    #[test]
    fn aztec_tables_reproduce_c() {
        let r = PolygonRegion::aztec();
        let anchors = [0.0.into(), 1.0.into(), Extended::Infinity, (-1.0).into()];
        let tables = r.boundary_tables(&anchors).unwrap();
        for u in [Complex64::new(0.0, 1.0), Complex64::new(-0.7, 0.3), Complex64::new(2.0, 5.0)] {
            let c = tables.theta_c.eval(u).unwrap();
            let oracle = (-PI + (u - 1.0).arg()) / PI;
            assert!((c - oracle).abs() < 1e-15);
        }
        assert!(matches!(
            r.boundary_tables(&anchors[..3]),
            Err(Error::AnchorCount { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn height_monotone_along_sides() {
        let r = PolygonRegion::octagon(0.6, 0.3).unwrap();
        let planes = r.facet_planes().unwrap();
        let trans = r.transitions();
        for (k, (side, _)) in trans.iter().enumerate() {
            let p = planes[k];
            let a = r.corners()[*side];
            let b = r.corners()[(*side + 1) % r.corners().len()];
            let (ha, hb) = (p.height(a[0], a[1]), p.height(b[0], b[1]));
            let q = planes[(k + 1) % planes.len()];
            assert!((q.height(a[0], a[1]) - ha).abs() < 1e-15);
            assert!((q.height(b[0], b[1]) - hb).abs() < 1e-15);
            match r.sides()[*side].label {
                1 | 4 => assert!((hb - ha).abs() < 1e-15),
                2 => assert!(((hb - ha) - (b[0] - a[0])).abs() < 1e-15),
                3 => assert!(((hb - ha) - (b[1] - a[1])).abs() < 1e-15),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn lozenge_hexagon_planes() {
        let (a, b, c) = (2.0, 3.0, 1.5);
        let r = PolygonRegion::lozenge_hexagon(a, b, c).unwrap();
        let p = planes(&r);
        let expected = [(-1.0, 0.0, 0.0), (0.0, 0.0, 0.0), (0.0, 1.0, -a), (-1.0, 0.0, b), (0.0, 0.0, -c), (0.0, 1.0, 0.0)];
        for (x, y) in p.iter().zip(expected) {
            assert!((x.0 - y.0).abs() + (x.1 - y.1).abs() + (x.2 - y.2).abs() < 1e-14, "{p:?}");
        }
    }

    proptest! {
        #[test]
        fn closure_equals_balance(l in proptest::collection::vec(-8i32..8, 8)) {
            // dyadic lengths keep the arithmetic exact
            let lens: Vec<f64> = l.iter().map(|&x| x as f64 / 4.0).collect();
            let sides: Vec<Side> = lens.iter().enumerate().map(|(i, &x)| Side::new((i % 4) as u8 + 1, x)).collect();
            let (_, closure) = walk_planes(ModelKind::Domino, &sides);
            prop_assert_eq!(closure, balance_check(ModelKind::Domino, &sides));
        }

        #[test]
        fn consecutive_planes_agree_on_sides(m1 in 0.3f64..0.95, frac in 0.0f64..1.0) {
            let lo = (3.0 + 2.0 * std::f64::consts::SQRT_2) * m1 - 2.0 * (1.0 + std::f64::consts::SQRT_2);
            let m2 = lo.max(-1.0) + frac * (m1 - lo.max(-1.0)) * 0.99;
            let r = PolygonRegion::octagon(m1, m2).unwrap();
            let planes = r.facet_planes().unwrap();
            for (k, (side, _)) in r.transitions().iter().enumerate() {
                let a = r.corners()[*side];
                let q = planes[(k + 1) % planes.len()];
                prop_assert!((planes[k].height(a[0], a[1]) - q.height(a[0], a[1])).abs() < 1e-14);
            }
        }
    }
}
