//! Four-vertex limit shapes as sheared lozenge limit shapes.
//!
//! The shear `(x, y, h) ↦ (x, y − x − h, h)` carries four-vertex height
//! functions to lozenge height functions. On a boxed hexagon the lozenge
//! arctic curve is the inscribed ellipse and `h` is affine on each of its six
//! arcs, so the four-vertex curve is six arcs of six different ellipses.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2, Matrix3, SymmetricEigen, Vector2, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::regions::{FacetPlane, PolygonRegion};

/// Relative singular-value threshold for conic fits.
pub const CONIC_TOL: f64 = 1e-10;

/// A projective conic `pᵀ C p = 0` with `p = (x, y, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Conic {
    pub matrix: [[f64; 3]; 3],
}

impl Conic {
    fn from_matrix(m: Matrix3<f64>) -> Conic {
        let mut m = m / m.norm();
        if m[(0, 0)] + m[(1, 1)] < 0.0 {
            m = -m;
        }
        let mut matrix = [[0.0; 3]; 3];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = m[(i, j)];
            }
        }
        Conic { matrix }
    }

    fn mat(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.matrix[i][j])
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let p = Vector3::new(x, y, 1.0);
        (p.transpose() * self.mat() * p)[0]
    }

    pub fn is_ellipse(&self) -> bool {
        let m = self.mat();
        m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] > 0.0 && self.eval_center() < 0.0
    }

    pub fn center(&self) -> [f64; 2] {
        let m = self.mat();
        let a = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let c = a.lu().solve(&-Vector2::new(m[(0, 2)], m[(1, 2)])).unwrap_or_else(Vector2::zeros);
        [c[0], c[1]]
    }

    fn eval_center(&self) -> f64 {
        let [x, y] = self.center();
        self.eval(x, y)
    }

    /// Semi-axis lengths (major first) and the unit direction of the major
    /// axis, for an ellipse.
    pub fn axes(&self) -> ([f64; 2], [f64; 2]) {
        let m = self.mat();
        let k = self.eval_center();
        let eig = SymmetricEigen::new(Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]));
        let (i_major, i_minor) = if eig.eigenvalues[0] <= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
        let len = |i: usize| (-k / eig.eigenvalues[i]).sqrt();
        let v = eig.eigenvectors.column(i_major);
        ([len(i_major), len(i_minor)], [v[0], v[1]])
    }

    /// Point on the ellipse at parameter `φ` (counterclockwise).
    pub fn point(&self, phi: f64) -> [f64; 2] {
        let ([a, b], [ex, ey]) = self.axes();
        let [cx, cy] = self.center();
        let (p, q) = (a * phi.cos(), b * phi.sin());
        [cx + p * ex - q * ey, cy + p * ey + q * ex]
    }

    /// Parameter of a point on (or radially projected to) the ellipse.
    pub fn parameter(&self, p: [f64; 2]) -> f64 {
        let ([a, b], [ex, ey]) = self.axes();
        let [cx, cy] = self.center();
        let (dx, dy) = (p[0] - cx, p[1] - cy);
        let (u, v) = (dx * ex + dy * ey, -dx * ey + dy * ex);
        (v / b).atan2(u / a)
    }
}

/// The conic tangent to six lines `a x + b y + c = 0`, with the relative
/// residual of the dual fit.
pub fn inscribed_conic_of_lines(lines: &[[f64; 3]; 6]) -> Result<(Conic, Matrix3<f64>, f64)> {
    let rows: Vec<f64> = lines
        .iter()
        .flat_map(|l| {
            let n = (l[0] * l[0] + l[1] * l[1] + l[2] * l[2]).sqrt();
            let [a, b, c] = [l[0] / n, l[1] / n, l[2] / n];
            [a * a, b * b, c * c, 2.0 * a * b, 2.0 * a * c, 2.0 * b * c]
        })
        .collect();
    let m = DMatrix::from_row_slice(6, 6, &rows);
    let svd = m.svd(false, true);
    let sv = &svd.singular_values;
    let (imin, smin) = sv.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).map(|(i, s)| (i, *s)).unwrap();
    let smax = sv.max();
    let residual = smin / smax;
    let second = sv.iter().enumerate().filter(|(i, _)| *i != imin).map(|(_, s)| *s).fold(f64::INFINITY, f64::min);
    if residual > CONIC_TOL {
        return Err(Error::NotCircumscribing { residual });
    }
    if second / smax < CONIC_TOL {
        return Err(Error::DegenerateFamily("side lines admit more than one tangent conic".into()));
    }
    let d = svd.v_t.unwrap().row(imin).transpose();
    let dual = Matrix3::new(d[0], d[3], d[4], d[3], d[1], d[5], d[4], d[5], d[2]);
    let primal = dual.try_inverse().ok_or(Error::NotCircumscribing { residual })?;
    let conic = Conic::from_matrix(primal);
    if !conic.is_ellipse() {
        return Err(Error::NotCircumscribing { residual });
    }
    Ok((conic, dual, residual))
}

/// Point of tangency of a line with the conic whose dual is `dual`.
fn tangency(dual: &Matrix3<f64>, l: [f64; 3]) -> [f64; 2] {
    let p = dual * Vector3::new(l[0], l[1], l[2]);
    [p[0] / p[2], p[1] / p[2]]
}

/// A boxed-plane-partition hexagon in lozenge coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hexagon {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(skip)]
    region: PolygonRegion,
}

impl Hexagon {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) {
            return Err(Error::InvalidParameter(format!("hexagon sides must be positive, got ({a}, {b}, {c})")));
        }
        Ok(Hexagon { a, b, c, region: PolygonRegion::lozenge_hexagon(a, b, c)? })
    }

    pub fn region(&self) -> &PolygonRegion {
        &self.region
    }

    pub fn side_lines(&self) -> [[f64; 3]; 6] {
        std::array::from_fn(|i| self.region.side_line(i))
    }
}

pub fn inscribed_conic(hex: &Hexagon) -> Result<Conic> {
    inscribed_conic_of_lines(&hex.side_lines()).map(|(c, _, _)| c)
}

/// The six facet planes, starting with `h = −x` at the corner `(0, 0)`.
pub fn lozenge_facets(hex: &Hexagon) -> Result<Vec<FacetPlane>> {
    hex.region.facet_planes()
}

pub fn shear3d(p: [f64; 3]) -> [f64; 3] {
    [p[0], p[1] - p[0] - p[2], p[2]]
}

pub fn unshear3d(p: [f64; 3]) -> [f64; 3] {
    [p[0], p[1] + p[0] + p[2], p[2]]
}

/// One arc of the lozenge ellipse with the facet beside it, and its
/// four-vertex image.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourVertexArc {
    pub facet: FacetPlane,
    /// Points `(x, y, h)` on the inscribed ellipse.
    pub lozenge: Vec<[f64; 3]>,
    /// The same points after `unshear3d`.
    pub four_vertex: Vec<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourVertexCurve {
    pub ellipse: Conic,
    pub tangency: [[f64; 2]; 6],
    pub arcs: Vec<FourVertexArc>,
}

/// Splits the inscribed ellipse at its tangency points and unshears each arc
/// with the height of its facet. Arc `k` runs clockwise from the tangency
/// point on side `k` to the one on side `k + 1`.
pub fn fourvertex_arctic(hex: &Hexagon, samples_per_arc: usize) -> Result<FourVertexCurve> {
    let lines = hex.side_lines();
    let (ellipse, dual, _) = inscribed_conic_of_lines(&lines)?;
    let planes = lozenge_facets(hex)?;
    let tangency: [[f64; 2]; 6] = std::array::from_fn(|k| tangency(&dual, lines[k]));
    let phis: Vec<f64> = tangency.iter().map(|&p| ellipse.parameter(p)).collect();
    let samples = samples_per_arc.max(2);
    let arcs = (0..6)
        .map(|k| {
            let start = phis[k];
            let mut sweep = (phis[(k + 1) % 6] - start).rem_euclid(2.0 * PI) - 2.0 * PI;
            if sweep <= -2.0 * PI {
                sweep += 2.0 * PI;
            }
            let facet = planes[(k + 1) % 6];
            let lozenge: Vec<[f64; 3]> = (0..samples)
                .map(|i| {
                    let [x, y] = if i == 0 {
                        tangency[k]
                    } else if i == samples - 1 {
                        tangency[(k + 1) % 6]
                    } else {
                        ellipse.point(start + sweep * i as f64 / (samples - 1) as f64)
                    };
                    [x, y, facet.height(x, y)]
                })
                .collect();
            let four_vertex = lozenge.iter().map(|&p| unshear3d(p)).collect();
            FourVertexArc { facet, lozenge, four_vertex }
        })
        .collect();
    Ok(FourVertexCurve { ellipse, tangency, arcs })
}

/// Relative residual `σ_min / σ_max` of the best conic through the points.
pub fn conic_fit_residual(points: &[[f64; 2]]) -> f64 {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
    let scale = points.iter().map(|p| (p[0] - cx).hypot(p[1] - cy)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let rows: Vec<f64> = points
        .iter()
        .flat_map(|p| {
            let (x, y) = ((p[0] - cx) / scale, (p[1] - cy) / scale);
            [x * x, x * y, y * y, x, y, 1.0]
        })
        .collect();
    let sv = DMatrix::from_row_slice(points.len(), 6, &rows).singular_values();
    sv.min() / sv.max()
}

/// Winding number of a closed polyline around a point.
pub fn winding_number(points: &[[f64; 2]], p: [f64; 2]) -> i32 {
    let n = points.len();
    let total: f64 = (0..n)
        .map(|i| {
            let a = [points[i][0] - p[0], points[i][1] - p[1]];
            let b = [points[(i + 1) % n][0] - p[0], points[(i + 1) % n][1] - p[1]];
            (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1])
        })
        .sum();
    (total / (2.0 * PI)).round() as i32
}

/// Lozenge slopes to four-vertex slopes.
pub fn slope_map(s: f64, t: f64) -> Result<[f64; 2]> {
    if t == -1.0 {
        return Err(Error::Pole { at: num_complex::Complex64::new(s, t) });
    }
    Ok([(s - t) / (1.0 + t), t / (1.0 + t)])
}

/// Inverse of [`slope_map`].
pub fn slope_unmap(s: f64, t: f64) -> Result<[f64; 2]> {
    if t == 1.0 {
        return Err(Error::Pole { at: num_complex::Complex64::new(s, t) });
    }
    Ok([(s + t) / (1.0 - t), t / (1.0 - t)])
}

/// Four-vertex surface tension from the lozenge value at `(s, t)`.
pub fn sigma_transform(sigma: f64, _s: f64, t: f64) -> f64 {
    sigma / (1.0 + t)
}

/// `√det Hess σ̃ = π (1 + t)²` in the intrinsic coordinate.
pub fn kappa_of_t(t: f64) -> f64 {
    PI * (1.0 + t) * (1.0 + t)
}
