//! The limit shape as the envelope of its tangent planes, and the arctic
//! curve as the envelope of the boundary tangent lines.
//!
//! A tangent field supplies `θ` and `Φ = (θs, θt, θc)` with their
//! holomorphic derivatives. The surface point at `u` solves
//!
//! ```text
//! Φs x + Φt y − θ h = −Φc
//! Re, Im [Φs_u x + Φt_u y − θ_u h] = −Re, Im Φc_u
//! ```
//!
//! On the real axis each boundary jump contributes a line form
//! `L_j = ΔΦ_j − (s0, t0, c0) Δθ_j`, and the arctic point is the envelope
//! of `Σ L_j / (u − α_j)`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hplane::{ExtReal, Extended};
use crate::models::{FortressField, ModelKind, ParamDomain};
use crate::regions::FacetPlane;
use crate::solver::SolvedShape;

/// Condition number above which a linear system counts as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Distance from a facet slope below which a sample is facet-adjacent.
pub const FACET_TOL: f64 = 1e-6;

/// `θ`, `Φ = (θs, θt, θc)` and their `u`-derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub theta: f64,
    pub phi: [f64; 3],
    pub theta_u: Complex64,
    pub phi_u: [Complex64; 3],
}

/// A field of tangent planes parametrized by a planar domain.
pub trait TangentField: Sync {
    fn model(&self) -> ModelKind;

    fn jet(&self, u: Complex64) -> Result<Jet>;

    /// `n × n` parameter points covering the domain in a fixed order.
    fn grid(&self, n: usize) -> Vec<Complex64>;
}

/// A point on the surface with its tangent plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub u: Complex64,
    pub x: f64,
    pub y: f64,
    pub h: f64,
    pub s: f64,
    pub t: f64,
    pub c: f64,
    pub facet_adjacent: bool,
}

fn condition3(m: &Matrix3<f64>) -> f64 {
    let sv = m.singular_values();
    let (max, min) = (sv.max(), sv.min());
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn condition2(m: &Matrix2<f64>) -> f64 {
    let sv = m.singular_values();
    let (max, min) = (sv.max(), sv.min());
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn near_facet(model: ModelKind, s: f64, t: f64) -> bool {
    model.facet_slopes().iter().any(|v| (v[0] - s).hypot(v[1] - t) < FACET_TOL)
}

/// Solves the envelope system at an interior parameter point.
pub fn surface_point<F: TangentField + ?Sized>(field: &F, u: Complex64) -> Result<SurfacePoint> {
    let j = field.jet(u)?;
    let m = Matrix3::new(
        j.phi[0], j.phi[1], -j.theta,
        j.phi_u[0].re, j.phi_u[1].re, -j.theta_u.re,
        j.phi_u[0].im, j.phi_u[1].im, -j.theta_u.im,
    );
    let rhs = -Vector3::new(j.phi[2], j.phi_u[2].re, j.phi_u[2].im);
    let cond = condition3(&m);
    if cond > MAX_CONDITION {
        return Err(Error::Singular { cond });
    }
    let sol = m.full_piv_lu().solve(&rhs).ok_or(Error::Singular { cond })?;
    let (s, t, c) = (j.phi[0] / j.theta, j.phi[1] / j.theta, j.phi[2] / j.theta);
    let (x, y) = (sol[0], sol[1]);
    Ok(SurfacePoint { u, x, y, h: s * x + t * y + c, s, t, c, facet_adjacent: near_facet(field.model(), s, t) })
}

/// `Φ_u · (x, y, 1) − θ_u h`, which vanishes on the surface.
pub fn envelope_defect<F: TangentField + ?Sized>(field: &F, u: Complex64, p: [f64; 3]) -> Result<Complex64> {
    let j = field.jet(u)?;
    Ok(j.phi_u[0] * p[0] + j.phi_u[1] * p[1] + j.phi_u[2] - j.theta_u * p[2])
}

/// Surface samples with the parameter points that failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceSample {
    pub grid: usize,
    pub points: Vec<SurfacePoint>,
    pub skipped: Vec<(Complex64, String)>,
}

/// Evaluates the surface on the field's `n × n` grid in parallel.
pub fn sample_surface<F: TangentField + ?Sized>(field: &F, n: usize) -> SurfaceSample {
    let results: Vec<(Complex64, Result<SurfacePoint>)> =
        field.grid(n).into_par_iter().map(|u| (u, surface_point(field, u))).collect();
    let mut points = Vec::with_capacity(results.len());
    let mut skipped = Vec::new();
    for (u, r) in results {
        match r {
            Ok(p) => points.push(p),
            Err(e) => skipped.push((u, e.to_string())),
        }
    }
    SurfaceSample { grid: n, points, skipped }
}

/// Sign of the Jacobian of `u ↦ (x, y)` by central differences.
pub fn orientation_sign<F: TangentField + ?Sized>(field: &F, u: Complex64, step: f64) -> Result<f64> {
    let at = |d: Complex64| surface_point(field, u + d).map(|p| [p.x, p.y]);
    let (xp, xm) = (at(step.into())?, at((-step).into())?);
    let (yp, ym) = (at(Complex64::new(0.0, step))?, at(Complex64::new(0.0, -step))?);
    let det = (xp[0] - xm[0]) * (yp[1] - ym[1]) - (xp[1] - xm[1]) * (yp[0] - ym[0]);
    Ok(det.signum())
}

/// Largest deviation between `(s, t)` and a finite-difference gradient.
///
/// Each stencil is `[u0, u0 + d1, u0 − d1, u0 + d2, u0 − d2]`; central
/// differences of `(x, y, h)` along both directions give `∇h` by the chain
/// rule.
pub fn gradient_error<F: TangentField + ?Sized>(field: &F, stencils: &[[Complex64; 5]]) -> Result<f64> {
    let errors: Result<Vec<f64>> = stencils
        .par_iter()
        .map(|stencil| {
            let p: Vec<SurfacePoint> = stencil.iter().map(|&u| surface_point(field, u)).collect::<Result<_>>()?;
            let d = |i: usize, j: usize| [p[i].x - p[j].x, p[i].y - p[j].y, p[i].h - p[j].h];
            let (da, db) = (d(1, 2), d(3, 4));
            let m = Matrix2::new(da[0], da[1], db[0], db[1]);
            let g = m.lu().solve(&Vector2::new(da[2], db[2])).ok_or(Error::Singular { cond: f64::INFINITY })?;
            Ok((g[0] - p[0].s).abs().max((g[1] - p[0].t).abs()))
        })
        .collect();
    Ok(errors?.into_iter().fold(0.0, f64::max))
}

/// Polar grid of the unit disk pushed to a half-plane by
/// `w ↦ center + radius · i (1 + w) / (1 − w)`; the last ring hugs the boundary.
pub fn half_plane_grid(center: f64, radius: f64, n: usize, lower: bool) -> Vec<Complex64> {
    let i = Complex64::i();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        let rho = ((a + 1) as f64 / n as f64).min(1.0 - 1e-8);
        for b in 0..n {
            let phi = 2.0 * PI * (b as f64 + 0.5) / n as f64;
            let w = Complex64::from_polar(rho, phi);
            let u = center + radius * i * (1.0 + w) / (1.0 - w);
            out.push(if lower { u.conj() } else { u });
        }
    }
    out
}

impl TangentField for SolvedShape {
    fn model(&self) -> ModelKind {
        self.region().model()
    }

    /// For models on the lower half-plane, `u` is reflected and the
    /// derivatives conjugated.
    fn jet(&self, u: Complex64) -> Result<Jet> {
        let lower = self.model().param_domain() == ParamDomain::LowerHalfPlane;
        if (lower && u.im >= 0.0) || (!lower && u.im <= 0.0) {
            return Err(Error::OutsideDomain { u });
        }
        let v = if lower { u.conj() } else { u };
        let t = &self.tables;
        let fix = |d: Complex64| if lower { d.conj() } else { d };
        Ok(Jet {
            theta: t.theta.eval(v)?,
            phi: [t.theta_s.eval(v)?, t.theta_t.eval(v)?, t.theta_c.eval(v)?],
            theta_u: fix(t.theta.deriv(v)?),
            phi_u: [fix(t.theta_s.deriv(v)?), fix(t.theta_t.deriv(v)?), fix(t.theta_c.deriv(v)?)],
        })
    }

    fn grid(&self, n: usize) -> Vec<Complex64> {
        let finite: Vec<f64> = self.anchors.iter().filter_map(|a| a.finite()).collect();
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lower = self.model().param_domain() == ParamDomain::LowerHalfPlane;
        half_plane_grid((lo + hi) / 2.0, ((hi - lo) / 2.0).max(1e-3), n, lower)
    }
}

impl TangentField for FortressField {
    fn model(&self) -> ModelKind {
        ModelKind::Fortress
    }

    fn jet(&self, u: Complex64) -> Result<Jet> {
        if !(u.im > 0.0 && u.im < 1.0) {
            return Err(Error::OutsideDomain { u });
        }
        let j = FortressField::jet(self, u)?;
        Ok(Jet { theta: 1.0, phi: [j.s, j.t, j.c], theta_u: Complex64::new(0.0, 0.0), phi_u: [j.ds, j.dt, j.dc] })
    }

    /// Rows of constant `Im z` across one period `0 ≤ Re z < 2`.
    fn grid(&self, n: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            let im = (a as f64 + 0.5) / n as f64;
            for b in 0..n {
                out.push(Complex64::new(2.0 * (b as f64 + 0.5) / n as f64, im));
            }
        }
        out
    }
}

/// A point of the arctic curve and the facet plane beside it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcticPoint {
    pub u: ExtReal,
    pub x: f64,
    pub y: f64,
    pub h: f64,
}

/// The arc of the arctic curve over the anchor interval `(α_k, α_{k+1})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcticArc {
    pub interval: usize,
    pub facet: FacetPlane,
    pub points: Vec<ArcticPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcticCurve {
    pub arcs: Vec<ArcticArc>,
    /// Tangency points, one per anchor.
    pub tangency: Vec<[f64; 2]>,
}

/// Line forms of the boundary jumps relative to the plane beside `interval`.
fn line_forms(shape: &SolvedShape, interval: usize) -> Vec<[f64; 3]> {
    let planes = shape.planes();
    let model = shape.model();
    let n = planes.len();
    let p0 = planes[interval % n];
    let weighted = |p: &FacetPlane| {
        let th = model.theta_for_slope(p.slope);
        (th, [th * p.slope[0], th * p.slope[1], th * p.intercept])
    };
    (0..n)
        .map(|k| {
            let (tl, pl) = weighted(&planes[k]);
            let (tr, pr) = weighted(&planes[(k + 1) % n]);
            let dth = tl - tr;
            [
                pl[0] - pr[0] - p0.slope[0] * dth,
                pl[1] - pr[1] - p0.slope[1] * dth,
                pl[2] - pr[2] - p0.intercept * dth,
            ]
        })
        .collect()
}

/// Index of the plane on the boundary at `u`, or `None` at an anchor.
fn interval_of(anchors: &[ExtReal], u: ExtReal) -> Option<usize> {
    let n = anchors.len();
    let key = |p: ExtReal| match p {
        Extended::Finite(x) => 2.0 * x.atan(),
        Extended::Infinity => PI,
    };
    let target = key(u);
    (0..n).find_map(|k| {
        let (a, b) = (key(anchors[k]), key(anchors[(k + 1) % n]));
        let inside = if a < b { a < target && target < b } else { target > a || target < b };
        inside.then_some((k + 1) % n)
    })
}

/// Envelope of `Σ L_j / (u − β_j)` in a chart where `u` is finite, made
/// regular at the nearest anchor.
fn envelope_lines(points: &[Option<f64>], forms: &[[f64; 3]], u: f64) -> ([f64; 3], [f64; 3]) {
    let k = points
        .iter()
        .enumerate()
        .filter_map(|(j, p)| p.map(|b| (j, (u - b).abs())))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(j, _)| j)
        .unwrap();
    let bk = points[k].unwrap();
    let mut row1 = forms[k];
    let mut row2 = [0.0; 3];
    for (j, (p, l)) in points.iter().zip(forms).enumerate() {
        let Some(b) = *p else { continue };
        if j == k {
            continue;
        }
        let d = u - b;
        for i in 0..3 {
            row1[i] += (u - bk) * l[i] / d;
            row2[i] += l[i] * (bk - b) / (d * d);
        }
    }
    (row1, row2)
}

/// The arctic point over a boundary parameter, which may be an anchor.
pub fn arctic_point(shape: &SolvedShape, u: ExtReal) -> Result<ArcticPoint> {
    let anchors = &shape.anchors;
    let interval = match interval_of(anchors, u) {
        Some(i) => i,
        None => {
            let k = anchors.iter().position(|a| *a == u).unwrap_or(0);
            (k + 1) % anchors.len()
        }
    };
    let forms = line_forms(shape, interval);
    let bound = anchors.iter().filter_map(|a| a.finite()).fold(1.0, |m: f64, a| m.max(2.0 * a.abs()));
    let (points, v): (Vec<Option<f64>>, f64) = match u {
        Extended::Finite(x) if x.abs() <= bound => (anchors.iter().map(|a| a.finite()).collect(), x),
        _ => {
            // chart v = −1/u
            let chart = |a: &ExtReal| match *a {
                Extended::Infinity => Some(0.0),
                Extended::Finite(0.0) => None,
                Extended::Finite(x) => Some(-1.0 / x),
            };
            let v = match u {
                Extended::Finite(x) => -1.0 / x,
                Extended::Infinity => 0.0,
            };
            (anchors.iter().map(chart).collect(), v)
        }
    };
    let (r1, r2) = envelope_lines(&points, &forms, v);
    let m = Matrix2::new(r1[0], r1[1], r2[0], r2[1]);
    let cond = condition2(&m);
    if cond > MAX_CONDITION {
        return Err(Error::Singular { cond });
    }
    let sol = m.lu().solve(&Vector2::new(-r1[2], -r2[2])).ok_or(Error::Singular { cond })?;
    let p = shape.planes()[interval];
    Ok(ArcticPoint { u, x: sol[0], y: sol[1], h: p.height(sol[0], sol[1]) })
}

fn angle(u: ExtReal) -> f64 {
    match u {
        Extended::Finite(x) => 2.0 * x.atan(),
        Extended::Infinity => PI,
    }
}

fn from_angle(phi: f64) -> ExtReal {
    let wrapped = (phi + PI).rem_euclid(2.0 * PI) - PI;
    if (wrapped.abs() - PI).abs() < 1e-15 {
        Extended::Infinity
    } else {
        Extended::Finite((wrapped / 2.0).tan())
    }
}

/// One arc sampled uniformly in arc length, endpoints at the anchors.
fn sample_arc(shape: &SolvedShape, k: usize, samples: usize) -> Result<ArcticArc> {
    let n = shape.anchors.len();
    let (a, b) = (shape.anchors[k], shape.anchors[(k + 1) % n]);
    let start = angle(a);
    let mut end = angle(b);
    if end <= start {
        end += 2.0 * PI;
    }
    let samples = samples.max(2);
    let dense = 8 * samples;
    let param = |i: usize, m: usize| start + (end - start) * i as f64 / (m - 1) as f64;
    let eval = |phi: f64, i: usize, m: usize| {
        let u = if i == 0 { a } else if i == m - 1 { b } else { from_angle(phi) };
        arctic_point(shape, u)
    };
    let coarse: Vec<ArcticPoint> = (0..dense).map(|i| eval(param(i, dense), i, dense)).collect::<Result<_>>()?;
    let mut length = vec![0.0];
    for w in coarse.windows(2) {
        let d = (w[1].x - w[0].x).hypot(w[1].y - w[0].y);
        length.push(length.last().unwrap() + d);
    }
    let total = *length.last().unwrap();
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        if i == 0 || i == samples - 1 || total == 0.0 {
            points.push(eval(param(i, samples), i, samples)?);
            continue;
        }
        let target = total * i as f64 / (samples - 1) as f64;
        let j = length.partition_point(|&l| l < target).clamp(1, dense - 1);
        let f = (target - length[j - 1]) / (length[j] - length[j - 1]).max(f64::MIN_POSITIVE);
        let phi = param(j - 1, dense) + f * (param(j, dense) - param(j - 1, dense));
        points.push(arctic_point(shape, from_angle(phi))?);
    }
    Ok(ArcticArc { interval: (k + 1) % n, facet: shape.planes()[(k + 1) % n], points })
}

/// All arcs of the arctic curve, one per anchor interval, in boundary order.
pub fn sample_arctic(shape: &SolvedShape, samples_per_arc: usize) -> Result<ArcticCurve> {
    let n = shape.anchors.len();
    let arcs = (0..n).into_par_iter().map(|k| sample_arc(shape, k, samples_per_arc)).collect::<Result<Vec<_>>>()?;
    let tangency = shape
        .anchors
        .iter()
        .map(|&a| arctic_point(shape, a).map(|p| [p.x, p.y]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ArcticCurve { arcs, tangency })
}

/// Tangent direction of the arctic curve at a parameter, by a one-sided
/// second-order difference in `u`.
pub fn arctic_tangent(shape: &SolvedShape, u: f64, step: f64) -> Result<[f64; 2]> {
    let p = |v: f64| arctic_point(shape, Extended::Finite(v)).map(|q| [q.x, q.y]);
    let (p0, p1, p2) = (p(u)?, p(u + step)?, p(u + 2.0 * step)?);
    let d = [-3.0 * p0[0] + 4.0 * p1[0] - p2[0], -3.0 * p0[1] + 4.0 * p1[1] - p2[1]];
    let norm = d[0].hypot(d[1]);
    Ok([d[0] / norm, d[1] / norm])
}

/// Samples the fortress surface along rows just inside the annulus
/// boundary, tracing the frozen boundary of the rough region.
pub fn fortress_boundary(field: &FortressField, samples: usize, inset: f64) -> Vec<Vec<SurfacePoint>> {
    [inset, 1.0 - inset]
        .iter()
        .map(|&im| {
            (0..samples)
                .into_par_iter()
                .filter_map(|b| surface_point(field, Complex64::new(2.0 * (b as f64 + 0.5) / samples as f64, im)).ok())
                .collect()
        })
        .collect()
}
