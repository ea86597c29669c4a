//! Solving for the rational map `z(u)` and the tangency anchors.
//!
//! Transitions `0..T` of a region sit at anchors `α_k` on ℝ̂, increasing
//! cyclically. The map `z = B ∏(u − zeros) / ∏(u − poles)` sends each anchor
//! to the model value of its transition, and the intercept data `θc` must
//! have a critical point wherever `z` does. Newton's method runs in gauge
//! coordinates `α_0 = ∞`, `α_{T−2} = −1`, `α_{T−1} = 0`, with the remaining
//! anchors stored as log gaps and `B` as `log |B|`.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hplane::{check_cyclic_order, ExtComplex, ExtReal, Extended, Mobius};
use crate::poly::Poly;
use crate::regions::{BoundaryTables, FacetPlane, PolygonRegion};

/// `z(u) = B ∏(u − a) / ∏(u − b)` over the finite zeros `a` and poles `b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalMap {
    pub b: f64,
    pub zeros: Vec<ExtReal>,
    pub poles: Vec<ExtReal>,
}

fn finite(points: &[ExtReal]) -> Vec<f64> {
    points.iter().filter_map(|p| p.finite()).collect()
}

impl RationalMap {
    pub fn new(b: f64, zeros: Vec<ExtReal>, poles: Vec<ExtReal>) -> Result<Self> {
        if b == 0.0 || !b.is_finite() {
            return Err(Error::DegenerateMap);
        }
        Ok(RationalMap { b, zeros, poles })
    }

    pub fn identity() -> Self {
        RationalMap { b: 1.0, zeros: vec![Extended::Finite(0.0)], poles: vec![Extended::Infinity] }
    }

    pub fn numerator(&self) -> Poly {
        Poly::from_roots(&finite(&self.zeros)).scale(self.b)
    }

    pub fn denominator(&self) -> Poly {
        Poly::from_roots(&finite(&self.poles))
    }

    pub fn degree(&self) -> usize {
        finite(&self.zeros).len().max(finite(&self.poles).len())
    }

    pub fn eval(&self, u: Complex64) -> ExtComplex {
        let d = self.denominator().eval(u);
        if d == Complex64::new(0.0, 0.0) {
            return Extended::Infinity;
        }
        Extended::Finite(self.numerator().eval(u) / d)
    }

    /// Value at a point of ℝ̂.
    pub fn eval_real(&self, u: ExtReal) -> ExtReal {
        match u {
            Extended::Finite(x) => match self.eval(x.into()) {
                Extended::Finite(z) => Extended::Finite(z.re),
                Extended::Infinity => Extended::Infinity,
            },
            Extended::Infinity => {
                let (nz, np) = (finite(&self.zeros).len(), finite(&self.poles).len());
                match nz.cmp(&np) {
                    std::cmp::Ordering::Equal => Extended::Finite(self.b),
                    std::cmp::Ordering::Less => Extended::Finite(0.0),
                    std::cmp::Ordering::Greater => Extended::Infinity,
                }
            }
        }
    }

    /// `N'D − ND'`, whose roots are the critical points.
    pub fn wronskian(&self) -> Poly {
        let (n, d) = (self.numerator(), self.denominator());
        n.deriv().mul(&d).sub(&n.mul(&d.deriv())).trimmed()
    }

    pub fn deriv(&self, u: Complex64) -> ExtComplex {
        let d = self.denominator().eval(u);
        if d == Complex64::new(0.0, 0.0) {
            return Extended::Infinity;
        }
        Extended::Finite(self.wronskian().eval(u) / (d * d))
    }

    /// All finite critical points, with multiplicity.
    pub fn critical_points(&self) -> Vec<Complex64> {
        self.wronskian().roots()
    }

    /// The `count` critical points of largest imaginary part.
    pub fn upper_critical_points(&self, count: usize) -> Vec<Complex64> {
        let mut c = self.critical_points();
        c.sort_by(|a, b| b.im.total_cmp(&a.im));
        c.truncate(count);
        c
    }

    /// `z ∘ m⁻¹`, for `m` preserving the upper half-plane.
    pub fn pushforward(&self, m: &Mobius) -> Result<RationalMap> {
        if !m.preserves_upper() {
            return Err(Error::DegenerateMobius);
        }
        let move_all = |pts: &[ExtReal]| pts.iter().map(|&p| m.apply_real(p)).collect::<Vec<_>>();
        let mut out = RationalMap { b: 1.0, zeros: move_all(&self.zeros), poles: move_all(&self.poles) };
        let probe = Complex64::i();
        let back = m.inverse().apply(probe).finite().ok_or(Error::DegenerateMobius)?;
        let target = self.eval(back).finite().ok_or(Error::DegenerateMap)?;
        let unit = out.eval(probe).finite().ok_or(Error::DegenerateMap)?;
        out.b = (target / unit).re;
        Ok(out)
    }
}

/// Plane data along the boundary together with the value of `z` at each
/// transition.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchingProblem {
    values: Vec<ExtReal>,
    /// `θ_k c_k` on interval `k`.
    g: Vec<f64>,
    sign: f64,
}

/// Initial anchors (transition order) and optionally the constant `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialGuess {
    pub anchors: Vec<ExtReal>,
    pub b: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub fd_step: f64,
    pub continuation_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_iterations: 100, tolerance: 1e-12, fd_step: 1e-7, continuation_steps: 16 }
    }
}

/// Residual norm accepted as a solution.
pub const ACCEPT_RESIDUAL: f64 = 1e-10;

impl MatchingProblem {
    pub fn from_region(region: &PolygonRegion) -> Result<Self> {
        let model = region.model();
        let planes = region.facet_planes()?;
        let values = region
            .transitions()
            .iter()
            .map(|(_, t)| t.z)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidParameter(format!("{model:?} has no spectral map")))?;
        let g = planes.iter().map(|p| model.theta_for_slope(p.slope) * p.intercept).collect();
        let mut problem = MatchingProblem { values, g, sign: 1.0 };
        if problem.len() > 4 {
            problem.sign = problem.orientation_sign();
        }
        Ok(problem)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    /// Number of zeros of `z`, counted on ℝ̂.
    pub fn degree(&self) -> usize {
        self.values.iter().filter(|v| **v == Extended::Finite(0.0)).count()
    }

    /// Number of Newton unknowns in gauge coordinates.
    pub fn unknown_count(&self) -> usize {
        if self.degree() <= 1 {
            0
        } else {
            self.len() - 2
        }
    }

    /// Sign of `B` making `z` increasing on ℝ.
    fn orientation_sign(&self) -> f64 {
        let anchors = self.gauge_anchors(&vec![0.0; self.len() - 2]);
        let map = self.map_for(&anchors, 1.0);
        if map.wronskian().eval_real(-0.5) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn map_for(&self, anchors: &[ExtReal], b: f64) -> RationalMap {
        let pick = |target: ExtReal| -> Vec<ExtReal> {
            anchors.iter().zip(&self.values).filter(|(_, v)| **v == target).map(|(a, _)| *a).collect()
        };
        RationalMap { b, zeros: pick(Extended::Finite(0.0)), poles: pick(Extended::Infinity) }
    }

    /// `(b_k, jump of θc at b_k)` over finite anchors.
    fn jumps(&self, anchors: &[ExtReal]) -> Vec<(f64, f64)> {
        let n = self.len();
        anchors
            .iter()
            .enumerate()
            .filter_map(|(k, a)| a.finite().map(|b| (b, self.g[k] - self.g[(k + 1) % n])))
            .collect()
    }

    fn g_deriv(&self, anchors: &[ExtReal], u: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        self.jumps(anchors).iter().map(|&(b, c)| c / (two_pi_i * (u - b))).sum()
    }

    /// Value mismatches followed by `Re, Im` of `(θc)_u` at the critical
    /// points of `z` in the upper half-plane.
    pub fn residuals(&self, anchors: &[ExtReal], b: f64) -> Result<Vec<f64>> {
        if anchors.len() != self.len() {
            return Err(Error::AnchorCount { expected: self.len(), found: anchors.len() });
        }
        if let Err((first, second)) = check_cyclic_order(anchors) {
            return Err(Error::OrderViolation { first, second });
        }
        let map = self.map_for(anchors, b);
        let mut out = Vec::with_capacity(self.len());
        for (a, v) in anchors.iter().zip(&self.values) {
            if let Extended::Finite(v) = *v {
                if v != 0.0 {
                    match map.eval_real(*a) {
                        Extended::Finite(z) => out.push(z - v),
                        Extended::Infinity => return Err(Error::Pole { at: a.finite().unwrap_or(0.0).into() }),
                    }
                }
            }
        }
        let count = self.degree().saturating_sub(1);
        for c in map.upper_critical_points(count) {
            let g = self.g_deriv(anchors, c);
            out.push(g.re);
            out.push(g.im);
        }
        Ok(out)
    }

    pub fn gauge_anchors(&self, x: &[f64]) -> Vec<ExtReal> {
        let t = self.len();
        let mut al = vec![Extended::Infinity; t];
        al[t - 1] = Extended::Finite(0.0);
        al[t - 2] = Extended::Finite(-1.0);
        let mut cur = -1.0;
        for (i, k) in (1..t - 2).rev().enumerate() {
            cur -= x[1 + i].exp();
            al[k] = Extended::Finite(cur);
        }
        al
    }

    fn gauge_b(&self, x: &[f64]) -> f64 {
        self.sign * x[0].exp()
    }

    fn eval_x(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.residuals(&self.gauge_anchors(x), self.gauge_b(x))
    }

    /// The Möbius map taking anchors to the standard gauge.
    pub fn gauge_mobius(&self, anchors: &[ExtReal]) -> Result<Mobius> {
        let t = self.len();
        Mobius::from_three_points(
            [anchors[t - 2], anchors[t - 1], anchors[0]],
            [Extended::Finite(-1.0), Extended::Finite(0.0), Extended::Infinity],
        )
    }

    /// Gauge coordinates of arbitrary anchors and `B`.
    pub fn gauge_coords(&self, anchors: &[ExtReal], b: f64) -> Result<Vec<f64>> {
        let m = self.gauge_mobius(anchors)?;
        let moved: Vec<ExtReal> = anchors.iter().map(|&a| m.apply_real(a)).collect();
        let map = self.map_for(anchors, b).pushforward(&m)?;
        let t = self.len();
        let mut x = vec![map.b.abs().ln()];
        for k in (1..t - 2).rev() {
            let (Extended::Finite(lo), Extended::Finite(hi)) = (moved[k], moved[k + 1]) else {
                return Err(Error::OrderViolation { first: k, second: k + 1 });
            };
            if hi <= lo {
                return Err(Error::OrderViolation { first: k, second: k + 1 });
            }
            x.push((hi - lo).ln());
        }
        Ok(x)
    }

    /// `B` fitted to the first finite nonzero value at a finite anchor.
    fn fit_b(&self, anchors: &[ExtReal]) -> Result<f64> {
        let unit = self.map_for(anchors, 1.0);
        for (a, v) in anchors.iter().zip(&self.values) {
            if let (Extended::Finite(a), Extended::Finite(v)) = (*a, *v) {
                if v != 0.0 {
                    if let Extended::Finite(z) = unit.eval_real(Extended::Finite(a)) {
                        if z != 0.0 {
                            return Ok(v / z);
                        }
                    }
                }
            }
        }
        Err(Error::DegenerateMap)
    }

    /// The problem whose solution is the given gauge point, with plane data
    /// adjusted to satisfy the critical-point conditions there.
    fn start_problem(&self, x: &[f64]) -> Result<MatchingProblem> {
        let anchors = self.gauge_anchors(x);
        let map = self.map_for(&anchors, self.gauge_b(x));
        let values = anchors
            .iter()
            .zip(&self.values)
            .map(|(a, v)| match *v {
                Extended::Finite(v) if v != 0.0 => map.eval_real(*a),
                other => other,
            })
            .collect();
        let crit = map.upper_critical_points(self.degree().saturating_sub(1));
        let n = self.len();
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let mut m = DMatrix::<f64>::zeros(2 * crit.len(), n);
        for (row, c) in crit.iter().enumerate() {
            for (k, a) in anchors.iter().enumerate() {
                if let Extended::Finite(b) = *a {
                    let w = 1.0 / (two_pi_i * (c - b));
                    // jump g_k − g_{k+1}
                    m[(2 * row, k)] += w.re;
                    m[(2 * row + 1, k)] += w.im;
                    m[(2 * row, (k + 1) % n)] -= w.re;
                    m[(2 * row + 1, (k + 1) % n)] -= w.im;
                }
            }
        }
        let g = DVector::from_vec(self.g.clone());
        let g0 = if crit.is_empty() {
            g
        } else {
            let correction = m.clone().svd(true, true).solve(&(&m * &g), 1e-14).map_err(|_| Error::Singular { cond: f64::INFINITY })?;
            g - correction
        };
        Ok(MatchingProblem { values, g: g0.iter().copied().collect(), sign: self.sign })
    }

    fn lerp(&self, other: &MatchingProblem, lambda: f64) -> MatchingProblem {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| match (*a, *b) {
                (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + lambda * (b - a)),
                _ => *b,
            })
            .collect();
        let g = self.g.iter().zip(&other.g).map(|(a, b)| a + lambda * (b - a)).collect();
        MatchingProblem { values, g, sign: self.sign }
    }

    /// Damped Newton in gauge coordinates; returns the point, iteration count
    /// and final residual norm.
    fn newton(&self, mut x: Vec<f64>, opts: &SolverOptions) -> (Vec<f64>, usize, f64) {
        let norm = |f: &[f64]| f.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut f = match self.eval_x(&x) {
            Ok(f) => f,
            Err(_) => return (x, 0, f64::INFINITY),
        };
        let mut fnorm = norm(&f);
        for it in 0..opts.max_iterations {
            if fnorm < opts.tolerance {
                return (x, it, fnorm);
            }
            let nx = x.len();
            let mut jac = DMatrix::<f64>::zeros(f.len(), nx);
            for j in 0..nx {
                let h = opts.fd_step * x[j].abs().max(1.0);
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[j] += h;
                xm[j] -= h;
                match (self.eval_x(&xp), self.eval_x(&xm)) {
                    (Ok(fp), Ok(fm)) if fp.len() == f.len() && fm.len() == f.len() => {
                        for i in 0..f.len() {
                            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
                        }
                    }
                    _ => return (x, it, fnorm),
                }
            }
            let rhs = -DVector::from_vec(f.clone());
            let Ok(dx) = jac.svd(true, true).solve(&rhs, 1e-14) else {
                return (x, it, fnorm);
            };
            let mut lambda = 1.0;
            let mut accepted = None;
            while lambda > 1e-4 {
                let xn: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, d)| a + lambda * d).collect();
                if let Ok(fnew) = self.eval_x(&xn) {
                    let n = norm(&fnew);
                    if fnew.len() == f.len() && n < (1.0 - 1e-4 * lambda) * fnorm {
                        accepted = Some((xn, fnew, n));
                        break;
                    }
                }
                lambda /= 2.0;
            }
            match accepted {
                Some((xn, fnew, n)) => {
                    x = xn;
                    f = fnew;
                    fnorm = n;
                }
                None => return (x, it, fnorm),
            }
        }
        (x, opts.max_iterations, fnorm)
    }

    /// Continuation from the problem solved exactly by `x0` to `self`.
    fn homotopy(&self, x0: Vec<f64>, opts: &SolverOptions) -> Result<(Vec<f64>, usize, f64)> {
        let start = self.start_problem(&x0)?;
        let mut x = x0;
        let mut lambda = 0.0;
        let mut step = 1.0 / opts.continuation_steps.max(1) as f64;
        let mut total = 0;
        while lambda < 1.0 {
            let next = (lambda + step).min(1.0);
            let (xn, it, res) = start.lerp(self, next).newton(x.clone(), opts);
            total += it;
            if res < ACCEPT_RESIDUAL {
                x = xn;
                lambda = next;
                step *= 1.5;
            } else {
                step /= 2.0;
                if step < 1e-6 {
                    return Err(Error::NonConvergence { iterations: total, residual: res });
                }
            }
        }
        let (x, it, res) = self.newton(x, opts);
        Ok((x, total + it, res))
    }
}

/// A region together with its solved map and boundary tables.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolvedShape {
    region: PolygonRegion,
    planes: Vec<FacetPlane>,
    pub anchors: Vec<ExtReal>,
    pub map: RationalMap,
    #[serde(skip)]
    pub tables: BoundaryTables,
    pub residual_norm: f64,
    pub iterations: usize,
}

impl SolvedShape {
    fn build(region: &PolygonRegion, anchors: Vec<ExtReal>, map: RationalMap, residual_norm: f64, iterations: usize) -> Result<Self> {
        let tables = region.boundary_tables(&anchors)?;
        Ok(SolvedShape { region: region.clone(), planes: region.facet_planes()?, anchors, map, tables, residual_norm, iterations })
    }

    pub fn region(&self) -> &PolygonRegion {
        &self.region
    }

    pub fn planes(&self) -> &[FacetPlane] {
        &self.planes
    }

    /// Anchors listed in decreasing order ending at the anchor of
    /// transition 0: entry `i` is `α_{T−1−i}`.
    pub fn descending_anchors(&self) -> Vec<ExtReal> {
        self.anchors.iter().rev().copied().collect()
    }

    /// Critical points of `z` in the upper half-plane.
    pub fn critical_points(&self) -> Vec<Complex64> {
        let problem_degree = self.map.zeros.len();
        self.map.upper_critical_points(problem_degree.saturating_sub(1))
    }

    /// `|(θc)_u|` at each upper critical point, from the boundary tables.
    pub fn critical_residuals(&self) -> Result<Vec<f64>> {
        self.critical_points().iter().map(|&c| self.tables.theta_c.deriv(c).map(|g| g.norm())).collect()
    }

    /// The same shape in the coordinate `u' = m(u)`.
    pub fn regauge(&self, m: &Mobius) -> Result<SolvedShape> {
        let anchors = self.anchors.iter().map(|&a| m.apply_real(a)).collect();
        let map = self.map.pushforward(m)?;
        SolvedShape::build(&self.region, anchors, map, self.residual_norm, self.iterations)
    }
}

/// Solves for anchors and map.
///
/// Degree-one regions use `z = u` directly. Otherwise Newton runs from the
/// initial guess (or the evenly spaced gauge point) and falls back to a
/// homotopy from a problem solved exactly by the starting point.
pub fn solve_parameters(region: &PolygonRegion, init: Option<&InitialGuess>, opts: &SolverOptions) -> Result<SolvedShape> {
    let problem = MatchingProblem::from_region(region)?;
    if problem.degree() <= 1 {
        let anchors = problem.values().to_vec();
        if let Err((first, second)) = check_cyclic_order(&anchors) {
            return Err(Error::OrderViolation { first, second });
        }
        let map = problem.map_for(&anchors, 1.0);
        let res = problem.residuals(&anchors, 1.0)?;
        let norm = res.iter().map(|v| v * v).sum::<f64>().sqrt();
        return SolvedShape::build(region, anchors, map, norm, 0);
    }

    if let Some(guess) = init {
        if guess.anchors.len() != problem.len() {
            return Err(Error::AnchorCount { expected: problem.len(), found: guess.anchors.len() });
        }
        if let Err((first, second)) = check_cyclic_order(&guess.anchors) {
            return Err(Error::OrderViolation { first, second });
        }
        let b = match guess.b {
            Some(b) => b,
            None => problem.fit_b(&guess.anchors)?,
        };
        let res = problem.residuals(&guess.anchors, b)?;
        let norm = res.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < ACCEPT_RESIDUAL {
            let map = problem.map_for(&guess.anchors, b);
            return SolvedShape::build(region, guess.anchors.clone(), map, norm, 0);
        }
    }

    let x0 = match init {
        Some(guess) => {
            let b = match guess.b {
                Some(b) => b,
                None => problem.fit_b(&guess.anchors)?,
            };
            problem.gauge_coords(&guess.anchors, b)?
        }
        None => vec![0.0; problem.unknown_count()],
    };
    let (mut x, mut iterations, mut res) = problem.newton(x0.clone(), opts);
    if res >= ACCEPT_RESIDUAL {
        let (xh, ih, rh) = problem.homotopy(x0, opts)?;
        x = xh;
        iterations += ih;
        res = rh;
    }
    if res >= ACCEPT_RESIDUAL {
        return Err(Error::NonConvergence { iterations, residual: res });
    }
    let anchors = problem.gauge_anchors(&x);
    let map = problem.map_for(&anchors, problem.gauge_b(&x));
    SolvedShape::build(region, anchors, map, res, iterations)
}

/// Solves a sequence of regions, each starting from the previous solution.
pub fn solve_continuation(regions: &[PolygonRegion], opts: &SolverOptions) -> Result<Vec<SolvedShape>> {
    let mut out: Vec<SolvedShape> = Vec::with_capacity(regions.len());
    for region in regions {
        let init = out.last().map(|s| InitialGuess { anchors: s.anchors.clone(), b: None });
        out.push(solve_parameters(region, init.as_ref(), opts)?);
    }
    Ok(out)
}

/// Lower bound `(3+2√2) m1 − 2(1+√2)` on `m2` for a tileable octagon.
pub fn octagon_bound(m1: f64) -> f64 {
    (3.0 + 2.0 * SQRT_2) * m1 - 2.0 * (1.0 + SQRT_2)
}

/// `m1 ≥ m2 ≥ (3+2√2) m1 − 2(1+√2)`.
pub fn octagon_feasible(m1: f64, m2: f64) -> bool {
    m1 >= m2 && m2 >= octagon_bound(m1)
}

/// Closed-form octagon anchors `a_1, …, a_8` in decreasing order.
pub fn closed_form_octagon(m1: f64, m2: f64) -> Result<Vec<ExtReal>> {
    if m1 == m2 {
        return Err(Error::DegenerateFamily("octagon anchors need m1 ≠ m2".into()));
    }
    if !octagon_feasible(m1, m2) {
        return Err(Error::Infeasible(format!("octagon (m1, m2) = ({m1}, {m2})")));
    }
    let s = 2.0 - m1 - m2;
    let d = m1 - m2;
    let a = vec![
        0.0,
        -1.0,
        -SQRT_2,
        -(1.0 + SQRT_2) * s / (2.0 * (1.0 - m2)),
        -(4.0 - 2.0 * SQRT_2) * (1.0 - m2) / d,
        -s / d,
        -SQRT_2 * s / d,
    ];
    let mut out: Vec<ExtReal> = a.into_iter().map(Extended::Finite).collect();
    out.push(Extended::Infinity);
    if let Err((i, j)) = check_cyclic_order(&out.iter().rev().copied().collect::<Vec<_>>()) {
        return Err(Error::Infeasible(format!("anchors {i}, {j} out of order")));
    }
    Ok(out)
}

/// Octagon map constant `B = −a_6 / a_4`, giving `z(0) = −1`.
pub fn octagon_b(anchors: &[ExtReal]) -> Option<f64> {
    Some(-anchors.get(5)?.finite()? / anchors.get(3)?.finite()?)
}

/// Upper bound `1 + 2/m` on the weight `r` for the five-vertex hexagon.
///
/// At the bound the anchors `a_3, …, a_6` meet at `−1` and the three
/// facets between them close up.
pub fn fv_hexagon_bound(m: f64) -> f64 {
    1.0 + 2.0 / m
}

pub fn fv_hexagon_feasible(m: f64, r: f64) -> bool {
    m > 0.0 && r > 1.0 && r < fv_hexagon_bound(m)
}

fn fv_hexagon_check(m: f64, r: f64) -> Result<()> {
    if !(m > 0.0) || !(r > 1.0) {
        return Err(Error::InvalidParameter(format!("hexagon needs m > 0 and r > 1, got m = {m}, r = {r}")));
    }
    if !fv_hexagon_feasible(m, r) {
        return Err(Error::Infeasible(format!(
            "five-vertex hexagon (m, r) = ({m}, {r}) violates r < 1 + 2/m = {:.6}",
            fv_hexagon_bound(m)
        )));
    }
    Ok(())
}

/// Closed-form anchors `a_1, …, a_8` of the five-vertex hexagon in the
/// gauge `a_1 = 0`, `a_8 = ∞`, `a_4 a_5 = 1`.
///
/// With `k = m/(m+2)`: `a_2 = −√(k/r)`, `a_3 = −√(kr)`,
/// `a_4 = −(1+r)/(2√r) · √(m(m+2))/(m+1)`, and `a_{9−i} = 1/a_i`.
pub fn closed_form_fv_hexagon(m: f64, r: f64) -> Result<Vec<ExtReal>> {
    fv_hexagon_check(m, r)?;
    let k = m / (m + 2.0);
    let a2 = -(k / r).sqrt();
    let a3 = -(k * r).sqrt();
    let a4 = -(1.0 + r) / (2.0 * r.sqrt()) * (m * (m + 2.0)).sqrt() / (m + 1.0);
    let mut out: Vec<ExtReal> =
        [0.0, a2, a3, a4, 1.0 / a4, 1.0 / a3, 1.0 / a2].into_iter().map(Extended::Finite).collect();
    out.push(Extended::Infinity);
    Ok(out)
}

/// Solves the five-vertex hexagon, rejecting weights past the bound.
pub fn solve_fv_hexagon(m: f64, r: f64, opts: &SolverOptions) -> Result<SolvedShape> {
    fv_hexagon_check(m, r)?;
    solve_parameters(&PolygonRegion::fv_hexagon(m, r)?, None, opts)
}

/// Solves the octagon, rejecting parameters without ordered anchors.
pub fn solve_octagon(m1: f64, m2: f64, opts: &SolverOptions) -> Result<SolvedShape> {
    if !octagon_feasible(m1, m2) {
        return Err(Error::Infeasible(format!(
            "octagon (m1, m2) = ({m1}, {m2}) violates m1 ≥ m2 ≥ (3+2√2)m1 − 2(1+√2) = {:.6}",
            octagon_bound(m1)
        )));
    }
    solve_parameters(&PolygonRegion::octagon(m1, m2)?, None, opts)
}

/// Transition-order anchors from a decreasing list `a_1, …, a_T`.
pub fn from_descending(a: &[ExtReal]) -> Vec<ExtReal> {
    a.iter().rev().copied().collect()
}
