//! Harmonic functions on the upper half-plane with piecewise-constant
//! boundary values, and real Möbius maps acting on the closed half-plane.
//!
//! A [`BoundaryData`] with breakpoints `b_1 < … < b_k` and values
//! `v_0, …, v_k` represents
//!
//! ```text
//! H(u) = v_k + (1/π) Σ_j (v_{j-1} - v_j) · Arg(u - b_j)
//! ```
//!
//! which equals `v_j` on `(b_j, b_{j+1})`, `v_0` on `(-∞, b_1)` and `v_k` on
//! `(b_k, ∞)`. A jump at infinity is encoded by `v_0 != v_k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Distance below which a point counts as sitting on a breakpoint.
pub const BREAKPOINT_TOL: f64 = 1e-12;

/// A value that may be the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    Infinity,
}

/// A point of the extended real line ℝ̂.
pub type ExtReal = Extended<f64>;
/// A point of the Riemann sphere.
pub type ExtComplex = Extended<Complex64>;

impl<T: Copy> Extended<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        Extended::Finite(x)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtRealRepr {
    Num(f64),
    Tag(String),
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(x) => s.serialize_f64(*x),
            Extended::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ExtRealRepr::deserialize(d)? {
            ExtRealRepr::Num(x) => Ok(Extended::Finite(x)),
            ExtRealRepr::Tag(t) if t == "inf" || t == "infinity" => Ok(Extended::Infinity),
            ExtRealRepr::Tag(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {t:?}"
            ))),
        }
    }
}

/// Checks that `points` run once around ℝ̂ in increasing direction.
///
/// On failure returns the indices of the first offending consecutive pair.
pub fn check_cyclic_order(points: &[ExtReal]) -> std::result::Result<(), (usize, usize)> {
    let n = points.len();
    if n < 2 {
        return Ok(());
    }
    let mut wraps = 0;
    for i in 0..n {
        let j = (i + 1) % n;
        match (points[i], points[j]) {
            (Extended::Infinity, Extended::Infinity) => return Err((i, j)),
            (Extended::Finite(a), Extended::Finite(b)) => {
                if a == b {
                    return Err((i, j));
                }
                if b < a {
                    wraps += 1;
                }
            }
            // passing through ∞ is the wrap
            (Extended::Finite(_), Extended::Infinity) => wraps += 1,
            (Extended::Infinity, Extended::Finite(_)) => {}
        }
        if wraps > 1 {
            return Err((i, j));
        }
    }
    Ok(())
}

/// Piecewise-constant boundary values on ℝ and their harmonic extension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl BoundaryData {
    /// `values[j]` is the value on `(b_j, b_{j+1})`, with `values[0]` on
    /// `(-∞, b_1)` and the last value on `(b_k, ∞)`.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidBoundaryData("need one more value than breakpoints"));
        }
        if breakpoints.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::InvalidBoundaryData("non-finite entry"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBoundaryData("breakpoints must be strictly increasing"));
        }
        Ok(BoundaryData { breakpoints, values })
    }

    pub fn constant(v: f64) -> Self {
        BoundaryData { breakpoints: Vec::new(), values: vec![v] }
    }

    /// Builds data from arcs of ℝ̂: `arc_values[j]` is the value on the arc
    /// running from `points[j]` to `points[j+1]` (cyclically) in increasing
    /// direction. One of the points may be ∞.
    pub fn from_arcs(points: &[ExtReal], arc_values: &[f64]) -> Result<Self> {
        let n = points.len();
        if n == 0 || arc_values.len() != n {
            return Err(Error::InvalidBoundaryData("one value per arc required"));
        }
        if check_cyclic_order(points).is_err() {
            return Err(Error::InvalidBoundaryData("arc endpoints out of cyclic order"));
        }
        // the arc that contains or ends at ∞
        let wrap = (0..n)
            .find(|&i| match (points[i], points[(i + 1) % n]) {
                (_, Extended::Infinity) => true,
                (Extended::Finite(a), Extended::Finite(b)) => b <= a,
                _ => false,
            })
            .unwrap_or(n - 1);
        let mut breakpoints = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n + 1);
        let inf_index = points.iter().position(Extended::is_infinite);
        match inf_index {
            Some(i) => {
                // arcs (p_{i-1}, ∞) and (∞, p_{i+1})
                values.push(arc_values[i]);
                for step in 1..n {
                    let j = (i + step) % n;
                    breakpoints.push(points[j].finite().unwrap());
                    values.push(arc_values[j]);
                }
            }
            None => {
                values.push(arc_values[wrap]);
                for step in 1..=n {
                    let j = (wrap + step) % n;
                    breakpoints.push(points[j].finite().unwrap());
                    values.push(arc_values[j]);
                }
            }
        }
        BoundaryData::new(breakpoints, values)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Pairs `(b_j, v_{j-1} - v_j)`: the jump seen when crossing `b_j`
    /// from left to right, with sign as it enters the harmonic-measure sum.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breakpoints
            .iter()
            .enumerate()
            .map(move |(j, &b)| (b, self.values[j] - self.values[j + 1]))
    }

    fn check_off_breakpoints(&self, u: Complex64) -> bool {
        self.breakpoints.iter().all(|&b| (u - b).norm() >= BREAKPOINT_TOL)
    }

    /// The harmonic extension `H(u)` for `Im u >= 0`.
    ///
    /// On the real axis the boundary value is returned exactly.
    pub fn eval(&self, u: Complex64) -> Result<f64> {
        if u.im < 0.0 || !u.re.is_finite() || !u.im.is_finite() {
            return Err(Error::OutsideDomain { u });
        }
        if !self.check_off_breakpoints(u) {
            return Err(Error::UndefinedBoundaryPoint { u: u.re });
        }
        if u.im == 0.0 {
            let j = self.breakpoints.partition_point(|&b| b < u.re);
            return Ok(self.values[j]);
        }
        let last = *self.values.last().unwrap();
        let sum: f64 = self.jumps().map(|(b, c)| c * (u.im).atan2(u.re - b)).sum();
        Ok(last + sum / PI)
    }

    /// The holomorphic derivative `H_u = Σ c_j / (2πi (u - b_j))`, so that
    /// `∂_x H = 2 Re H_u`.
    pub fn deriv(&self, u: Complex64) -> Result<Complex64> {
        if !self.check_off_breakpoints(u) {
            return Err(Error::Pole { at: u });
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        Ok(self.jumps().map(|(b, c)| c / (two_pi_i * (u - b))).sum())
    }

    /// Second holomorphic derivative `H_uu`.
    pub fn deriv2(&self, u: Complex64) -> Result<Complex64> {
        if !self.check_off_breakpoints(u) {
            return Err(Error::Pole { at: u });
        }
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        Ok(-self
            .jumps()
            .map(|(b, c)| c / (two_pi_i * (u - b) * (u - b)))
            .sum::<Complex64>())
    }

    /// Data `D'` with `D'(M(u)) = D(u)`, for `M` preserving the upper half-plane.
    pub fn pushforward(&self, m: &Mobius) -> Result<Self> {
        if !m.preserves_upper() {
            return Err(Error::DegenerateMobius);
        }
        let k = self.breakpoints.len();
        if k == 0 {
            return Ok(self.clone());
        }
        let mut points: Vec<ExtReal> =
            self.breakpoints.iter().map(|&b| m.apply_real(b.into())).collect();
        points.push(m.apply_real(Extended::Infinity));
        let mut arcs: Vec<f64> = self.values[1..].to_vec();
        arcs.push(self.values[0]);
        BoundaryData::from_arcs(&points, &arcs)
    }
}

/// A real Möbius map `u ↦ (a u + b) / (c u + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det() == 0.0 || !m.det().is_finite() {
            return Err(Error::DegenerateMobius);
        }
        Ok(m)
    }

    pub const fn identity() -> Self {
        Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// `u ↦ λ u + μ`.
    pub fn affine(lambda: f64, mu: f64) -> Result<Self> {
        Mobius::new(lambda, mu, 0.0, 1.0)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Positive determinant: maps the upper half-plane to itself.
    pub fn preserves_upper(&self) -> bool {
        self.det() > 0.0
    }

    pub fn apply(&self, u: Complex64) -> ExtComplex {
        let den = u * self.c + self.d;
        if den == Complex64::new(0.0, 0.0) {
            Extended::Infinity
        } else {
            Extended::Finite((u * self.a + self.b) / den)
        }
    }

    pub fn apply_real(&self, u: ExtReal) -> ExtReal {
        match u {
            Extended::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    Extended::Infinity
                } else {
                    Extended::Finite((self.a * x + self.b) / den)
                }
            }
            Extended::Infinity if self.c == 0.0 => Extended::Infinity,
            Extended::Infinity => Extended::Finite(self.a / self.c),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }.normalized()
    }

    /// Rescaled to `|det| = 1`.
    pub fn normalized(&self) -> Mobius {
        let s = self.det().abs().sqrt();
        Mobius { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    /// The map sending `p[i]` to `q[i]` for `i = 0, 1, 2`.
    ///
    /// The result is normalized to `|det| = 1`; its determinant is negative
    /// when the two triples have opposite cyclic orientation.
    pub fn from_three_points(p: [ExtReal; 3], q: [ExtReal; 3]) -> Result<Mobius> {
        let s = to_zero_one_infinity(p)?;
        let t = to_zero_one_infinity(q)?;
        let m = t.inverse().compose(&s);
        if m.det() == 0.0 || !m.det().is_finite() {
            return Err(Error::DegenerateMobius);
        }
        Ok(m.normalized())
    }
}

/// The map sending `(p, q, r)` to `(0, 1, ∞)`.
fn to_zero_one_infinity([p, q, r]: [ExtReal; 3]) -> Result<Mobius> {
    if p == q || q == r || p == r {
        return Err(Error::DegenerateMobius);
    }
    use Extended::{Finite, Infinity};
    let m = match (p, q, r) {
        (Infinity, Finite(q), Finite(r)) => Mobius { a: 0.0, b: q - r, c: 1.0, d: -r },
        (Finite(p), Infinity, Finite(r)) => Mobius { a: 1.0, b: -p, c: 1.0, d: -r },
        (Finite(p), Finite(q), Infinity) => Mobius { a: 1.0, b: -p, c: 0.0, d: q - p },
        (Finite(p), Finite(q), Finite(r)) => Mobius {
            a: q - r,
            b: -p * (q - r),
            c: q - p,
            d: -r * (q - p),
        },
        _ => return Err(Error::DegenerateMobius),
    };
    if m.det() == 0.0 {
        return Err(Error::DegenerateMobius);
    }
    Ok(m)
}
