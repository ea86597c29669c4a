//! Spectral data of the models: the relation between the two intrinsic
//! coordinates `z` and `w`, the slope maps `z ↦ (s, t)`, the five-vertex
//! weight `θ`, and the fortress field built from Weierstrass σ.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::elliptic::RectLattice;
use crate::error::{Error, Result};
use crate::hplane::{ExtComplex, ExtReal, Extended};

/// Distance below which `z` counts as a branch point of a slope map.
pub const VERTEX_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    Domino,
    Fortress,
    FiveVertex { r: f64 },
    Lozenge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamDomain {
    UpperHalfPlane,
    LowerHalfPlane,
    Annulus,
}

/// A change of corner slope along one side, and the value of `z` at the
/// tangency point where it happens (`None` when the model has no `z`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub from: [f64; 2],
    pub to: [f64; 2],
    pub z: Option<ExtReal>,
}

const DOMINO_DIRS: [[f64; 2]; 4] = [[0.0, 1.0], [1.0, 0.0], [0.0, -1.0], [-1.0, 0.0]];
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
const FV_DIRS: [[f64; 2]; 3] = [[0.0, 1.0], [FRAC_1_SQRT_2, FRAC_1_SQRT_2], [1.0, 0.0]];
const LOZENGE_DIRS: [[f64; 2]; 3] = [[0.0, 1.0], [1.0, 0.0], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]];

impl ModelKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelKind::FiveVertex { r } if !(r > 1.0 && r.is_finite()) => {
                Err(Error::InvalidParameter(format!("five-vertex weight needs r > 1, got {r}")))
            }
            _ => Ok(()),
        }
    }

    pub fn newton_polygon(&self) -> Vec<[f64; 2]> {
        match self {
            ModelKind::Domino => vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            ModelKind::Fortress => vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
            ModelKind::FiveVertex { .. } => vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            ModelKind::Lozenge => vec![[0.0, 0.0], [-1.0, 0.0], [0.0, 1.0]],
        }
    }

    pub fn param_domain(&self) -> ParamDomain {
        match self {
            ModelKind::Domino | ModelKind::Lozenge => ParamDomain::UpperHalfPlane,
            ModelKind::Fortress => ParamDomain::Annulus,
            ModelKind::FiveVertex { .. } => ParamDomain::LowerHalfPlane,
        }
    }

    /// Whether `u ↦ (x, y)` reverses orientation on the parameter domain.
    pub fn orientation_reversing(&self) -> bool {
        !matches!(self, ModelKind::Lozenge)
    }

    /// Number of side labels in one cycle.
    pub fn label_count(&self) -> usize {
        match self {
            ModelKind::Domino | ModelKind::Fortress => 4,
            ModelKind::FiveVertex { .. } | ModelKind::Lozenge => 3,
        }
    }

    /// Unit direction of a side with the given label (1-based), traversed
    /// clockwise with positive length.
    pub fn side_direction(&self, label: u8) -> Option<[f64; 2]> {
        let i = (label as usize).checked_sub(1)?;
        match self {
            ModelKind::Domino => DOMINO_DIRS.get(i).copied(),
            ModelKind::FiveVertex { .. } => FV_DIRS.get(i).copied(),
            ModelKind::Lozenge => LOZENGE_DIRS.get(i).copied(),
            ModelKind::Fortress => None,
        }
    }

    /// The slope changes along a side with the given label.
    pub fn side_transitions(&self, label: u8) -> Vec<Transition> {
        let t = |from: [f64; 2], to: [f64; 2], z: Option<ExtReal>| Transition { from, to, z };
        let fin = |x: f64| Some(Extended::Finite(x));
        match (self, label) {
            (ModelKind::Domino, 1) => vec![t([0.0, 0.0], [1.0, 0.0], fin(0.0))],
            (ModelKind::Domino, 2) => vec![t([1.0, 0.0], [1.0, 1.0], fin(1.0))],
            (ModelKind::Domino, 3) => vec![t([1.0, 1.0], [0.0, 1.0], Some(Extended::Infinity))],
            (ModelKind::Domino, 4) => vec![t([0.0, 1.0], [0.0, 0.0], fin(-1.0))],
            (ModelKind::FiveVertex { r }, 1) => {
                vec![t([0.0, 0.0], [1.0, 0.0], fin(1.0 / (1.0 - r * r)))]
            }
            (ModelKind::FiveVertex { .. }, 2) => vec![
                t([1.0, 0.0], [0.5, 0.5], fin(0.0)),
                t([0.5, 0.5], [0.0, 1.0], fin(1.0)),
            ],
            (ModelKind::FiveVertex { .. }, 3) => {
                vec![t([0.0, 1.0], [0.0, 0.0], Some(Extended::Infinity))]
            }
            (ModelKind::Lozenge, 1) => vec![t([-1.0, 0.0], [0.0, 0.0], None)],
            (ModelKind::Lozenge, 2) => vec![t([0.0, 0.0], [0.0, 1.0], None)],
            (ModelKind::Lozenge, 3) => vec![t([0.0, 1.0], [-1.0, 0.0], None)],
            _ => Vec::new(),
        }
    }

    /// Boundary value of `θ` on an interval carrying the given slope.
    pub fn theta_for_slope(&self, slope: [f64; 2]) -> f64 {
        match self {
            ModelKind::FiveVertex { .. } if slope == [0.5, 0.5] => 2.0 * PI,
            ModelKind::FiveVertex { .. } => PI,
            _ => 1.0,
        }
    }

    /// Slopes a facet may carry: Newton polygon vertices plus, for the five
    /// vertex model, the semi-frozen slope `(1/2, 1/2)`.
    pub fn facet_slopes(&self) -> Vec<[f64; 2]> {
        let mut v = self.newton_polygon();
        if matches!(self, ModelKind::FiveVertex { .. }) {
            v.push([0.5, 0.5]);
        }
        v
    }
}

/// The model, its Newton polygon and parametrization conventions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub newton_polygon: Vec<[f64; 2]>,
    pub domain: ParamDomain,
    pub orientation_reversing: bool,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Result<Self> {
        kind.validate()?;
        Ok(ModelSpec {
            kind,
            newton_polygon: kind.newton_polygon(),
            domain: kind.param_domain(),
            orientation_reversing: kind.orientation_reversing(),
        })
    }
}

fn near_any(z: Complex64, points: &[f64]) -> bool {
    points.iter().any(|&p| (z - p).norm() < VERTEX_TOL)
}

/// Argument in `[0, π]` for a point of the closed upper half-plane.
fn arg_upper(z: Complex64) -> f64 {
    z.im.max(0.0).atan2(z.re)
}

/// Argument in `[-π, 0]` for a point of the closed lower half-plane.
fn arg_lower(z: Complex64) -> f64 {
    (-(-z.im).max(0.0)).atan2(z.re).min(0.0)
}

/// `w = (z + 1) / (z − 1)`, the domino spectral curve `1 + z + w − zw = 0`.
pub fn domino_w_of_z(z: Complex64) -> Result<Complex64> {
    if (z - 1.0).norm() == 0.0 {
        return Err(Error::Pole { at: z });
    }
    Ok((z + 1.0) / (z - 1.0))
}

/// Domino slopes `s = 1 − Arg z / π`, `t = 1 + Arg w / π` with `Arg w ∈ [−π, 0]`.
pub fn domino_slopes(z: Complex64) -> Result<(f64, f64)> {
    if near_any(z, &[-1.0, 0.0, 1.0]) {
        return Err(Error::BoundaryVertex { z });
    }
    if z.im < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::OutsideDomain { u: z });
    }
    let s = 1.0 - arg_upper(z) / PI;
    // Arg w = Arg(z + 1) − Arg(z − 1), exact on the real axis
    let t = 1.0 + (arg_upper(z + 1.0) - arg_upper(z - 1.0)) / PI;
    Ok((s, t))
}

/// `w = (1 − z) / (1 − (1 − r²) z)`, the five-vertex curve
/// `1 − z − w + (1 − r²) z w = 0`.
pub fn fv_w_of_z(z: Complex64, r: f64) -> Result<ExtComplex> {
    ModelKind::FiveVertex { r }.validate()?;
    let den = Complex64::new(1.0, 0.0) - z * (1.0 - r * r);
    if den.norm() == 0.0 {
        return Ok(Extended::Infinity);
    }
    Ok(Extended::Finite((Complex64::new(1.0, 0.0) - z) / den))
}

/// `θ = 2π + Arg(z / (1 − z))` for `z` in the closed lower half-plane.
pub fn fv_theta(z: Complex64) -> Result<f64> {
    if near_any(z, &[0.0, 1.0]) {
        return Err(Error::BoundaryVertex { z });
    }
    if z.im > 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::OutsideDomain { u: z });
    }
    // Arg z − Arg(1 − z) lies in [−π, 0] for z in the closed lower half-plane
    let a = (arg_lower(z) - arg_upper(Complex64::new(1.0, 0.0) - z)).clamp(-PI, 0.0);
    Ok(2.0 * PI + a)
}

/// Five-vertex slopes `t = (π + Arg z)/θ`, `s = (π − Arg w)/θ`.
pub fn fv_slopes(z: Complex64, r: f64) -> Result<(f64, f64)> {
    ModelKind::FiveVertex { r }.validate()?;
    let p = 1.0 / (1.0 - r * r);
    if near_any(z, &[0.0, 1.0, p]) {
        return Err(Error::BoundaryVertex { z });
    }
    let theta = fv_theta(z)?;
    let one = Complex64::new(1.0, 0.0);
    // Arg w = Arg(1 − z) − Arg(1 + (r² − 1) z), lies in [0, π]
    let arg_w =
        (arg_upper(one - z) - arg_lower(one + z * (r * r - 1.0))).clamp(0.0, PI);
    let t = (PI + arg_lower(z)) / theta;
    let s = (PI - arg_w) / theta;
    Ok((s, t))
}

/// Spectral polynomial of the domino model.
pub fn domino_spectral(z: Complex64, w: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) + z + w - z * w
}

/// Spectral polynomial of the five-vertex model.
pub fn fv_spectral(z: Complex64, w: Complex64, r: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - z - w + z * w * (1.0 - r * r)
}

/// Values and `z`-derivatives of the fortress field at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FortressJet {
    pub s: f64,
    pub t: f64,
    pub c: f64,
    pub ds: Complex64,
    pub dt: Complex64,
    pub dc: Complex64,
}

/// The `τ = 1` Aztec fortress field on the annulus `[0, 2] × [0, 1]`.
///
/// With `Λs = log σ(z) + log σ(z+½) − log σ(z+1) − log σ(z+3/2)` and
/// `Λt = log σ(z−½) + log σ(z−2) − log σ(z−1) − log σ(z−3/2)`:
///
/// ```text
/// s = 1 − Im z / 2 − Im Λs / π
/// t = Im Λt / π
/// c = 1 − Im z / 2 + 2 Im Λs / π
/// ```
#[derive(Clone, Debug)]
pub struct FortressField {
    lattice: RectLattice,
}

const S_SHIFTS: [(f64, f64); 4] = [(0.0, 1.0), (0.5, 1.0), (1.0, -1.0), (1.5, -1.0)];
const T_SHIFTS: [(f64, f64); 4] = [(-0.5, 1.0), (-2.0, 1.0), (-1.0, -1.0), (-1.5, -1.0)];

impl Default for FortressField {
    fn default() -> Self {
        FortressField { lattice: RectLattice::square() }
    }
}

impl FortressField {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lattice(&self) -> &RectLattice {
        &self.lattice
    }

    fn check(&self, z: Complex64) -> Result<()> {
        if !(0.0..=1.0).contains(&z.im) || !z.re.is_finite() {
            return Err(Error::OutsideDomain { u: z });
        }
        if z.im == 0.0 {
            let k = 2.0 * z.re;
            if (k - k.round()).abs() < 2.0 * VERTEX_TOL {
                return Err(Error::BoundaryVertex { z });
            }
        }
        Ok(())
    }

    fn combo<F>(&self, z: Complex64, shifts: &[(f64, f64); 4], f: F) -> Result<Complex64>
    where
        F: Fn(&RectLattice, Complex64) -> Result<Complex64>,
    {
        shifts
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, &(d, sign)| Ok(acc + f(&self.lattice, z + d)? * sign))
    }

    /// `(s, t, c)` at `z`.
    pub fn eval(&self, z: Complex64) -> Result<(f64, f64, f64)> {
        self.check(z)?;
        let ls = self.combo(z, &S_SHIFTS, RectLattice::log_sigma)?.im;
        let lt = self.combo(z, &T_SHIFTS, RectLattice::log_sigma)?.im;
        Ok((1.0 - z.im / 2.0 - ls / PI, lt / PI, 1.0 - z.im / 2.0 + 2.0 * ls / PI))
    }

    /// Holomorphic `z`-derivatives `(s_z, t_z, c_z)`.
    pub fn deriv(&self, z: Complex64) -> Result<[Complex64; 3]> {
        self.check(z)?;
        let zs = self.combo(z, &S_SHIFTS, RectLattice::zeta)?;
        let zt = self.combo(z, &T_SHIFTS, RectLattice::zeta)?;
        let i = Complex64::i();
        // ∂_z Im f = f' / (2i) for holomorphic f
        let d_im = -(i * 4.0).inv();
        Ok([d_im - zs / (i * 2.0 * PI), zt / (i * 2.0 * PI), d_im + zs / (i * PI)])
    }

    /// Second holomorphic derivatives.
    pub fn deriv2(&self, z: Complex64) -> Result<[Complex64; 3]> {
        self.check(z)?;
        let ps = self.combo(z, &S_SHIFTS, RectLattice::zeta_deriv)?;
        let pt = self.combo(z, &T_SHIFTS, RectLattice::zeta_deriv)?;
        let i = Complex64::i();
        Ok([-ps / (i * 2.0 * PI), pt / (i * 2.0 * PI), ps / (i * PI)])
    }

    pub fn jet(&self, z: Complex64) -> Result<FortressJet> {
        let (s, t, c) = self.eval(z)?;
        let [ds, dt, dc] = self.deriv(z)?;
        Ok(FortressJet { s, t, c, ds, dt, dc })
    }
}

fn shared_fortress() -> &'static FortressField {
    static FIELD: OnceLock<FortressField> = OnceLock::new();
    FIELD.get_or_init(FortressField::new)
}

/// `(s, t, c)` of the `τ = 1` fortress at `z` in the closed annulus.
pub fn fortress_field(z: Complex64) -> Result<(f64, f64, f64)> {
    shared_fortress().eval(z)
}
