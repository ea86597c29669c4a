//! Jacobi θ₁ and Weierstrass σ, ζ on a rectangular lattice.
//!
//! The lattice has half-periods `ω1 > 0` and `ω3 = i·ω3'`. With
//! `v = π z / (2 ω1)` and nome `q = exp(iπ ω3/ω1)`:
//!
//! ```text
//! σ(z) = (2ω1/π) · exp(η1 z² / (2ω1)) · θ1(v) / θ1'(0)
//! ζ(z) = η1 z / ω1 + (π / (2ω1)) · θ1'(v) / θ1(v)
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 500;

fn check_nome(q: Complex64) -> Result<()> {
    let modulus = q.norm();
    if modulus.is_nan() || modulus >= 1.0 {
        return Err(Error::NomeDomain { modulus });
    }
    Ok(())
}

/// `θ1(v)` and its first three `v`-derivatives.
pub fn theta1_jet(v: Complex64, q: Complex64) -> Result<[Complex64; 4]> {
    check_nome(q)?;
    if q.norm() == 0.0 {
        return Ok([Complex64::new(0.0, 0.0); 4]);
    }
    let ln_q = q.ln();
    let growth = v.im.abs();
    let mut jet = [Complex64::new(0.0, 0.0); 4];
    for n in 0..MAX_TERMS {
        let k = (2 * n + 1) as f64;
        let e = (n as f64 + 0.5).powi(2);
        let coef = (ln_q * e).exp() * if n % 2 == 0 { 2.0 } else { -2.0 };
        let (s, c) = ((v * k).sin(), (v * k).cos());
        jet[0] += coef * s;
        jet[1] += coef * c * k;
        jet[2] -= coef * s * (k * k);
        jet[3] -= coef * c * (k * k * k);
        // |sin|, |cos| <= cosh(Im) <= e^{|Im|}; bound the next term of every series
        let kn = k + 2.0;
        let next = ((n as f64 + 1.5).powi(2) * ln_q.re + kn * growth).exp() * 2.0 * kn.powi(3);
        let scale = jet.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if next < 1e-18 * scale || next < 1e-300 {
            break;
        }
    }
    Ok(jet)
}

/// The q-series for `θ1(v)`, truncated adaptively.
pub fn theta1(v: Complex64, q: Complex64) -> Result<Complex64> {
    Ok(theta1_jet(v, q)?[0])
}

/// The first `terms` terms of the θ1 series, for truncation checks.
pub fn theta1_partial(v: Complex64, q: Complex64, terms: usize) -> Result<Complex64> {
    check_nome(q)?;
    let ln_q = q.ln();
    Ok((0..terms)
        .map(|n| {
            let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
            (ln_q * (n as f64 + 0.5).powi(2)).exp() * sign * (v * (2 * n + 1) as f64).sin()
        })
        .sum())
}

/// A rectangular period lattice with half-periods `ω1` and `i·ω3'`.
#[derive(Clone, Debug, PartialEq)]
pub struct RectLattice {
    omega1: f64,
    omega3_im: f64,
    nome: f64,
    eta1: f64,
    eta3: Complex64,
    theta1_prime0: f64,
}

impl RectLattice {
    pub fn new(omega1: f64, omega3_im: f64) -> Result<Self> {
        if !(omega1 > 0.0 && omega3_im > 0.0 && omega1.is_finite() && omega3_im.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "half-periods must be positive, got ω1 = {omega1}, ω3 = {omega3_im}i"
            )));
        }
        let nome = (-PI * omega3_im / omega1).exp();
        let q = Complex64::new(nome, 0.0);
        let jet0 = theta1_jet(Complex64::new(0.0, 0.0), q)?;
        let theta1_prime0 = jet0[1].re;
        let eta1 = -(PI * PI / (12.0 * omega1)) * jet0[3].re / theta1_prime0;
        let mut lattice = RectLattice {
            omega1,
            omega3_im,
            nome,
            eta1,
            eta3: Complex64::new(0.0, 0.0),
            theta1_prime0,
        };
        // evaluated directly so that the Legendre relation is a real check
        lattice.eta3 = lattice.zeta(Complex64::new(0.0, omega3_im))?;
        Ok(lattice)
    }

    /// The lattice generated by 2 and 2i.
    pub fn square() -> Self {
        RectLattice::new(1.0, 1.0).expect("unit half-periods are valid")
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega3(&self) -> Complex64 {
        Complex64::new(0.0, self.omega3_im)
    }

    pub fn nome(&self) -> f64 {
        self.nome
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn eta3(&self) -> Complex64 {
        self.eta3
    }

    /// `|η1 ω3 − η3 ω1 − iπ/2|`.
    pub fn legendre_residual(&self) -> f64 {
        (self.omega3() * self.eta1 - self.eta3 * self.omega1 - Complex64::new(0.0, PI / 2.0))
            .norm()
    }

    fn v(&self, z: Complex64) -> Complex64 {
        z * (PI / (2.0 * self.omega1))
    }

    fn q(&self) -> Complex64 {
        Complex64::new(self.nome, 0.0)
    }

    fn on_lattice(&self, z: Complex64) -> bool {
        let a = z.re / (2.0 * self.omega1);
        let b = z.im / (2.0 * self.omega3_im);
        let tol = 1e-14 * (1.0 + z.norm());
        ((a - a.round()) * 2.0 * self.omega1).abs() < tol
            && ((b - b.round()) * 2.0 * self.omega3_im).abs() < tol
    }

    pub fn sigma(&self, z: Complex64) -> Complex64 {
        let th = theta1(self.v(z), self.q()).expect("lattice nome is valid");
        (z * z * (self.eta1 / (2.0 * self.omega1))).exp() * th * (2.0 * self.omega1 / PI)
            / self.theta1_prime0
    }

    pub fn zeta(&self, z: Complex64) -> Result<Complex64> {
        if self.on_lattice(z) {
            return Err(Error::Pole { at: z });
        }
        let jet = theta1_jet(self.v(z), self.q())?;
        Ok(z * (self.eta1 / self.omega1) + jet[1] / jet[0] * (PI / (2.0 * self.omega1)))
    }

    /// `ζ'(z)`, which is `−℘(z)`.
    pub fn zeta_deriv(&self, z: Complex64) -> Result<Complex64> {
        if self.on_lattice(z) {
            return Err(Error::Pole { at: z });
        }
        let jet = theta1_jet(self.v(z), self.q())?;
        let k = PI / (2.0 * self.omega1);
        let l = jet[1] / jet[0];
        Ok(Complex64::new(self.eta1 / self.omega1, 0.0) + (jet[2] / jet[0] - l * l) * (k * k))
    }

    /// A branch of `log σ(z)` continuous on the strip `0 ≤ Im z < 2ω3'`.
    ///
    /// Built from the product expansion of θ1, so no path tracking is needed.
    /// On that strip `log σ(z + 2ω1) − log σ(z) = 2η1(z + ω1) − iπ` exactly.
    pub fn log_sigma(&self, z: Complex64) -> Result<Complex64> {
        if z.im < 0.0 || z.im >= 2.0 * self.omega3_im {
            return Err(Error::OutsideDomain { u: z });
        }
        if self.on_lattice(z) {
            return Err(Error::Pole { at: z });
        }
        let v = self.v(z);
        let q = self.nome;
        let i = Complex64::i();
        let e2 = (i * v * 2.0).exp();
        let e2inv = (-i * v * 2.0).exp();
        let mut log_theta = Complex64::new(2f64.ln() + 0.25 * q.ln(), 0.0)
            + Complex64::new(0.5f64.ln(), PI / 2.0)
            - i * v
            + (Complex64::new(1.0, 0.0) - e2).ln();
        let mut q2n = 1.0;
        for _ in 0..MAX_TERMS {
            q2n *= q * q;
            let t = (Complex64::new(1.0, 0.0) - e2 * q2n).ln()
                + (Complex64::new(1.0, 0.0) - e2inv * q2n).ln()
                + (1.0 - q2n).ln();
            log_theta += t;
            if q2n * e2inv.norm().max(1.0) < 1e-18 {
                break;
            }
        }
        Ok(Complex64::new((2.0 * self.omega1 / PI).ln() - self.theta1_prime0.ln(), 0.0)
            + z * z * (self.eta1 / (2.0 * self.omega1))
            + log_theta)
    }
}

/// Weierstrass σ.
pub fn wsigma(z: Complex64, lattice: &RectLattice) -> Complex64 {
    lattice.sigma(z)
}

/// Weierstrass ζ, the logarithmic derivative of σ.
pub fn wzeta(z: Complex64, lattice: &RectLattice) -> Result<Complex64> {
    lattice.zeta(z)
}
