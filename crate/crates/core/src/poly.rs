//! Real polynomials in ascending coefficient order.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn constant(c: f64) -> Self {
        Poly(vec![c])
    }

    /// `∏ (u − r)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Poly::constant(1.0), |p, &r| p.mul(&Poly(vec![-r, 1.0])))
    }

    /// Drops trailing zero coefficients.
    pub fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && *self.0.last().unwrap() == 0.0 {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).copied().unwrap_or(0.0);
        Poly((0..n).map(|i| get(self, i) - get(other, i)).collect())
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn deriv(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::constant(0.0);
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect())
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
    }

    pub fn eval_real(&self, u: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }

    /// All complex roots, with multiplicity, from the eigenvalues of the
    /// companion matrix, each refined by a few Newton steps.
    pub fn roots(&self) -> Vec<Complex64> {
        let p = self.clone().trimmed();
        let n = p.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = p.0[n];
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -p.0[i] / lead;
        }
        let dp = p.deriv();
        companion
            .complex_eigenvalues()
            .iter()
            .map(|e| {
                let mut x = Complex64::new(e.re, e.im);
                for _ in 0..3 {
                    let d = dp.eval(x);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = p.eval(x) / d;
                    let candidate = x - step;
                    if p.eval(candidate).norm() < p.eval(x).norm() {
                        x = candidate;
                    } else {
                        break;
                    }
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cubic() {
        let p = Poly::from_roots(&[1.0, -2.0, 3.5]);
        let mut r: Vec<f64> = p.roots().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([-2.0, 1.0, 3.5]) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn complex_pair() {
        // u² + 1
        let r = Poly(vec![1.0, 0.0, 1.0]).roots();
        assert_eq!(r.len(), 2);
        assert!(r.iter().any(|z| (z - Complex64::i()).norm() < 1e-14));
        assert!(r.iter().any(|z| (z + Complex64::i()).norm() < 1e-14));
    }

    #[test]
    fn arithmetic() {
        let p = Poly(vec![1.0, 2.0, 3.0]);
        assert_eq!(p.deriv(), Poly(vec![2.0, 6.0]));
        assert_eq!(p.mul(&Poly(vec![0.0, 1.0])), Poly(vec![0.0, 1.0, 2.0, 3.0]));
        assert_eq!(p.sub(&p).trimmed(), Poly(vec![0.0]));
        assert_eq!(p.eval_real(2.0), 17.0);
        assert!(Poly::constant(5.0).roots().is_empty());
    }
}
