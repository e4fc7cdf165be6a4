//! Complex polynomials in coefficient form and in root form.
//!
//! Coefficients are stored lowest degree first, so `coeffs[j]` multiplies
//! `z^j`. All arithmetic is plain `f64`; the supported degree range is
//! `n <= 64`.

use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_complex::Complex64 as Complex;

/// Relative threshold below which a top coefficient does not count toward
/// the degree.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Unit-modulus point at angle `theta`.
pub fn unit(theta: f64) -> Complex {
    Complex::new(theta.cos(), theta.sin())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    /// Builds a polynomial from `α₀..αₙ`. An empty vector is the zero
    /// polynomial `[0]`.
    pub fn new(coeffs: Vec<Complex>) -> Self {
        if coeffs.is_empty() {
            return Self { coeffs: vec![Complex::new(0.0, 0.0)] };
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Highest index whose coefficient exceeds the degeneracy tolerance
    /// relative to the largest coefficient. The zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        let scale = self.max_coeff_modulus();
        if scale == 0.0 {
            return 0;
        }
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > DEGENERACY_TOL * scale)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(|α₀|, |αₙ|)`. With `exact_degree = Some(n)` the coefficient at index
    /// `n` must be non-degenerate; otherwise `n` is the detected degree.
    pub fn coeff_moduli(&self, exact_degree: Option<usize>) -> Result<(f64, f64)> {
        let a0 = self.coeffs[0].norm();
        match exact_degree {
            None => Ok((a0, self.coeffs[self.degree()].norm())),
            Some(n) => {
                let top = self.coeffs.get(n).map_or(0.0, |c| c.norm());
                let scale = self.max_coeff_modulus();
                let beyond = self.coeffs.iter().skip(n + 1).any(|c| c.norm() > DEGENERACY_TOL * scale);
                if top <= DEGENERACY_TOL * scale || scale == 0.0 || beyond {
                    return Err(Error::DegenerateLeading { degree: n, modulus: top });
                }
                Ok((a0, top))
            }
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex::new(0.0, 0.0);
        let coeffs = (0..len)
            .map(|j| {
                self.coeffs.get(j).copied().unwrap_or(zero) + rhs.coeffs.get(j).copied().unwrap_or(zero)
            })
            .collect();
        Polynomial::new(coeffs)
    }
}

/// `f(z) = c·∏(z − zⱼ)`, with `zⱼ = ηⱼ e^{iθⱼ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootForm {
    pub leading: Complex,
    pub roots: Vec<Complex>,
}

impl RootForm {
    pub fn new(leading: Complex, roots: Vec<Complex>) -> Self {
        Self { leading, roots }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Root moduli `ηⱼ`.
    pub fn moduli(&self) -> Vec<f64> {
        self.roots.iter().map(|z| z.norm()).collect()
    }

    pub fn expand(&self) -> Polynomial {
        poly_from_roots(self.leading, &self.roots)
    }

    /// Evaluates the product form directly, without expanding.
    pub fn eval(&self, z: Complex) -> Complex {
        self.roots.iter().fold(self.leading, |acc, &r| acc * (z - r))
    }
}

/// Expands `leading·∏(z − zⱼ)` by multiplying in one linear factor at a time.
pub fn poly_from_roots(leading: Complex, roots: &[Complex]) -> Polynomial {
    let mut coeffs = Vec::with_capacity(roots.len() + 1);
    coeffs.push(leading);
    for &root in roots {
        // (Σ cⱼ zʲ)(z − r): shift up by one and subtract r·cⱼ.
        coeffs.push(Complex::new(0.0, 0.0));
        for j in (1..coeffs.len()).rev() {
            coeffs[j] = coeffs[j - 1] - root * coeffs[j];
        }
        coeffs[0] = -root * coeffs[0];
    }
    Polynomial::new(coeffs)
}

pub fn poly_eval(p: &Polynomial, z: Complex) -> Complex {
    p.eval(z)
}

pub fn poly_coeff_moduli(p: &Polynomial, exact_degree: Option<usize>) -> Result<(f64, f64)> {
    p.coeff_moduli(exact_degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn from_roots_hand_expansions() {
        let p = poly_from_roots(c(2.0, 0.0), &[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(p.coeffs(), &[c(-2.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);

        let p = poly_from_roots(c(5.0, 0.0), &[]);
        assert_eq!(p.coeffs(), &[c(5.0, 0.0)]);

        let p = poly_from_roots(c(1.0, 0.0), &[c(-1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]);
        let v = p.eval(c(0.0, 1.0));
        assert!((v - c(0.0, 2.0)).norm() < 1e-15);

        let k = Polynomial::new(vec![c(3.0, -4.0)]);
        assert_eq!(k.eval(c(17.0, 0.5)), c(3.0, -4.0));

        let p = Polynomial::from_real(&[-2.0, 0.0, 2.0]);
        assert_eq!(p.eval(c(1.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn coeff_moduli_examples() {
        let p = Polynomial::from_real(&[2.0, 1.0]);
        assert_eq!(p.coeff_moduli(None).unwrap(), (2.0, 1.0));

        let p = Polynomial::new(vec![c(0.0, 3.0), c(4.0, 0.0)]);
        assert_eq!(p.coeff_moduli(Some(1)).unwrap(), (3.0, 4.0));

        let p = Polynomial::from_real(&[1.0, 0.0, 1e-18]);
        assert!(matches!(p.coeff_moduli(Some(2)), Err(Error::DegenerateLeading { degree: 2, .. })));
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn exact_degree_rejects_longer_polynomial() {
        let p = Polynomial::from_real(&[1.0, 1.0, 1.0]);
        assert!(p.coeff_moduli(Some(1)).is_err());
    }

    #[test]
    fn empty_coeffs_is_zero_polynomial() {
        let p = Polynomial::new(vec![]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), 0);
    }
}
