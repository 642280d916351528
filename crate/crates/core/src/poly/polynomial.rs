use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Jet;

/// Complex polynomial in coefficient form, lowest degree first.
///
/// Trailing zero coefficients are trimmed on construction so the leading
/// coefficient of any polynomial of positive degree is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients `c_0, c_1, ..., c_d`.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    /// The monic polynomial with exactly the given roots, with multiplicity.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (j, &cj) in c.iter().enumerate() {
                next[j + 1] += cj;
                next[j] -= r * cj;
            }
            c = next;
        }
        Polynomial::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        (self.leading() - Complex64::new(1.0, 0.0)).norm() == 0.0
    }

    /// Rescales so the leading coefficient is exactly 1.
    pub fn monic(&self) -> Polynomial {
        let lead = self.leading();
        Polynomial::new(self.coeffs.iter().map(|&c| c / lead).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Coefficient-wise differentiation; errors on constants.
    pub fn derivative(&self) -> Result<Polynomial> {
        if self.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * j as f64)
            .collect();
        Ok(Polynomial::new(coeffs))
    }

    /// m-fold derivative; degree-0 results are fine (a constant), but
    /// differentiating past the degree errors like `derivative`.
    pub fn derivative_n(&self, m: usize) -> Result<Polynomial> {
        let mut p = self.clone();
        for _ in 0..m {
            p = p.derivative()?;
        }
        Ok(p)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j] += c;
        }
        for (j, &c) in other.coeffs.iter().enumerate() {
            coeffs[j] += c;
        }
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    /// Composition self(inner(z)) by Horner on polynomials.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::constant(*self.coeffs.last().unwrap());
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(inner).add(&Polynomial::constant(c));
        }
        acc
    }

    /// Shifted by one degree: z * self.
    pub fn mul_z(&self) -> Polynomial {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial::new(coeffs)
    }

    /// The order-`m` jet of the polynomial at `z` (Horner in jet arithmetic).
    pub fn jet_at(&self, z: Complex64, order: usize) -> Jet {
        let x = Jet::identity(z, order);
        let mut acc = Jet::constant(*self.coeffs.last().unwrap(), order);
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(&x).add(&Jet::constant(c, order));
        }
        acc
    }

    /// Cauchy bound: every root has modulus at most `1 + max |a_j/a_d|`.
    pub fn root_bound(&self) -> f64 {
        let lead = self.leading().norm();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.norm() / lead)
            .fold(0.0f64, f64::max);
        1.0 + m
    }
}
