use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Truncated Taylor expansion of a holomorphic function at a point.
///
/// Stores the scaled coefficients `c_j = f^(j)(z) / j!` rather than raw
/// derivatives; magnitudes stay tame across repeated composition and raw
/// derivatives are recovered on extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    taylor: Vec<Complex64>,
}

impl Jet {
    /// Jet of the constant function `c`.
    pub fn constant(c: Complex64, order: usize) -> Jet {
        let mut taylor = vec![Complex64::new(0.0, 0.0); order + 1];
        taylor[0] = c;
        Jet { taylor }
    }

    /// Jet of the identity map at `z`.
    pub fn identity(z: Complex64, order: usize) -> Jet {
        let mut taylor = vec![Complex64::new(0.0, 0.0); order + 1];
        taylor[0] = z;
        if order >= 1 {
            taylor[1] = Complex64::new(1.0, 0.0);
        }
        Jet { taylor }
    }

    pub fn from_taylor(taylor: Vec<Complex64>) -> Jet {
        assert!(!taylor.is_empty());
        Jet { taylor }
    }

    pub fn order(&self) -> usize {
        self.taylor.len() - 1
    }

    pub fn taylor(&self) -> &[Complex64] {
        &self.taylor
    }

    /// f(z).
    pub fn value(&self) -> Complex64 {
        self.taylor[0]
    }

    /// f^(j)(z), recovered as `c_j * j!`.
    pub fn derivative(&self, j: usize) -> Complex64 {
        assert!(j <= self.order(), "jet order too low for derivative {j}");
        self.taylor[j] * factorial(j)
    }

    pub fn is_finite(&self) -> bool {
        self.taylor.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn add(&self, other: &Jet) -> Jet {
        assert_eq!(self.order(), other.order());
        Jet {
            taylor: self
                .taylor
                .iter()
                .zip(&other.taylor)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Jet) -> Jet {
        assert_eq!(self.order(), other.order());
        let n = self.taylor.len();
        let mut taylor = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=i {
                acc += self.taylor[j] * other.taylor[i - j];
            }
            taylor[i] = acc;
        }
        Jet { taylor }
    }

    pub fn scale(&self, s: Complex64) -> Jet {
        Jet {
            taylor: self.taylor.iter().map(|&c| c * s).collect(),
        }
    }

    /// self^k by binary exponentiation.
    pub fn powi(&self, k: usize) -> Jet {
        let mut result = Jet::constant(Complex64::new(1.0, 0.0), self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// The jet of `f^(m)` at the same point, of order `self.order() - m`.
    ///
    /// With scaled coefficients, the i-th coefficient of the derivative jet
    /// is `c_{m+i} * (m+i)! / i!`.
    pub fn derivative_jet(&self, m: usize) -> Jet {
        assert!(m <= self.order(), "jet order too low to differentiate {m} times");
        let out_len = self.taylor.len() - m;
        let mut taylor = vec![Complex64::new(0.0, 0.0); out_len];
        for i in 0..out_len {
            taylor[i] = self.taylor[m + i] * falling_ratio(m + i, i);
        }
        Jet { taylor }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// (m+i)! / i! as a float: the product (i+1)(i+2)...(m+i).
fn falling_ratio(top: usize, bottom: usize) -> f64 {
    ((bottom + 1)..=top).map(|k| k as f64).product()
}

/// Anything that can produce jets of itself at arbitrary points.
///
/// Implementations must be freely shareable between threads so that zero
/// location can evaluate concurrently.
pub trait JetFn: Sync {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet>;
}

impl JetFn for Polynomial {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        Ok(self.jet_at(z, order))
    }
}

impl<F: JetFn + ?Sized> JetFn for &F {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        (**self).jet(z, order)
    }
}

/// The m-th derivative of an underlying jet-evaluable function, itself
/// jet-evaluable.
pub struct NthDerivative<F: JetFn> {
    inner: F,
    m: usize,
}

impl<F: JetFn> NthDerivative<F> {
    pub fn new(inner: F, m: usize) -> Self {
        NthDerivative { inner, m }
    }
}

impl<F: JetFn> JetFn for NthDerivative<F> {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        Ok(self.inner.jet(z, order + self.m)?.derivative_jet(self.m))
    }
}

/// Order-`m` jet of the k-th iterate `P^k` at `z` by k-fold jet
/// composition. The value slot equals the plain Horner orbit.
pub fn iterate_jet(p: &Polynomial, k: usize, z: Complex64, m: usize) -> Result<Jet> {
    assert!(p.degree() >= 2, "iteration needs degree >= 2");
    let mut u = Jet::identity(z, m);
    for step in 0..k {
        u = compose_poly(p, &u);
        if !u.is_finite() {
            return Err(Error::EscapedToInfinity { step });
        }
    }
    Ok(u)
}

/// Horner evaluation of a polynomial on a jet argument.
fn compose_poly(p: &Polynomial, u: &Jet) -> Jet {
    let order = u.order();
    let mut acc = Jet::constant(*p.coeffs().last().unwrap(), order);
    for &c in p.coeffs().iter().rev().skip(1) {
        acc = acc.mul(u).add(&Jet::constant(c, order));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p_half() -> Polynomial {
        Polynomial::new(vec![c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
    }

    #[test]
    fn single_step_matches_symbolic_derivatives() {
        let p = p_half();
        let z = c(0.3, -0.7);
        let jet = iterate_jet(&p, 1, z, 2).unwrap();
        assert!((jet.value() - p.eval(z)).norm() < 1e-15);
        assert!((jet.derivative(1) - 2.0 * z).norm() < 1e-15);
        assert!((jet.derivative(2) - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn order_zero_matches_horner_orbit() {
        let p = p_half();
        let mut w = c(0.1, 0.2);
        for k in 1..=6 {
            w = p.eval(w);
            let jet = iterate_jet(&p, k, c(0.1, 0.2), 0).unwrap();
            assert!((jet.value() - w).norm() < 1e-12 * (1.0 + w.norm()));
        }
    }

    #[test]
    fn two_steps_satisfy_chain_rule() {
        let p = p_half();
        let z = c(0.4, 0.1);
        let jet = iterate_jet(&p, 2, z, 1).unwrap();
        let chain = p.derivative().unwrap().eval(p.eval(z)) * p.derivative().unwrap().eval(z);
        assert!((jet.derivative(1) - chain).norm() < 1e-13);
    }

    #[test]
    fn iterate_jet_matches_composed_coefficients() {
        let p = Polynomial::new(vec![c(0.2, -0.1), c(0.0, 0.3), c(1.0, 0.0), c(0.5, 0.0)]);
        let pp = p.compose(&p);
        let ppp = pp.compose(&p);
        for (k, q) in [(2usize, &pp), (3, &ppp)] {
            for i in 0..8 {
                let z = c(0.1 * i as f64 - 0.35, 0.07 * i as f64 - 0.2);
                let jet = iterate_jet(&p, k, z, 3).unwrap();
                let direct = q.jet_at(z, 3);
                for j in 0..=3 {
                    let a = jet.taylor()[j];
                    let b = direct.taylor()[j];
                    assert!(
                        (a - b).norm() <= 1e-10 * (1.0 + b.norm()),
                        "k={k} j={j}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn escape_reports_step_index() {
        let p = p_half();
        // a far point overflows after a handful of squarings
        let err = iterate_jet(&p, 64, c(1e150, 0.0), 1).unwrap_err();
        match err {
            Error::EscapedToInfinity { step } => assert!(step <= 3, "step {step}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn derivative_jet_shifts_and_scales() {
        // f(z) = z^4 at z=2: taylor = [16, 32, 24, 8, 1]
        let p = Polynomial::new(vec![
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ]);
        let jet = p.jet_at(c(2.0, 0.0), 4);
        let d2 = jet.derivative_jet(2);
        // f'' = 12z^2: value 48, derivative 24z = 48, second derivative 24
        assert!((d2.value() - c(48.0, 0.0)).norm() < 1e-12);
        assert!((d2.derivative(1) - c(48.0, 0.0)).norm() < 1e-12);
        assert!((d2.derivative(2) - c(24.0, 0.0)).norm() < 1e-12);
    }
}
