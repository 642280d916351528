//! Generators for the polynomial sequences under study: iterates of a
//! fixed polynomial, orthogonal polynomials of a discrete measure, the
//! closed-form binomial oracle family, and explicit lists.

use num_complex::Complex64;

use crate::dynamics::DynSystem;
use crate::error::{Error, Result};
use crate::poly::{iterate_jet, Jet, Polynomial};
use crate::potential::DiscreteMeasure;
use crate::rootfind::aberth_roots;

/// Largest degree for which iterate coefficients are materialized.
const ITERATE_COEFF_CAP: usize = 64;
/// Largest orthogonal degree attempted in double precision.
const ORTHO_DEGREE_CAP: usize = 64;

/// A polynomial sequence `(q_k)` with strictly increasing degrees,
/// indexed from k = 1.
#[derive(Debug, Clone)]
pub enum Family {
    /// q_k = P^k for a monic P of degree >= 2.
    Iterates(DynSystem),
    /// Monic orthogonal polynomials of a discrete measure.
    Orthogonal(OrthogonalFamily),
    /// q_k = (z^2 - c^2)^k, the closed-form oracle family.
    Binomial { c: Complex64 },
    /// An explicit list; q_k is the k-th entry (1-based).
    Explicit(Vec<Polynomial>),
}

impl Family {
    pub fn iterates(sys: DynSystem) -> Family {
        Family::Iterates(sys)
    }

    pub fn orthogonal(mu: &DiscreteMeasure, k_max: usize) -> Result<Family> {
        Ok(Family::Orthogonal(OrthogonalFamily::generate(mu, k_max)?))
    }

    pub fn binomial(c: Complex64) -> Family {
        assert!(c.norm() > 0.0, "binomial family needs c != 0");
        Family::Binomial { c }
    }

    pub fn explicit(polys: Vec<Polynomial>) -> Family {
        assert!(!polys.is_empty());
        assert!(
            polys.windows(2).all(|w| w[0].degree() < w[1].degree()),
            "explicit family degrees must be strictly increasing"
        );
        assert!(polys[0].degree() >= 1);
        Family::Explicit(polys)
    }

    /// Degree n_k of the k-th member.
    pub fn degree(&self, k: usize) -> usize {
        assert!(k >= 1, "family members are indexed from 1");
        match self {
            Family::Iterates(sys) => sys
                .degree()
                .checked_pow(k as u32)
                .expect("iterate degree overflows usize"),
            Family::Orthogonal(fam) => {
                assert!(k <= fam.k_max(), "orthogonal family ends at {}", fam.k_max());
                k
            }
            Family::Binomial { .. } => 2 * k,
            Family::Explicit(list) => {
                assert!(k <= list.len(), "explicit family has {} members", list.len());
                list[k - 1].degree()
            }
        }
    }

    /// Order-m jet of q_k at z.
    pub fn jet_eval(&self, k: usize, z: Complex64, m: usize) -> Result<Jet> {
        assert!(k >= 1);
        match self {
            Family::Iterates(sys) => iterate_jet(sys.polynomial(), k, z, m),
            Family::Orthogonal(fam) => {
                if k > fam.k_max() {
                    return Err(Error::DegreeTooLarge { degree: k, max: fam.k_max() });
                }
                Ok(fam.polys[k].jet_at(z, m))
            }
            Family::Binomial { c } => {
                let base = base_jet(*c, z, m);
                Ok(base.powi(k))
            }
            Family::Explicit(list) => {
                if k > list.len() {
                    return Err(Error::DegreeTooLarge { degree: k, max: list.len() });
                }
                Ok(list[k - 1].jet_at(z, m))
            }
        }
    }

    /// Coefficient form of q_k, when representable.
    pub fn coeffs(&self, k: usize) -> Result<Polynomial> {
        assert!(k >= 1);
        match self {
            Family::Iterates(sys) => {
                let deg = sys.degree().checked_pow(k as u32);
                match deg {
                    Some(d) if d <= ITERATE_COEFF_CAP => {
                        let mut q = sys.polynomial().clone();
                        for _ in 1..k {
                            q = q.compose(sys.polynomial());
                        }
                        Ok(q)
                    }
                    Some(d) => Err(Error::DegreeTooLarge { degree: d, max: ITERATE_COEFF_CAP }),
                    None => Err(Error::DegreeTooLarge { degree: usize::MAX, max: ITERATE_COEFF_CAP }),
                }
            }
            Family::Orthogonal(fam) => {
                if k > fam.k_max() {
                    return Err(Error::DegreeTooLarge { degree: k, max: fam.k_max() });
                }
                Ok(fam.polys[k].clone())
            }
            Family::Binomial { c } => {
                let base = Polynomial::new(vec![-c * c, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
                let mut q = Polynomial::constant(Complex64::new(1.0, 0.0));
                for _ in 0..k {
                    q = q.mul(&base);
                }
                Ok(q)
            }
            Family::Explicit(list) => {
                if k > list.len() {
                    return Err(Error::DegreeTooLarge { degree: k, max: list.len() });
                }
                Ok(list[k - 1].clone())
            }
        }
    }

    /// The normalized potential p_{mu_k}(z) = (1/n_k) log |q_k(z)|,
    /// computed in log space so deep iterates never overflow. Negative
    /// infinity exactly on roots.
    pub fn potential_eval(&self, k: usize, z: Complex64) -> f64 {
        assert!(k >= 1);
        match self {
            Family::Iterates(sys) => {
                let d = sys.degree() as f64;
                let mut w = z;
                for step in 0..k {
                    if w.norm() > 1e100 {
                        // beyond here each application raises log|w| by
                        // exactly the degree factor, to machine precision
                        return w.norm().ln() / d.powi(step as i32);
                    }
                    w = sys.polynomial().eval(w);
                }
                w.norm().ln() / d.powi(k as i32)
            }
            Family::Binomial { c } => 0.5 * (z * z - c * c).norm().ln(),
            Family::Orthogonal(_) | Family::Explicit(_) => {
                let q = self.coeffs(k).expect("coefficient families are materialized");
                stable_log_abs(&q, z) / self.degree(k) as f64
            }
        }
    }

    pub fn as_orthogonal(&self) -> Option<&OrthogonalFamily> {
        match self {
            Family::Orthogonal(fam) => Some(fam),
            _ => None,
        }
    }
}

fn base_jet(c: Complex64, z: Complex64, order: usize) -> Jet {
    // jet of z^2 - c^2
    let mut taylor = vec![Complex64::new(0.0, 0.0); order + 1];
    taylor[0] = z * z - c * c;
    if order >= 1 {
        taylor[1] = 2.0 * z;
    }
    if order >= 2 {
        taylor[2] = Complex64::new(1.0, 0.0);
    }
    Jet::from_taylor(taylor)
}

/// log |q(z)| that stays finite for large |z| by factoring out z^degree.
fn stable_log_abs(q: &Polynomial, z: Complex64) -> f64 {
    let r = z.norm();
    if r <= 1.0 {
        return q.eval(z).norm().ln();
    }
    let n = q.degree();
    let inv = 1.0 / z;
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in q.coeffs() {
        acc = acc * inv + c;
    }
    // acc = q(z) / z^n
    n as f64 * r.ln() + acc.norm().ln()
}

/// Monic orthogonal polynomials q_0..q_{k_max} in the inner product
/// <f, g> = sum w_j f(a_j) conj(g(a_j)).
///
/// Real-supported measures go through the Stieltjes three-term
/// recurrence; complex support goes through Arnoldi-style modified
/// Gram-Schmidt (one reorthogonalization pass) on the Krylov basis of
/// multiplication by z. Monomial Gram matrices are hopeless in double
/// precision; both routes sidestep them.
#[derive(Debug, Clone)]
pub struct OrthogonalFamily {
    polys: Vec<Polynomial>,
    norms: Vec<f64>,
}

impl OrthogonalFamily {
    fn generate(mu: &DiscreteMeasure, k_max: usize) -> Result<OrthogonalFamily> {
        if k_max >= mu.atoms().len() {
            return Err(Error::MeasureSupportTooSmall);
        }
        if k_max > ORTHO_DEGREE_CAP {
            return Err(Error::DegreeTooLarge { degree: k_max, max: ORTHO_DEGREE_CAP });
        }
        let real_support = mu.atoms().iter().all(|&(a, _)| a.im == 0.0);
        if real_support {
            Self::stieltjes(mu, k_max)
        } else {
            Self::arnoldi(mu, k_max)
        }
    }

    fn stieltjes(mu: &DiscreteMeasure, k_max: usize) -> Result<OrthogonalFamily> {
        let xs: Vec<f64> = mu.atoms().iter().map(|&(a, _)| a.re).collect();
        let ws: Vec<f64> = mu.atoms().iter().map(|&(_, w)| w).collect();
        let n = xs.len();

        let mut polys = vec![Polynomial::constant(Complex64::new(1.0, 0.0))];
        let mut vals: Vec<Vec<f64>> = vec![vec![1.0; n]];
        let mut norms: Vec<f64> = Vec::new();

        for k in 0..=k_max {
            let qk = &vals[k];
            let sk: f64 = (0..n).map(|j| ws[j] * qk[j] * qk[j]).sum();
            if !(sk.is_finite() && sk > 1e-300) {
                return Err(Error::MeasureSupportTooSmall);
            }
            norms.push(sk);
            if k == k_max {
                break;
            }
            let alpha: f64 = (0..n).map(|j| ws[j] * xs[j] * qk[j] * qk[j]).sum::<f64>() / sk;
            let beta = if k == 0 { 0.0 } else { sk / norms[k - 1] };

            let mut next_vals = vec![0.0; n];
            for j in 0..n {
                next_vals[j] = (xs[j] - alpha) * qk[j]
                    - if k == 0 { 0.0 } else { beta * vals[k - 1][j] };
            }
            let alpha_c = Polynomial::constant(Complex64::new(alpha, 0.0));
            let mut next = polys[k].mul_z().sub(&polys[k].mul(&alpha_c));
            if k > 0 {
                next = next.sub(&polys[k - 1].scale(Complex64::new(beta, 0.0)));
            }
            vals.push(next_vals);
            polys.push(next);
        }

        Ok(OrthogonalFamily { polys, norms })
    }

    fn arnoldi(mu: &DiscreteMeasure, k_max: usize) -> Result<OrthogonalFamily> {
        let atoms: Vec<Complex64> = mu.atoms().iter().map(|&(a, _)| a).collect();
        let ws: Vec<f64> = mu.atoms().iter().map(|&(_, w)| w).collect();
        let n = atoms.len();

        let mut polys = vec![Polynomial::constant(Complex64::new(1.0, 0.0))];
        let mut vals: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0); n]];
        let mut norms: Vec<f64> = Vec::new();

        let inner = |f: &[Complex64], g: &[Complex64]| -> Complex64 {
            (0..n).map(|j| ws[j] * f[j] * g[j].conj()).sum()
        };

        for k in 0..=k_max {
            let sk = inner(&vals[k], &vals[k]).re;
            if !(sk.is_finite() && sk > 1e-300) {
                return Err(Error::MeasureSupportTooSmall);
            }
            norms.push(sk);
            if k == k_max {
                break;
            }

            let mut v: Vec<Complex64> = (0..n).map(|j| atoms[j] * vals[k][j]).collect();
            let mut coeff = polys[k].mul_z();
            for _pass in 0..2 {
                for i in 0..=k {
                    let h = inner(&v, &vals[i]) / norms[i];
                    for j in 0..n {
                        v[j] -= h * vals[i][j];
                    }
                    coeff = coeff.sub(&polys[i].scale(h));
                }
            }
            vals.push(v);
            polys.push(coeff);
        }

        Ok(OrthogonalFamily { polys, norms })
    }

    pub fn k_max(&self) -> usize {
        self.polys.len() - 1
    }

    /// q_0..q_{k_max}, monic.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Squared norms <q_k, q_k>.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }
}

/// The root distribution mu_k of a polynomial: unit mass spread over its
/// roots, weight multiplicity/degree each.
pub fn root_distribution(q: &Polynomial) -> Result<DiscreteMeasure> {
    assert!(q.degree() >= 1);
    let rs = aberth_roots(q, 1e-10)?;
    let deg = q.degree() as f64;
    Ok(DiscreteMeasure::new(
        rs.roots
            .iter()
            .map(|&(z, m)| (z, m as f64 / deg))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{model_equilibrium, ModelSet};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p_half() -> Polynomial {
        Polynomial::new(vec![c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
    }

    #[test]
    fn iterate_coefficients_and_degrees() {
        let fam = Family::iterates(DynSystem::new(p_half()).unwrap());
        let q2 = fam.coeffs(2).unwrap();
        // (z^2+1/2)^2 + 1/2 = z^4 + z^2 + 3/4
        assert_eq!(q2.degree(), 4);
        assert!((q2.coeffs()[0] - c(0.75, 0.0)).norm() < 1e-15);
        assert!((q2.coeffs()[2] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((q2.coeffs()[4] - c(1.0, 0.0)).norm() < 1e-15);

        assert_eq!(fam.degree(10), 1024);
        assert!(matches!(
            fam.coeffs(7),
            Err(Error::DegreeTooLarge { degree: 128, max: 64 })
        ));
    }

    #[test]
    fn iterate_jet_matches_symbolic_composition() {
        let fam = Family::iterates(DynSystem::new(p_half()).unwrap());
        let q3 = fam.coeffs(3).unwrap();
        let z = c(0.1, 0.0);
        let jet = fam.jet_eval(3, z, 1).unwrap();
        let symbolic = q3.derivative().unwrap().eval(z);
        assert!((jet.derivative(1) - symbolic).norm() < 1e-12);
        assert!((jet.value() - q3.eval(z)).norm() < 1e-14);
    }

    #[test]
    fn orthogonal_on_roots_of_unity_gives_monomials() {
        let mu = model_equilibrium(ModelSet::Circle(1.0), 32);
        let fam = Family::orthogonal(&mu, 5).unwrap();
        let q5 = fam.coeffs(5).unwrap();
        assert_eq!(q5.degree(), 5);
        assert!((q5.leading() - c(1.0, 0.0)).norm() < 1e-12);
        for j in 0..5 {
            assert!(
                q5.coeffs()[j].norm() < 1e-10,
                "coefficient {j} = {}",
                q5.coeffs()[j]
            );
        }
    }

    #[test]
    fn orthogonal_on_arcsine_surrogate_gives_chebyshev() {
        let mu = model_equilibrium(ModelSet::Interval(-1.0, 1.0), 64);
        let fam = Family::orthogonal(&mu, 3).unwrap();
        let q3 = fam.coeffs(3).unwrap();
        // monic Chebyshev: z^3 - (3/4) z
        let expect = [0.0, -0.75, 0.0, 1.0];
        for (j, &e) in expect.iter().enumerate() {
            assert!(
                (q3.coeffs()[j] - c(e, 0.0)).norm() < 1e-6,
                "coefficient {j}: {} vs {e}",
                q3.coeffs()[j]
            );
        }
    }

    #[test]
    fn orthogonal_two_atoms_subtracts_mean() {
        let mu = DiscreteMeasure::new(vec![(c(0.0, 0.0), 0.5), (c(2.0, 0.0), 0.5)]);
        let fam = Family::orthogonal(&mu, 1).unwrap();
        let q1 = fam.coeffs(1).unwrap();
        assert!((q1.coeffs()[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((q1.coeffs()[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn orthogonal_rank_guard() {
        let mu = DiscreteMeasure::new(vec![(c(0.0, 0.0), 0.5), (c(2.0, 0.0), 0.5)]);
        assert!(matches!(
            Family::orthogonal(&mu, 2),
            Err(Error::MeasureSupportTooSmall)
        ));
    }

    #[test]
    fn binomial_family_closed_forms() {
        let fam = Family::binomial(c(1.0, 0.0));
        let q1 = fam.coeffs(1).unwrap();
        assert_eq!(q1.coeffs(), &[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(fam.degree(7), 14);

        // q_k' = 2k z (z^2-1)^(k-1) at sample points
        for k in [3usize, 10] {
            for z in [c(0.3, 0.1), c(-0.7, 0.4)] {
                let jet = fam.jet_eval(k, z, 1).unwrap();
                let expect = 2.0 * k as f64 * z * (z * z - 1.0).powu(k as u32 - 1);
                assert!((jet.derivative(1) - expect).norm() < 1e-10 * (1.0 + expect.norm()));
            }
        }
    }

    #[test]
    fn family_jet_value_agrees_with_coeffs() {
        let fam = Family::iterates(DynSystem::new(p_half()).unwrap());
        for k in 1..=5 {
            let q = fam.coeffs(k).unwrap();
            let z = c(0.21, -0.38);
            let direct = q.eval(z);
            let jet = fam.jet_eval(k, z, 0).unwrap();
            assert!((jet.value() - direct).norm() <= 1e-9 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn potential_eval_survives_deep_iterates() {
        let sys = DynSystem::new(p_half()).unwrap();
        let green = sys.green_escape(c(1.3, 0.0));
        let fam = Family::iterates(sys);
        // raw coefficients of P^40 are unthinkable; the log-space path is not
        let p40 = fam.potential_eval(40, c(1.3, 0.0));
        assert!((p40 - green).abs() < 1e-9);
    }

    #[test]
    fn binomial_potential_is_exact() {
        let fam = Family::binomial(c(1.0, 0.0));
        let z = c(1.7, 0.4);
        let expect = 0.5 * ((z * z - 1.0).norm()).ln();
        for k in [1usize, 10, 200] {
            assert!((fam.potential_eval(k, z) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn root_distribution_examples() {
        // z^3 -> delta_0
        let q = Polynomial::new(vec![c(0.0, 0.0); 3].into_iter().chain([c(1.0, 0.0)]).collect());
        let mu = root_distribution(&q).unwrap();
        assert_eq!(mu.atoms().len(), 1);
        assert!((mu.atoms()[0].1 - 1.0).abs() < 1e-12);

        // (z^2-1)^3 -> half mass at each of +-1
        let base = Polynomial::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let q6 = base.mul(&base).mul(&base);
        let mu6 = root_distribution(&q6).unwrap();
        assert_eq!(mu6.atoms().len(), 2);
        for &(a, w) in mu6.atoms() {
            assert!((w - 0.5).abs() < 1e-12);
            assert!((a.norm() - 1.0).abs() < 1e-8);
        }
    }
}
