//! Logarithmic potential theory for finitely supported measures.

use num_complex::Complex64;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quad::segment_adaptive;
use crate::rootfind::{aberth_roots, Rect};

const ATOM_MERGE_TOL: f64 = 1e-12;

/// Finitely many weighted point masses in the plane.
///
/// Coincident atoms (within 1e-12) are merged on construction and atoms
/// are kept in lexicographic order, so downstream sums are deterministic.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    atoms: Vec<(Complex64, f64)>,
    mass: f64,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<(Complex64, f64)>) -> DiscreteMeasure {
        assert!(!atoms.is_empty(), "measure needs at least one atom");
        assert!(
            atoms.iter().all(|&(a, w)| {
                a.re.is_finite() && a.im.is_finite() && w.is_finite() && w > 0.0
            }),
            "atoms must be finite with positive weights"
        );
        let mut merged: Vec<(Complex64, f64)> = Vec::with_capacity(atoms.len());
        let mut sorted = atoms;
        sorted.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
        for (a, w) in sorted {
            if let Some(last) = merged.last_mut() {
                if (last.0 - a).norm() <= ATOM_MERGE_TOL {
                    last.1 += w;
                    continue;
                }
            }
            merged.push((a, w));
        }
        let mass = merged.iter().map(|&(_, w)| w).sum();
        DiscreteMeasure { atoms: merged, mass }
    }

    /// Unit point mass.
    pub fn dirac(at: Complex64) -> DiscreteMeasure {
        DiscreteMeasure::new(vec![(at, 1.0)])
    }

    pub fn atoms(&self) -> &[(Complex64, f64)] {
        &self.atoms
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn is_probability(&self) -> bool {
        (self.mass - 1.0).abs() <= 1e-12
    }

    /// p_mu(z) = sum w_j log|z - a_j|; negative infinity exactly on atoms.
    pub fn potential_at(&self, z: Complex64) -> f64 {
        self.atoms
            .iter()
            .map(|&(a, w)| w * (z - a).norm().ln())
            .sum()
    }

    /// The Cauchy transform sum w_j / (z - a_j), the complex derivative
    /// of the potential.
    pub fn cauchy_transform(&self, z: Complex64) -> Result<Complex64> {
        if self.atoms.iter().any(|&(a, _)| (z - a).norm() == 0.0) {
            return Err(Error::Pole);
        }
        Ok(self.atoms.iter().map(|&(a, w)| w / (z - a)).sum())
    }

    /// Integrates the Cauchy transform along `path` by adaptive panels;
    /// the real part recovers the potential difference between the
    /// endpoints.
    pub fn integrate_transform(&self, path: &Polyline) -> Result<Complex64> {
        for seg in path.segments() {
            for &(a, _) in &self.atoms {
                if dist_point_segment(a, seg.0, seg.1) <= 1e-12 {
                    return Err(Error::PathThroughSupport);
                }
            }
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (a, b) in path.segments() {
            let mut f = |z: Complex64| self.cauchy_transform(z);
            total += segment_adaptive(&mut f, a, b, 1e-12, 40)?;
        }
        Ok(total)
    }

    /// Zeros of the Cauchy transform inside `window`, as a nonnegative
    /// divisor.
    ///
    /// For n distinct atoms the transform is N(z) / prod (z - a_j) with
    /// N(z) = sum_i w_i prod_{j != i} (z - a_j) of degree exactly n - 1,
    /// so the zeros come from Aberth on the numerator. Numerator zeros
    /// that coincide with atoms cancel against the poles and are dropped
    /// to the net order.
    pub fn critical_points(&self, window: &Rect) -> Result<Divisor> {
        let n = self.atoms.len();
        if n == 1 {
            return Ok(Divisor::empty(*window));
        }
        let points: Vec<Complex64> = self.atoms.iter().map(|&(a, _)| a).collect();
        let full = Polynomial::from_roots(&points);
        let mut numerator = Polynomial::constant(Complex64::new(0.0, 0.0));
        for (i, &(_, w)) in self.atoms.iter().enumerate() {
            let quotient = deflate(&full, points[i]);
            numerator = numerator.add(&quotient.scale(Complex64::new(w, 0.0)));
        }
        let rs = aberth_roots(&numerator, 1e-12)?;

        let mut entries: Vec<(Complex64, i64)> = Vec::new();
        for &(z, mult) in &rs.roots {
            let mut order = mult as i64;
            if points.iter().any(|&a| (z - a).norm() <= ATOM_MERGE_TOL) {
                order -= 1; // one pole order cancels
            }
            if order <= 0 {
                continue;
            }
            if window.boundary_distance(z) <= 1e-9 {
                return Err(Error::BoundaryUnsafe);
            }
            if window.contains(z) {
                entries.push((z, order));
            }
        }
        Ok(Divisor::from_entries(*window, entries))
    }
}

/// Synthetic division of a monic product by one of its linear factors.
fn deflate(p: &Polynomial, root: Complex64) -> Polynomial {
    let coeffs = p.coeffs();
    let n = coeffs.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n - 1];
    let mut carry = coeffs[n - 1];
    for j in (0..n - 1).rev() {
        out[j] = carry;
        carry = coeffs[j] + root * carry;
    }
    Polynomial::new(out)
}

/// Piecewise-linear path.
#[derive(Debug, Clone)]
pub struct Polyline {
    vertices: Vec<Complex64>,
}

impl Polyline {
    pub fn new(vertices: Vec<Complex64>) -> Polyline {
        assert!(vertices.len() >= 2, "a path needs at least two vertices");
        assert!(
            vertices.windows(2).all(|w| (w[0] - w[1]).norm() > 0.0),
            "consecutive vertices must be distinct"
        );
        Polyline { vertices }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn is_closed(&self) -> bool {
        (self.vertices[0] - self.vertices[self.vertices.len() - 1]).norm() == 0.0
    }
}

fn dist_point_segment(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Off-diagonal mean of log-distances: the discrete logarithmic energy
/// (1/(n(n-1))) sum_{i != j} log|p_i - p_j|.
pub fn discrete_energy(points: &[Complex64]) -> f64 {
    let n = points.len();
    assert!(n >= 2, "energy needs at least two points");
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += (points[i] - points[j]).norm().ln();
            }
        }
    }
    s / (n * (n - 1)) as f64
}

/// Greedy Leja sequence: each step picks the candidate maximizing the
/// product of distances to the points already chosen (first point: the
/// candidate of maximal modulus, earliest on ties). Works in log space.
pub fn leja_points(candidates: &[Complex64], n: usize) -> Vec<Complex64> {
    assert!(n >= 1 && candidates.len() >= n, "need at least n candidates");
    let first = candidates
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.norm()
                .partial_cmp(&b.norm())
                .unwrap()
                .then(ib.cmp(ia)) // earliest index wins ties
        })
        .map(|(i, _)| i)
        .unwrap();
    let mut chosen = vec![candidates[first]];
    let mut logdist: Vec<f64> = candidates
        .iter()
        .map(|&c| (c - chosen[0]).norm().ln())
        .collect();
    while chosen.len() < n {
        let mut best = 0usize;
        let mut best_val = f64::NEG_INFINITY;
        for (i, &v) in logdist.iter().enumerate() {
            if v > best_val {
                best_val = v;
                best = i;
            }
        }
        let next = candidates[best];
        chosen.push(next);
        for (i, &c) in candidates.iter().enumerate() {
            logdist[i] += (c - next).norm().ln();
        }
    }
    chosen
}

/// Model compact sets whose equilibrium measures have classical
/// quadrature surrogates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSet {
    /// Circle of radius r centered at the origin.
    Circle(f64),
    /// Real segment [a, b].
    Interval(f64, f64),
}

/// n-point quadrature surrogate of the equilibrium measure: equally
/// spaced points on the circle, Chebyshev (arcsine) nodes on the
/// interval, uniform weights 1/n either way.
pub fn model_equilibrium(shape: ModelSet, n: usize) -> DiscreteMeasure {
    assert!(n >= 2, "surrogate needs at least two nodes");
    let w = 1.0 / n as f64;
    let atoms = match shape {
        ModelSet::Circle(r) => {
            assert!(r > 0.0);
            (0..n)
                .map(|j| {
                    let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                    (Complex64::new(r * t.cos(), r * t.sin()), w)
                })
                .collect()
        }
        ModelSet::Interval(a, b) => {
            assert!(a < b);
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            (1..=n)
                .map(|j| {
                    let t = (2 * j - 1) as f64 * std::f64::consts::PI / (2 * n) as f64;
                    (Complex64::new(mid + half * t.cos(), 0.0), w)
                })
                .collect()
        }
    };
    DiscreteMeasure::new(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pm_ones() -> DiscreteMeasure {
        DiscreteMeasure::new(vec![(c(-1.0, 0.0), 0.5), (c(1.0, 0.0), 0.5)])
    }

    #[test]
    fn potential_of_dirac_and_symmetric_pair() {
        let mu = DiscreteMeasure::dirac(c(0.0, 0.0));
        assert!((mu.potential_at(c(std::f64::consts::E, 0.0)) - 1.0).abs() < 1e-14);
        assert_eq!(mu.potential_at(c(0.0, 0.0)), f64::NEG_INFINITY);
        assert!(pm_ones().potential_at(c(0.0, 0.0)).abs() < 1e-15);
    }

    #[test]
    fn potential_of_roots_of_unity_from_product_identity() {
        let mu = model_equilibrium(ModelSet::Circle(1.0), 16);
        // prod (z - zeta_j) = z^16 - 1 at z = 2
        let expect = (2f64.powi(16) - 1.0).ln() / 16.0;
        assert!((mu.potential_at(c(2.0, 0.0)) - expect).abs() < 1e-12);
    }

    #[test]
    fn cauchy_transform_matches_partial_fractions() {
        let mu = DiscreteMeasure::dirac(c(0.0, 0.0));
        let v = mu.cauchy_transform(c(0.0, 2.0)).unwrap();
        assert!((v - c(0.0, -0.5)).norm() < 1e-15);

        let v2 = pm_ones().cauchy_transform(c(2.0, 0.0)).unwrap();
        assert!((v2 - c(2.0 / 3.0, 0.0)).norm() < 1e-15);

        assert!(matches!(
            pm_ones().cauchy_transform(c(1.0, 0.0)),
            Err(Error::Pole)
        ));
    }

    #[test]
    fn cauchy_transform_is_gradient_of_potential() {
        // centered differences with h' = df/dx - i df/dy
        let mu = DiscreteMeasure::new(vec![
            (c(0.3, -0.4), 0.25),
            (c(-1.1, 0.2), 0.5),
            (c(0.8, 0.9), 0.125),
            (c(-0.2, -0.9), 0.125),
        ]);
        let h = 1e-6;
        for z in [c(1.7, 0.3), c(-0.4, 1.5), c(2.0, -2.0)] {
            let fx = (mu.potential_at(z + c(h, 0.0)) - mu.potential_at(z - c(h, 0.0))) / (2.0 * h);
            let fy = (mu.potential_at(z + c(0.0, h)) - mu.potential_at(z - c(0.0, h))) / (2.0 * h);
            let fd = c(fx, -fy);
            let exact = mu.cauchy_transform(z).unwrap();
            assert!((fd - exact).norm() < 1e-5, "{fd} vs {exact}");
        }
    }

    #[test]
    fn path_integral_recovers_potential_difference() {
        let mu = DiscreteMeasure::dirac(c(0.0, 0.0));
        let path = Polyline::new(vec![c(1.0, 0.0), c(std::f64::consts::E, 0.0)]);
        let got = mu.integrate_transform(&path).unwrap();
        assert!((got.re - 1.0).abs() < 1e-10);

        let mu2 = pm_ones();
        let path2 = Polyline::new(vec![c(2.0, 0.0), c(0.0, 3.0)]);
        let got2 = mu2.integrate_transform(&path2).unwrap();
        let expect = mu2.potential_at(c(0.0, 3.0)) - mu2.potential_at(c(2.0, 0.0));
        assert!((got2.re - expect).abs() < 1e-9);
    }

    #[test]
    fn closed_path_has_zero_real_part() {
        let mu = pm_ones();
        let path = Polyline::new(vec![
            c(2.0, 0.0),
            c(2.5, 1.0),
            c(3.0, -0.5),
            c(2.0, 0.0),
        ]);
        let got = mu.integrate_transform(&path).unwrap();
        assert!(got.re.abs() < 1e-9);
    }

    #[test]
    fn path_through_atom_rejected() {
        let mu = pm_ones();
        let path = Polyline::new(vec![c(-2.0, 0.0), c(2.0, 0.0)]);
        assert!(matches!(
            mu.integrate_transform(&path),
            Err(Error::PathThroughSupport)
        ));
    }

    #[test]
    fn critical_points_of_model_measures() {
        let window = Rect::from_bounds(-0.5, -0.5, 0.5, 0.5);

        let single = DiscreteMeasure::dirac(c(0.3, 0.2));
        assert!(single.critical_points(&window).unwrap().is_empty());

        // 1/2 (delta_-1 + delta_1): transform z/(z^2-1), simple zero at 0
        let xi = pm_ones().critical_points(&window).unwrap();
        assert_eq!(xi.entries().len(), 1);
        assert!(xi.entries()[0].0.norm() < 1e-10);
        assert_eq!(xi.entries()[0].1, 1);

        // third roots of unity: transform z^2/(z^3-1), double zero at 0
        let omega = c(-0.5, 3f64.sqrt() / 2.0);
        let mu3 = DiscreteMeasure::new(vec![
            (c(1.0, 0.0), 1.0 / 3.0),
            (omega, 1.0 / 3.0),
            (omega.conj(), 1.0 / 3.0),
        ]);
        let xi3 = mu3.critical_points(&window).unwrap();
        assert_eq!(xi3.total_positive(), 2);
        assert_eq!(xi3.entries().len(), 1);
        assert!(xi3.entries()[0].0.norm() < 1e-7);
    }

    #[test]
    fn energy_closed_forms() {
        // two points at distance 1
        assert!(discrete_energy(&[c(0.0, 0.0), c(1.0, 0.0)]).abs() < 1e-15);

        // 16th roots of unity: log(n)/(n-1)
        let pts: Vec<Complex64> = (0..16)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / 16.0;
                c(t.cos(), t.sin())
            })
            .collect();
        let expect = 16f64.ln() / 15.0;
        assert!((discrete_energy(&pts) - expect).abs() < 1e-12);

        // scaling by r adds log r
        let scaled: Vec<Complex64> = pts.iter().map(|&z| z * 3.0).collect();
        assert!((discrete_energy(&scaled) - discrete_energy(&pts) - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn leja_base_case_and_monotonicity() {
        let cands: Vec<Complex64> = (0..256)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / 256.0;
                c(t.cos(), t.sin())
            })
            .collect();
        let one = leja_points(&cands, 1);
        assert_eq!(one.len(), 1);
        assert!((one[0].norm() - 1.0).abs() < 1e-15);

        let mut prev = f64::INFINITY;
        for n in [2usize, 4, 8, 16, 24] {
            let pts = leja_points(&cands, n);
            let e = discrete_energy(&pts).exp();
            assert!(e <= prev + 1e-12, "n={n}: {e} > {prev}");
            prev = e;
        }
    }

    #[test]
    fn model_surrogates_match_exterior_potentials() {
        // circle: exterior potential is log|z|
        let circ = model_equilibrium(ModelSet::Circle(1.0), 16);
        assert!(circ.is_probability());
        assert!((circ.potential_at(c(2.0, 0.0)) - 2f64.ln()).abs() < 2e-2);

        // interval [-1,1]: p = log|z + sqrt(z^2-1)| - log 2
        let seg = model_equilibrium(ModelSet::Interval(-1.0, 1.0), 32);
        let expect = (2.0 + 3f64.sqrt()).ln() - 2f64.ln();
        assert!((seg.potential_at(c(2.0, 0.0)) - expect).abs() < 2e-2);
    }
}
