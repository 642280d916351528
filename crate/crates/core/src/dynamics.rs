//! Polynomial-iteration potential theory: escape radius, filled-Julia
//! membership, the escape-rate Green's function, and its critical points
//! via backward orbits of escaping critical points.

use num_complex::Complex64;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rootfind::{aberth_roots, Rect};

/// A monic polynomial of degree >= 2 together with a verified escape
/// radius: |z| > R implies |P(z)| > 2|z|.
#[derive(Debug, Clone)]
pub struct DynSystem {
    p: Polynomial,
    escape_radius: f64,
    max_iter: usize,
}

/// Verdict of the escape iteration. Bounded orbits are only
/// semi-decidable, so `Inside` carries an `undecided` flag: false only
/// when the orbit landed exactly on a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Membership {
    Escaped { step: usize },
    Inside { undecided: bool },
}

impl Membership {
    pub fn is_escaped(&self) -> bool {
        matches!(self, Membership::Escaped { .. })
    }

    pub fn escaped_step(&self) -> Option<usize> {
        match self {
            Membership::Escaped { step } => Some(*step),
            Membership::Inside { .. } => None,
        }
    }
}

/// A point of the critical divisor of the Green's function: a preimage
/// (at `depth` pullbacks) of an escaping critical point of P.
#[derive(Debug, Clone, Copy)]
pub struct Precritical {
    pub point: Complex64,
    pub order: usize,
    pub depth: usize,
}

/// The smallest r >= 1 with rho^d - sum |a_j| rho^j >= 2 rho for all
/// rho >= r, found by bisection from the coefficient bound.
pub fn escape_radius(p: &Polynomial) -> Result<f64> {
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    let d = p.degree();
    assert!(d >= 2, "escape radius needs degree >= 2");
    let tail: Vec<f64> = p.coeffs()[..d].iter().map(|c| c.norm()).collect();
    let tail_sum: f64 = tail.iter().sum();
    let margin = |rho: f64| -> f64 {
        let lower: f64 = tail
            .iter()
            .enumerate()
            .map(|(j, &a)| a * rho.powi(j as i32))
            .sum();
        rho.powi(d as i32) - lower - 2.0 * rho
    };

    // margin(1) = -1 - sum|a_j| < 0 always, so 1 brackets from below
    let mut lo = 1.0f64;
    let mut hi = (2.0 + tail_sum).powf(1.0 / (d as f64 - 1.0)).max(1.0);
    let mut guard = 0;
    while margin(hi) < 0.0 {
        hi *= 2.0;
        guard += 1;
        assert!(guard < 200, "escape radius bracket failed");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if margin(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(hi)
}

impl DynSystem {
    pub fn new(p: Polynomial) -> Result<DynSystem> {
        let r = escape_radius(&p)?;
        Ok(DynSystem {
            p,
            escape_radius: r,
            max_iter: 1000,
        })
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> DynSystem {
        assert!(max_iter > 0);
        self.max_iter = max_iter;
        self
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.p
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    pub fn escape_radius(&self) -> f64 {
        self.escape_radius
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    /// Escape-time membership test for the filled-in Julia set.
    pub fn in_filled_julia(&self, z: Complex64) -> Membership {
        let mut w = z;
        for step in 0..self.max_iter {
            if w.norm() > self.escape_radius {
                return Membership::Escaped { step };
            }
            let next = self.p.eval(w);
            if next == w {
                // exact fixed point: membership decided
                return Membership::Inside { undecided: false };
            }
            w = next;
        }
        Membership::Inside { undecided: true }
    }

    /// Green's function of the escape basin with pole at infinity,
    /// g = lim d^{-k} log |P^k|, computed in log space with tail
    /// refinement; 0 for points that never escape within `max_iter`.
    pub fn green_escape(&self, z: Complex64) -> f64 {
        let d = self.degree() as f64;
        let mut w = z;
        let mut k = 0usize;
        while w.norm() <= self.escape_radius {
            if k >= self.max_iter {
                return 0.0;
            }
            w = self.p.eval(w);
            k += 1;
        }
        let mut g = w.norm().ln() / d.powi(k as i32);
        // refine until the increment dies; past 1e100 the correction is
        // below machine precision for any coefficient set
        while w.norm() < 1e100 {
            w = self.p.eval(w);
            k += 1;
            let next = w.norm().ln() / d.powi(k as i32);
            let delta = (next - g).abs();
            g = next;
            if delta < 1e-12 {
                break;
            }
        }
        g
    }

    /// The normalized logarithmic derivative (P^k)' / (d^k P^k), the
    /// degree-k approximant of g'.
    ///
    /// Iterates the order-1 jet, switching to exact ratio doubling once
    /// the orbit value clears 1e100 (beyond that, P acts as its leading
    /// monomial to machine precision), so arbitrary k stays finite.
    pub fn log_derivative(&self, k: usize, z: Complex64) -> Result<Complex64> {
        let d = self.degree() as f64;
        let dp = self.p.derivative().expect("degree >= 2");
        let mut val = z;
        let mut der = Complex64::new(1.0, 0.0);
        let mut steps = 0usize;
        for step in 0..k {
            if val.norm() > 1e100 {
                // past here each application multiplies the ratio by d
                break;
            }
            der = dp.eval(val) * der;
            val = self.p.eval(val);
            steps = step + 1;
            if !(der.re.is_finite() && der.im.is_finite() && val.re.is_finite() && val.im.is_finite()) {
                return Err(Error::EscapedToInfinity { step });
            }
        }
        if val.norm() == 0.0 {
            return Err(Error::Pole);
        }
        // (P^k)'/(d^k P^k) = (P^steps)'/(P^steps) * d^(k-steps) / d^k
        Ok(der / val * d.powi(-(steps as i32)))
    }

    /// All preimages up to `depth` pullbacks of the escaping critical
    /// points of P, with the order each contributes to the divisor of
    /// g': ord(w) = ord_w(P') + (1 + ord_w(P')) ord(P(w)).
    pub fn precritical_points(&self, depth: usize) -> Result<Vec<Precritical>> {
        let dp = self.p.derivative().expect("degree >= 2");
        let crit = aberth_roots(&dp, 1e-12)?;
        let escaping: Vec<(Complex64, usize)> = crit
            .roots
            .iter()
            .copied()
            .filter(|&(c, _)| self.in_filled_julia(c).is_escaped())
            .collect();

        let mut out: Vec<Precritical> = Vec::new();
        let mut level: Vec<(Complex64, usize)> = Vec::new();
        for &(c, _) in &escaping {
            let order = self.forward_order(c, &escaping, escaping.len() + 1);
            debug_assert!(order >= 1);
            level.push((c, order));
            out.push(Precritical { point: c, order, depth: 0 });
        }

        for j in 1..=depth {
            let mut next: Vec<(Complex64, usize)> = Vec::new();
            for &(v, ord_v) in &level {
                let shifted = self.p.sub(&Polynomial::constant(v));
                let pre = aberth_roots(&shifted, 1e-12)?;
                for &(w, e_w) in &pre.roots {
                    let order = (e_w - 1) + e_w * ord_v;
                    next.push((w, order));
                }
            }
            for &(w, order) in &next {
                // a preimage may coincide with a shallower entry (critical
                // point hit again); the chain-rule order agrees, keep one
                if !out.iter().any(|p| (p.point - w).norm() <= 1e-12) {
                    out.push(Precritical { point: w, order, depth: j });
                }
            }
            level = next;
        }

        out.sort_by(|a, b| {
            (a.depth, a.point.re, a.point.im)
                .partial_cmp(&(b.depth, b.point.re, b.point.im))
                .unwrap()
        });
        Ok(out)
    }

    /// Order of g' along the forward orbit from `x`: zero unless the
    /// orbit runs into an escaping critical point.
    fn forward_order(
        &self,
        x: Complex64,
        escaping: &[(Complex64, usize)],
        budget: usize,
    ) -> usize {
        if budget == 0 {
            return 0;
        }
        let mut w = x;
        for _ in 0..self.max_iter {
            if let Some(&(c, m)) = escaping.iter().find(|&&(c, _)| (w - c).norm() <= 1e-12) {
                let downstream = self.forward_order(self.p.eval(c), escaping, budget - 1);
                return m + (1 + m) * downstream;
            }
            if w.norm() > self.escape_radius.max(1e3) {
                return 0;
            }
            w = self.p.eval(w);
        }
        0
    }

    /// The nonnegative divisor of zeros of g' in `window`, computed as
    /// the window part of the backward orbit ({orders from the chain
    /// rule}) of the escaping critical points, down to `depth` pullbacks.
    ///
    /// Differentiating g(P(z)) = d g(z) gives g'(P(z)) P'(z) = d g'(z),
    /// so in the basin the zeros of g' are exactly the precritical points
    /// of the escaping critical points; the identity above also yields
    /// the orders. Cross-validated against jet-computed (P^k)'/(d^k P^k)
    /// in the test suite.
    pub fn green_critical_points(&self, window: &Rect, depth: usize) -> Result<Divisor> {
        // sampled check that the window sits in the escape basin
        let n = 16;
        for i in 0..=n {
            for j in 0..=n {
                let z = Complex64::new(
                    window.lo().re + window.width() * i as f64 / n as f64,
                    window.lo().im + window.height() * j as f64 / n as f64,
                );
                if !self.in_filled_julia(z).is_escaped() {
                    return Err(Error::WindowNotInBasin);
                }
            }
        }

        let pre = self.precritical_points(depth)?;
        let mut entries: Vec<(Complex64, i64)> = Vec::new();
        for pc in &pre {
            if window.boundary_distance(pc.point) <= 1e-9 {
                return Err(Error::BoundaryUnsafe);
            }
            if window.contains(pc.point) {
                entries.push((pc.point, pc.order as i64));
            }
        }
        Ok(Divisor::from_entries(*window, entries))
    }
}
