//! Zero location and counting.
//!
//! Coefficient polynomials go through Aberth-Ehrlich simultaneous
//! iteration; black-box jet-evaluable functions go through
//! argument-principle counting with adaptive quadrisection and Newton
//! polishing.

mod aberth;
mod contour;

pub use aberth::aberth_roots;
pub use contour::{count_zeros_winding, locate_zeros_subdivision};

use num_complex::Complex64;

/// Axis-aligned rectangular window `[lo.re, hi.re] x [lo.im, hi.im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    lo: Complex64,
    hi: Complex64,
}

impl Rect {
    pub fn new(lo: Complex64, hi: Complex64) -> Rect {
        assert!(
            lo.re < hi.re && lo.im < hi.im,
            "window corners must satisfy lo < hi componentwise"
        );
        Rect { lo, hi }
    }

    /// Convenience constructor from edge coordinates.
    pub fn from_bounds(x0: f64, y0: f64, x1: f64, y1: f64) -> Rect {
        Rect::new(Complex64::new(x0, y0), Complex64::new(x1, y1))
    }

    pub fn lo(&self) -> Complex64 {
        self.lo
    }

    pub fn hi(&self) -> Complex64 {
        self.hi
    }

    pub fn center(&self) -> Complex64 {
        (self.lo + self.hi) * 0.5
    }

    pub fn width(&self) -> f64 {
        self.hi.re - self.lo.re
    }

    pub fn height(&self) -> f64 {
        self.hi.im - self.lo.im
    }

    /// Diagonal length.
    pub fn diameter(&self) -> f64 {
        (self.hi - self.lo).norm()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.lo.re <= z.re && z.re <= self.hi.re && self.lo.im <= z.im && z.im <= self.hi.im
    }

    /// Distance from `z` to the boundary contour (zero on the boundary,
    /// positive inside and outside).
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let dx = (self.lo.re - z.re).max(z.re - self.hi.re);
        let dy = (self.lo.im - z.im).max(z.im - self.hi.im);
        if dx <= 0.0 && dy <= 0.0 {
            // inside: distance to the nearest edge
            (-dx).min(-dy)
        } else {
            let ox = dx.max(0.0);
            let oy = dy.max(0.0);
            (ox * ox + oy * oy).sqrt()
        }
    }

    pub fn inflate(&self, d: f64) -> Rect {
        Rect::new(
            self.lo - Complex64::new(d, d),
            self.hi + Complex64::new(d, d),
        )
    }

    /// Corners counterclockwise starting at `lo`.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            self.lo,
            Complex64::new(self.hi.re, self.lo.im),
            self.hi,
            Complex64::new(self.lo.re, self.hi.im),
        ]
    }

    /// The four sub-rectangles obtained by splitting at `c` (which must
    /// lie strictly inside).
    pub fn quadrisect_at(&self, c: Complex64) -> [Rect; 4] {
        assert!(
            self.lo.re < c.re && c.re < self.hi.re && self.lo.im < c.im && c.im < self.hi.im,
            "split point must be interior"
        );
        [
            Rect::new(self.lo, c),
            Rect::new(
                Complex64::new(c.re, self.lo.im),
                Complex64::new(self.hi.re, c.im),
            ),
            Rect::new(c, self.hi),
            Rect::new(
                Complex64::new(self.lo.re, c.im),
                Complex64::new(c.re, self.hi.im),
            ),
        ]
    }
}

/// Located zeros with multiplicities, plus the worst normalized residual
/// among reported locations.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<(Complex64, usize)>,
    pub residual: f64,
}

impl RootSet {
    /// Total zero count, with multiplicity.
    pub fn total(&self) -> usize {
        self.roots.iter().map(|&(_, m)| m).sum()
    }

    /// Deterministic presentation order.
    pub fn sort(&mut self) {
        self.roots
            .sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_distance_inside_and_out() {
        let r = Rect::from_bounds(-1.0, -1.0, 1.0, 1.0);
        assert!((r.boundary_distance(Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((r.boundary_distance(Complex64::new(0.9, 0.0)) - 0.1).abs() < 1e-12);
        assert!((r.boundary_distance(Complex64::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((r.boundary_distance(Complex64::new(2.0, 2.0)) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn quadrisection_partitions() {
        let r = Rect::from_bounds(0.0, 0.0, 2.0, 1.0);
        let kids = r.quadrisect_at(Complex64::new(0.7, 0.3));
        let area: f64 = kids.iter().map(|k| k.width() * k.height()).sum();
        assert!((area - 2.0).abs() < 1e-14);
    }
}
