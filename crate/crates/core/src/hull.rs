//! Planar convex hulls, used for Gauss-Lucas and Fejer containment checks.

use num_complex::Complex64;

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull by Andrew's monotone chain, counterclockwise, no repeated
/// endpoint. Degenerate inputs (all collinear) yield the two extreme
/// points; a single distinct point yields itself.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
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

/// Whether `z` lies in the hull inflated by `slack` (hull points given
/// counterclockwise, as produced by [`convex_hull`]).
pub fn hull_contains(hull: &[Complex64], z: Complex64, slack: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (z - hull[0]).norm() <= slack,
        2 => dist_point_segment(z, hull[0], hull[1]) <= slack,
        n => {
            let mut inside = true;
            let mut boundary_dist = f64::INFINITY;
            for i in 0..n {
                let a = hull[i];
                let b = hull[(i + 1) % n];
                if cross(a, b, z) < 0.0 {
                    inside = false;
                }
                boundary_dist = boundary_dist.min(dist_point_segment(z, a, b));
            }
            inside || boundary_dist <= slack
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_hull() {
        let pts = vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(0.5, 0.5)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(hull_contains(&hull, c(0.5, 0.5), 0.0));
        assert!(hull_contains(&hull, c(1.0, 1.0), 1e-12));
        assert!(!hull_contains(&hull, c(1.2, 0.5), 1e-3));
        assert!(hull_contains(&hull, c(1.0005, 0.5), 1e-3));
    }

    #[test]
    fn collinear_hull() {
        let pts = vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 2);
        assert!(hull_contains(&hull, c(0.3, 0.0), 1e-12));
        assert!(!hull_contains(&hull, c(0.3, 0.1), 1e-3));
    }
}
