//! Gauss-Legendre quadrature on segments in the plane.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Nodes are computed by Newton iteration on the Legendre recurrence,
/// seeded with the Chebyshev-angle approximation.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached 16-point rule; the contour integrator uses it panel by panel.
pub fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Integrate `f` along the straight segment from `a` to `b` with a single
/// 16-point panel.
pub fn segment_panel<E>(
    f: &mut impl FnMut(Complex64) -> std::result::Result<Complex64, E>,
    a: Complex64,
    b: Complex64,
) -> std::result::Result<Complex64, E> {
    let (nodes, weights) = gl16();
    let mid = (a + b) * 0.5;
    let half = (b - a) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in nodes.iter().zip(weights.iter()) {
        acc += w * f(mid + half * x)?;
    }
    Ok(acc * half)
}

/// Adaptive integration of `f` along the segment `a..b`: a panel is
/// accepted when it agrees with its own bisection to `tol`, otherwise the
/// halves are refined recursively.
pub fn segment_adaptive<E>(
    f: &mut impl FnMut(Complex64) -> std::result::Result<Complex64, E>,
    a: Complex64,
    b: Complex64,
    tol: f64,
    max_depth: usize,
) -> std::result::Result<Complex64, E> {
    let coarse = segment_panel(f, a, b)?;
    refine(f, a, b, coarse, tol, max_depth)
}

fn refine<E>(
    f: &mut impl FnMut(Complex64) -> std::result::Result<Complex64, E>,
    a: Complex64,
    b: Complex64,
    coarse: Complex64,
    tol: f64,
    depth: usize,
) -> std::result::Result<Complex64, E> {
    let mid = (a + b) * 0.5;
    let left = segment_panel(f, a, mid)?;
    let right = segment_panel(f, mid, b)?;
    let fine = left + right;
    if (fine - coarse).norm() <= tol || depth == 0 {
        return Ok(fine);
    }
    let l = refine(f, a, mid, left, tol * 0.5, depth - 1)?;
    let r = refine(f, mid, b, right, tol * 0.5, depth - 1)?;
    Ok(l + r)
}
