use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::JetFn;
use crate::quad::gl16;
use crate::rootfind::{Rect, RootSet};

const MAX_PANELS_PER_EDGE: usize = 256;
const WINDING_STABLE: f64 = 0.05;
const INTEGER_SNAP: f64 = 0.25;
const JITTER_ATTEMPTS: usize = 8;

/// Number of zeros of `f` inside `rect` by the argument principle.
///
/// The boundary integral of `f'/f` is computed with composite 16-point
/// Gauss-Legendre panels per edge, doubling the panel count until the
/// value stabilizes within 0.05 and sits within 0.25 of an integer.
/// A zero on (or numerically indistinguishable from) the boundary
/// surfaces as `Error::BoundaryUnsafe`.
pub fn count_zeros_winding(f: &(impl JetFn + ?Sized), rect: &Rect) -> Result<usize> {
    let mut prev: Option<Complex64> = None;
    let mut panels = 2usize;
    while panels <= MAX_PANELS_PER_EDGE {
        let w = winding_value(f, rect, panels)?;
        if let Some(p) = prev {
            let nearest = w.re.round();
            if (w - p).norm() < WINDING_STABLE
                && (w - Complex64::new(nearest, 0.0)).norm() < INTEGER_SNAP
            {
                if nearest < 0.0 {
                    return Err(Error::BoundaryUnsafe);
                }
                return Ok(nearest as usize);
            }
        }
        prev = Some(w);
        panels *= 2;
    }
    Err(Error::BoundaryUnsafe)
}

fn winding_value(f: &(impl JetFn + ?Sized), rect: &Rect, panels: usize) -> Result<Complex64> {
    let corners = rect.corners();
    let (nodes, weights) = gl16();
    let mut acc = Complex64::new(0.0, 0.0);
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let seg = (b - a) / panels as f64;
        for p in 0..panels {
            let pa = a + seg * p as f64;
            let mid = pa + seg * 0.5;
            let half = seg * 0.5;
            for (&x, &w) in nodes.iter().zip(weights.iter()) {
                let z = mid + half * x;
                let jet = f.jet(z, 1)?;
                let v = jet.value();
                if v.norm() < 1e-300 {
                    return Err(Error::BoundaryUnsafe);
                }
                acc += w * (jet.derivative(1) / v) * half;
            }
        }
    }
    Ok(acc / Complex64::new(0.0, 2.0 * std::f64::consts::PI))
}

/// Locates all zeros of `f` in `rect` by recursive quadrisection.
///
/// Boxes counting zero are discarded; once a box with a positive count
/// shrinks to `tol` its count is taken as the multiplicity and the zero is
/// polished by Newton iteration on `f^(count-1)`. Subdivision crosses that
/// land on a zero are retried at deterministically jittered offsets
/// (golden-ratio multiples of the box diameter times 1e-3); after eight
/// failures the boundary error propagates.
pub fn locate_zeros_subdivision(
    f: &(impl JetFn + ?Sized),
    rect: &Rect,
    tol: f64,
) -> Result<RootSet> {
    assert!(tol > 0.0);
    let total = count_zeros_winding(f, rect)?;
    let mut found: Vec<(Complex64, usize)> = Vec::new();
    subdivide(f, rect, total, tol, &mut found)?;
    debug_assert_eq!(found.iter().map(|&(_, m)| m).sum::<usize>(), total);

    let mut residual = 0.0f64;
    for &(z, m) in &found {
        let jet = f.jet(z, m)?;
        let scale = jet.derivative(m).norm().max(1.0);
        residual = residual.max(jet.value().norm() / scale);
    }
    let mut rs = RootSet { roots: found, residual };
    rs.sort();
    Ok(rs)
}

fn subdivide(
    f: &(impl JetFn + ?Sized),
    rect: &Rect,
    count: usize,
    tol: f64,
    found: &mut Vec<(Complex64, usize)>,
) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    if rect.diameter() <= tol {
        found.push((polish(f, rect.center(), count), count));
        return Ok(());
    }

    let diam = rect.diameter();
    let golden = 0.618_033_988_749_894_9_f64;
    let golden2 = 0.381_966_011_250_105_1_f64;
    for attempt in 0..JITTER_ATTEMPTS {
        let a = attempt as f64;
        let split = rect.center()
            + Complex64::new(
                diam * 1e-3 * (a * golden).fract(),
                diam * 1e-3 * (a * golden2).fract(),
            );
        let children = rect.quadrisect_at(split);
        let mut counts = [0usize; 4];
        let mut ok = true;
        for (i, child) in children.iter().enumerate() {
            match count_zeros_winding(f, child) {
                Ok(c) => counts[i] = c,
                Err(Error::BoundaryUnsafe) => {
                    ok = false;
                    break;
                }
                Err(other) => return Err(other),
            }
        }
        if ok && counts.iter().sum::<usize>() == count {
            for (child, &c) in children.iter().zip(&counts) {
                subdivide(f, child, c, tol, found)?;
            }
            return Ok(());
        }
    }
    Err(Error::BoundaryUnsafe)
}

/// Newton iteration on `f^(mu-1)`, which has a simple zero where `f` has an
/// mu-fold one. Keeps the best iterate seen in case of stalls.
fn polish(f: &(impl JetFn + ?Sized), start: Complex64, mu: usize) -> Complex64 {
    let mut z = start;
    let mut best = start;
    let mut best_val = f64::INFINITY;
    for _ in 0..80 {
        let jet = match f.jet(z, mu) {
            Ok(j) => j,
            Err(_) => break,
        };
        let g = jet.taylor()[mu - 1];
        let dg = jet.taylor()[mu] * mu as f64;
        if g.norm() < best_val {
            best_val = g.norm();
            best = z;
        }
        if dg.norm() == 0.0 {
            break;
        }
        let step = g / dg;
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return best;
        }
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            if let Ok(jet) = f.jet(z, mu) {
                if jet.taylor()[mu - 1].norm() <= best_val {
                    return z;
                }
            }
            return best;
        }
    }
    best
}
