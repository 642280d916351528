use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rootfind::RootSet;

const MAX_SWEEPS: usize = 500;
const CLUSTER_SLACK: f64 = 8.0;

/// All `degree` roots of `p` by Aberth-Ehrlich simultaneous iteration.
///
/// Iterates until every normalized residual `|p(z)| / (1+|z|)^d` is at
/// most `tol`. Clusters of iterates within `tol^(1/m)` of each other are
/// merged into a single root of multiplicity `m` and re-polished on
/// `p^(m-1)`.
pub fn aberth_roots(p: &Polynomial, tol: f64) -> Result<RootSet> {
    assert!(p.degree() >= 1, "root finding needs degree >= 1");
    assert!(
        p.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite()),
        "coefficients must be finite"
    );
    assert!(tol > 0.0);
    let p = p.monic();
    let d = p.degree();

    if d == 1 {
        let root = -p.coeffs()[0];
        return Ok(RootSet {
            roots: vec![(root, 1)],
            residual: normalized_residual(&p, root),
        });
    }

    let dp = p.derivative().expect("degree >= 1");
    let mut zs = initial_guesses(&p);

    let mut residual = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let zi = zs[i];
            let pv = p.eval(zi);
            let dv = dp.eval(zi);
            let w = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // on a critical point: nudge off it
                Complex64::new(1e-12, 1e-12)
            };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &zj) in zs.iter().enumerate() {
                if j != i {
                    s += 1.0 / (zi - zj);
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-290 { w / denom } else { w };
            zs[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + zs[i].norm()));
        }
        residual = zs
            .iter()
            .map(|&z| normalized_residual(&p, z))
            .fold(0.0, f64::max);
        if residual <= tol {
            break;
        }
        if max_step < 1e-16 {
            // stagnated above tolerance
            break;
        }
    }
    if residual > tol {
        return Err(Error::NonConvergence { best: zs, residual });
    }

    let mut rs = merge_clusters(&p, zs, tol);
    rs.sort();
    Ok(rs)
}

fn normalized_residual(p: &Polynomial, z: Complex64) -> f64 {
    p.eval(z).norm() / (1.0 + z.norm()).powi(p.degree() as i32)
}

/// Seeds on a circle of radius the Cauchy root bound, equally spaced with
/// a fixed irrational rotation so seed symmetry never locks onto root
/// symmetry.
fn initial_guesses(p: &Polynomial) -> Vec<Complex64> {
    let d = p.degree();
    let r = p.root_bound();
    let golden = 0.618_033_988_749_894_9_f64;
    (0..d)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * (i as f64 / d as f64 + golden);
            Complex64::new(r * theta.cos(), r * theta.sin())
        })
        .collect()
}

/// Greedy multiplicity detection: for candidate multiplicity `mu` from the
/// degree downward, single-linkage clusters at threshold `8 * tol^(1/mu)`
/// are accepted as an `m`-fold root (m = cluster size) when the cluster is
/// at least `mu` strong and the cluster center, polished on `p^(m-1)`,
/// actually annihilates `p`. Survivors are simple roots.
fn merge_clusters(p: &Polynomial, mut zs: Vec<Complex64>, tol: f64) -> RootSet {
    zs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let d = p.degree();
    let mut assigned = vec![false; d];
    let mut out: Vec<(Complex64, usize)> = Vec::new();

    for mu in (2..=d).rev() {
        let tau = CLUSTER_SLACK * tol.powf(1.0 / mu as f64);
        let clusters = single_linkage(&zs, &assigned, tau);
        for cluster in clusters {
            if cluster.len() < mu {
                continue;
            }
            let m = cluster.len();
            let centroid = cluster.iter().map(|&i| zs[i]).sum::<Complex64>() / m as f64;
            if let Some(polished) = polish_multiple(p, centroid, m) {
                if normalized_residual(p, polished) <= tol * 64.0 {
                    for &i in &cluster {
                        assigned[i] = true;
                    }
                    out.push((polished, m));
                }
            }
        }
    }

    for (i, &z) in zs.iter().enumerate() {
        if !assigned[i] {
            out.push((z, 1));
        }
    }

    let residual = out
        .iter()
        .map(|&(z, _)| normalized_residual(p, z))
        .fold(0.0, f64::max);
    RootSet { roots: out, residual }
}

/// Connected components of the "within tau" graph on unassigned iterates.
fn single_linkage(zs: &[Complex64], assigned: &[bool], tau: f64) -> Vec<Vec<usize>> {
    let n = zs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        for j in (i + 1)..n {
            if assigned[j] {
                continue;
            }
            if (zs[i] - zs[j]).norm() <= tau {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        if !assigned[i] {
            let r = find(&mut parent, i);
            groups[r].push(i);
        }
    }
    groups.retain(|g| g.len() >= 2);
    groups
}

/// Newton on `p^(m-1)` restores quadratic convergence at an m-fold root.
fn polish_multiple(p: &Polynomial, start: Complex64, m: usize) -> Option<Complex64> {
    let g = p.derivative_n(m - 1).ok()?;
    if g.degree() == 0 {
        return None;
    }
    let dg = g.derivative().ok()?;
    let mut z = start;
    for _ in 0..64 {
        let dv = dg.eval(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = g.eval(z) / dv;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    if z.re.is_finite() && z.im.is_finite() {
        Some(z)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_with_imaginary_roots() {
        // z^2 + 0.5: roots +-i/sqrt(2)
        let p = Polynomial::new(vec![c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let rs = aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.total(), 2);
        let target = 0.5f64.sqrt();
        let mut found: Vec<f64> = rs.roots.iter().map(|&(z, _)| z.im).collect();
        found.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((found[0] + target).abs() < 1e-10);
        assert!((found[1] - target).abs() < 1e-10);
        assert!(rs.roots.iter().all(|&(z, _)| z.re.abs() < 1e-10));
    }

    #[test]
    fn pure_cube_merges_to_triple_root() {
        let p = Polynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let rs = aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].1, 3);
        assert!(rs.roots[0].0.norm() < 1e-6);
    }

    #[test]
    fn chebyshev_roots_recovered() {
        // monic polynomial of degree 8 built from cos((2j-1)pi/16)
        let roots: Vec<Complex64> = (1..=8)
            .map(|j| c(((2 * j - 1) as f64 * std::f64::consts::PI / 16.0).cos(), 0.0))
            .collect();
        let p = Polynomial::from_roots(&roots);
        let rs = aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.total(), 8);
        let mut got: Vec<f64> = rs.roots.iter().map(|&(z, _)| z.re).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want: Vec<f64> = roots.iter().map(|z| z.re).collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-8, "{g} vs {w}");
        }
    }

    #[test]
    fn repeated_pair_detected_with_multiplicity() {
        // (z^2-1)^3: roots +-1, multiplicity 3 each
        let mut p = Polynomial::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let base = p.clone();
        p = p.mul(&base).mul(&base);
        let rs = aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.roots.len(), 2);
        for &(z, m) in &rs.roots {
            assert_eq!(m, 3);
            assert!((z.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn distinct_near_roots_stay_separate() {
        let roots = vec![c(0.3, 0.0), c(0.3005, 0.0), c(-1.0, 0.5)];
        let p = Polynomial::from_roots(&roots);
        let rs = aberth_roots(&p, 1e-13).unwrap();
        assert_eq!(rs.roots.len(), 3);
        assert!(rs.roots.iter().all(|&(_, m)| m == 1));
    }

    #[test]
    fn high_multiplicity_pair_survives_greedy_merge() {
        // (z^2-1)^8, degree 16: the top-level linkage threshold spans both
        // clusters; residual validation must keep them apart.
        let base = Polynomial::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let mut p = Polynomial::constant(c(1.0, 0.0));
        for _ in 0..8 {
            p = p.mul(&base);
        }
        let rs = aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(rs.roots.len(), 2);
        for &(z, m) in &rs.roots {
            assert_eq!(m, 8);
            assert!((z.norm() - 1.0).abs() < 1e-6);
        }
    }
}
