//! Windowed divisors, their pairing with test functions, a matching
//! metric standing in for weak* convergence, and the sparsity /
//! convergence / potential diagnostics built on top.

mod matching;
mod reports;

pub use reports::{
    convergence_check, potential_convergence_report, sparsity_report, ConvergenceRow,
    PotentialRow, SparsityReport, SparsityRow,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rootfind::{Rect, RootSet};
use matching::min_cost_assignment;

const MERGE_TOL: f64 = 1e-12;

/// Finite signed divisor on a rectangular window: points with nonzero
/// integer orders (zeros positive, poles negative).
///
/// Entries within 1e-12 of each other merge by summing orders; zero-order
/// entries vanish. Entries are kept in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisor {
    window: Rect,
    entries: Vec<(Complex64, i64)>,
}

impl Divisor {
    pub fn empty(window: Rect) -> Divisor {
        Divisor { window, entries: Vec::new() }
    }

    pub fn from_entries(window: Rect, entries: Vec<(Complex64, i64)>) -> Divisor {
        debug_assert!(entries.iter().all(|&(z, _)| window.contains(z)));
        let entries = merge(entries);
        Divisor { window, entries }
    }

    /// Divisor of a root set relative to a window: entries at the roots
    /// that fall inside, order = sign * multiplicity.
    pub fn from_rootset(rs: &RootSet, window: Rect, sign: i64) -> Divisor {
        assert!(sign == 1 || sign == -1);
        let entries = rs
            .roots
            .iter()
            .filter(|&&(z, _)| window.contains(z))
            .map(|&(z, m)| (z, sign * m as i64))
            .collect();
        Divisor::from_entries(window, entries)
    }

    pub fn window(&self) -> &Rect {
        &self.window
    }

    pub fn entries(&self) -> &[(Complex64, i64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&(_, v)| v > 0)
    }

    /// Sum of positive orders.
    pub fn total_positive(&self) -> i64 {
        self.entries.iter().map(|&(_, v)| v.max(0)).sum()
    }

    /// Sum of |negative orders|.
    pub fn total_negative(&self) -> i64 {
        self.entries.iter().map(|&(_, v)| (-v).max(0)).sum()
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            window: self.window,
            entries: self.entries.iter().map(|&(z, v)| (z, -v)).collect(),
        }
    }

    /// Integer multiple m * self.
    pub fn scale(&self, m: i64) -> Divisor {
        if m == 0 {
            return Divisor::empty(self.window);
        }
        Divisor {
            window: self.window,
            entries: self.entries.iter().map(|&(z, v)| (z, m * v)).collect(),
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        assert_eq!(self.window, other.window, "divisors must share a window");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Divisor::from_entries(self.window, entries)
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    /// The pairing xi(f) = sum xi(z) f(z); errors when the support disk
    /// of `f` is not contained in the window.
    pub fn pair(&self, f: &TestFunction) -> Result<f64> {
        let lo = self.window.lo();
        let hi = self.window.hi();
        let c = f.center;
        let r = f.outer_radius;
        if c.re - r < lo.re || c.re + r > hi.re || c.im - r < lo.im || c.im + r > hi.im {
            return Err(Error::SupportEscapesWindow);
        }
        Ok(self
            .entries
            .iter()
            .map(|&(z, v)| v as f64 * f.eval(z))
            .sum())
    }

    /// Signed point multisets (positive part, negative part), orders
    /// expanded to repetitions.
    fn multisets(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &(z, v) in &self.entries {
            if v > 0 {
                for _ in 0..v {
                    pos.push(z);
                }
            } else {
                for _ in 0..(-v) {
                    neg.push(z);
                }
            }
        }
        (pos, neg)
    }
}

fn merge(mut entries: Vec<(Complex64, i64)>) -> Vec<(Complex64, i64)> {
    entries.retain(|&(_, v)| v != 0);
    entries.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
    // union-find over near-coincident points
    let n = entries.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (entries[i].0 - entries[j].0).norm() <= MERGE_TOL {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut merged: Vec<(Complex64, i64)> = Vec::new();
    let mut seen: Vec<(usize, usize)> = Vec::new(); // (root, index into merged)
    for i in 0..n {
        let r = find(&mut parent, i);
        if let Some(&(_, idx)) = seen.iter().find(|&&(root, _)| root == r) {
            merged[idx].1 += entries[i].1;
        } else {
            seen.push((r, merged.len()));
            merged.push(entries[i]);
        }
    }
    merged.retain(|&(_, v)| v != 0);
    merged.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
    merged
}

/// Radial ramp test function: 1 on the inner disk, 0 outside the outer
/// disk, linear in |z - center| between.
#[derive(Debug, Clone, Copy)]
pub struct TestFunction {
    pub center: Complex64,
    pub inner_radius: f64,
    pub outer_radius: f64,
}

impl TestFunction {
    pub fn new(center: Complex64, inner_radius: f64, outer_radius: f64) -> TestFunction {
        assert!(inner_radius > 0.0 && outer_radius > inner_radius);
        TestFunction { center, inner_radius, outer_radius }
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        let r = (z - self.center).norm();
        if r <= self.inner_radius {
            1.0
        } else if r >= self.outer_radius {
            0.0
        } else {
            (self.outer_radius - r) / (self.outer_radius - self.inner_radius)
        }
    }
}

/// Result of comparing two divisors: either a transport distance or a
/// count mismatch (which is data, not an error — small k genuinely
/// disagrees before convergence kicks in).
#[derive(Debug, Clone, PartialEq)]
pub enum MatchOutcome {
    Distance(f64),
    Incomparable {
        positive_totals: (i64, i64),
        negative_totals: (i64, i64),
    },
}

impl MatchOutcome {
    pub fn distance(&self) -> Option<f64> {
        match self {
            MatchOutcome::Distance(d) => Some(*d),
            MatchOutcome::Incomparable { .. } => None,
        }
    }

    pub fn is_comparable(&self) -> bool {
        matches!(self, MatchOutcome::Distance(_))
    }
}

/// Minimum-cost matching distance between equal-count divisors.
///
/// Positive parts are matched to positive parts and negative to negative;
/// transporting order between opposite signs is meaningless for zero/pole
/// sets. Total mismatch in either sign yields `Incomparable`.
pub fn matching_distance(a: &Divisor, b: &Divisor) -> MatchOutcome {
    assert_eq!(a.window, b.window, "divisors must share a window");
    let (pos_a, neg_a) = a.multisets();
    let (pos_b, neg_b) = b.multisets();
    if pos_a.len() != pos_b.len() || neg_a.len() != neg_b.len() {
        return MatchOutcome::Incomparable {
            positive_totals: (pos_a.len() as i64, pos_b.len() as i64),
            negative_totals: (neg_a.len() as i64, neg_b.len() as i64),
        };
    }
    MatchOutcome::Distance(transport(&pos_a, &pos_b) + transport(&neg_a, &neg_b))
}

fn transport(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let cost: Vec<Vec<f64>> = xs
        .iter()
        .map(|&x| ys.iter().map(|&y| (x - y).norm()).collect())
        .collect();
    min_cost_assignment(&cost)
}
