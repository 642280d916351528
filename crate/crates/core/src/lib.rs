//! A desk-scale numerical laboratory for the interplay between the zeros
//! of a polynomial sequence, the zeros of its derivatives, and the
//! critical points of the limiting logarithmic potential.
//!
//! The crate is organized around:
//!
//! - [`poly`]: coefficient polynomials and truncated-Taylor jets, so that
//!   high iterates `P^k` stay evaluable without coefficient blowup;
//! - [`rootfind`]: Aberth-Ehrlich simultaneous iteration and
//!   argument-principle zero counting / location on rectangles;
//! - [`potential`]: discrete measures, their potentials, Cauchy
//!   transforms, energies, and equilibrium-measure surrogates;
//! - [`dynamics`]: filled-Julia membership, the escape-rate Green's
//!   function, and its critical points via backward orbits;
//! - [`families`]: generators for the studied polynomial sequences
//!   (iterates, orthogonal, closed-form oracles);
//! - [`divisor`]: windowed zero/pole divisors, pairing against ramp test
//!   functions, a matching metric, and the convergence/sparsity reports.

pub mod divisor;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod hull;
pub mod poly;
pub mod potential;
pub mod quad;
pub mod rootfind;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use divisor::{Divisor, MatchOutcome, TestFunction};
pub use dynamics::{DynSystem, Membership};
pub use families::Family;
pub use poly::{iterate_jet, Jet, JetFn, Polynomial};
pub use potential::{DiscreteMeasure, ModelSet, Polyline};
pub use rootfind::{
    aberth_roots, count_zeros_winding, locate_zeros_subdivision, Rect, RootSet,
};
