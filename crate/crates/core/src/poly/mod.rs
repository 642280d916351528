//! Coefficient-form polynomials and truncated-Taylor jets.
//!
//! The jet path is what makes high iterates tractable: `iterate_jet`
//! evaluates `P^k` and its first `m` derivatives at a point without ever
//! forming the degree-`d^k` coefficient vector.

mod jet;
mod polynomial;

pub use jet::{iterate_jet, Jet, JetFn, NthDerivative};
pub use polynomial::Polynomial;
