use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Differentiation of a degree-0 polynomial.
    #[error("constant polynomial")]
    ConstantPolynomial,

    /// An orbit or jet iteration produced a non-finite value.
    #[error("escaped-to-infinity at step {step}")]
    EscapedToInfinity { step: usize },

    /// A simultaneous root iteration hit its cap before reaching the
    /// requested residual. Carries the best iterate set found.
    #[error("root iteration did not converge (residual {residual:.3e})")]
    NonConvergence {
        best: Vec<Complex64>,
        residual: f64,
    },

    /// A contour or window boundary passes too close to a zero for the
    /// requested operation to be trustworthy.
    #[error("boundary-unsafe")]
    BoundaryUnsafe,

    /// Evaluation exactly on an atom of a discrete measure.
    #[error("pole")]
    Pole,

    /// An integration path passes through (or within 1e-12 of) the
    /// support of the measure.
    #[error("path-through-support")]
    PathThroughSupport,

    /// A window handed to a basin-only operation meets the filled-in
    /// Julia set.
    #[error("window-not-in-basin")]
    WindowNotInBasin,

    /// A coefficient representation was requested beyond the degree the
    /// double-precision path supports.
    #[error("degree-too-large: {degree} exceeds {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    /// An orthogonal family was requested past the rank of the measure.
    #[error("measure-support-too-small")]
    MeasureSupportTooSmall,

    /// A test function's support disk is not contained in the divisor
    /// window.
    #[error("support-escapes-window")]
    SupportEscapesWindow,

    /// A dynamics operation requires a monic polynomial.
    #[error("non-monic polynomial")]
    NonMonic,
}

pub type Result<T> = std::result::Result<T, Error>;
