use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum JvfError {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("scale beta_{0} is not a positive real")]
    NonPositiveScale(usize),
    #[error("shift A_{0} has a nonzero y-component")]
    ShiftHasYComponent(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shift A_{0} has the wrong dimension")]
    ShiftDimensionMismatch(usize),
    #[error("inconsistent parameter lists: {0}")]
    InvalidParams(String),
    #[error("{requested} levels requested but only {available} are defined")]
    LevelsExceeded { requested: usize, available: usize },
    #[error("at least one level is required")]
    ZeroLevels,
    #[error("point lies on the boundary (zero y-component)")]
    OnBoundary,
    #[error("not converged after {levels} levels (bound {bound:e})")]
    NotConverged { levels: usize, bound: f64 },
    #[error("fragment {0} is zero or infinite")]
    FragmentSingular(usize),
    #[error("degenerate denominator polynomial")]
    DegenerateDenominator,
    #[error("y-component of the vector polynomial vanishes")]
    DegeneratePolynomial,
    #[error("parameters are not periodic")]
    NotPeriodic,
    #[error("no attractive fixed point: iteration did not settle")]
    NoAttractiveFixedPoint,
    #[error("point or shift {0} does not lie in the planar frame")]
    NotPlanar(usize),
}
