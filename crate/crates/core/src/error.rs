use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the decomposition and certification pipeline.
///
/// Hypothesis failures (an equilibrium assumption that does not hold, a
/// divergence sign that rules out stability, ...) are distinguished from
/// internal invariant violations, which always indicate a solver bug.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("axis {axis} out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },
    #[error("matrix is not symmetric within tolerance")]
    NotSymmetric,
    #[error("vector field does not vanish at the origin")]
    NotEquilibrium,
    #[error("divergence of the field at the origin is not negative")]
    DivergenceNotNegative,
    #[error("polynomial is not harmonic")]
    NotHarmonic,
    #[error("potential gradient does not vanish at the origin")]
    GradientNotZeroAtOrigin,
    #[error("Hessian of the potential at the origin is not positive definite")]
    HessianNotPositiveDefinite,
    #[error("operation requires a planar (two-dimensional) field")]
    NotPlanar,
    #[error("point lies on or outside the unit circle")]
    PointNotInterior,
    #[error("no feasible point: Hessian positivity fails for every candidate")]
    NoFeasiblePoint,
    #[error("decomposition is not strictly orthogonal")]
    NotStrictlyOrthogonal,
    #[error("trace of the Jacobian at the origin is not negative")]
    NonNegativeTrace,
    #[error("trajectory diverged at t = {time}")]
    Diverged { time: f64, state: Vec<f64> },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that report a failed mathematical hypothesis rather
    /// than bad input or an internal bug.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotEquilibrium
                | Error::DivergenceNotNegative
                | Error::NotHarmonic
                | Error::GradientNotZeroAtOrigin
                | Error::HessianNotPositiveDefinite
                | Error::NoFeasiblePoint
                | Error::NotStrictlyOrthogonal
                | Error::NonNegativeTrace
        )
    }
}
