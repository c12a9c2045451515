use thiserror::Error;

/// Errors shared by the analytic, moment-dynamics and Fock engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// Eq.-(16)-style pole with no drive path to the holder (Δ = 0 and g = 0).
    #[error("degenerate division: detuning and coupling both vanish")]
    DegenerateDivision,
    /// The closed-form time-domain expressions only hold at zero detuning.
    #[error("closed-form dynamics require zero detuning (got delta = {delta})")]
    UnsupportedDetuning { delta: f64 },
    /// The drift matrix has an eigenvalue with non-negative real part.
    #[error("no steady state exists for these parameters")]
    NoSteadyState,
    /// The fixed-point system is singular (exact criticality).
    #[error("steady-state system is singular (condition estimate {cond:.3e})")]
    SingularSystem { cond: f64 },
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    /// A state violating Gaussian physicality bounds, e.g. D < 1 beyond slack.
    #[error("non-physical state: {0}")]
    NonPhysicalState(String),
    #[error("Liouvillian null space dimension exceeds one")]
    DegenerateNullSpace,
    #[error("eigen-solver failed to converge")]
    ConvergenceFailure,
    /// Dense-spectrum operations are capped at product Hilbert dimension 36.
    #[error("Hilbert dimension {dim} exceeds the dense-spectrum cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
