//! Error type shared by every module in the crate.
//!
//! Each variant carries enough context (the offending value, the domain
//! boundary, the best iterate so far, ...) that a caller can report the
//! failure without re-deriving anything.

/// Errors produced by the numerical kernels and the function evaluators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Tolerance settings that cannot drive any iteration to completion.
    #[error("invalid tolerances: {reason}")]
    InvalidTolerances { reason: String },

    /// A bracketing root solve was handed an interval whose endpoints do not
    /// straddle a sign change.
    #[error("invalid bracket [{lo}, {hi}]: f({lo}) = {f_lo} and f({hi}) = {f_hi} have the same sign")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// The root iteration ran out of its iteration budget.
    #[error("root solve did not converge in {max_iter} iterations; best iterate {best} with |f| = {residual:e}")]
    RootNoConvergence { max_iter: usize, best: f64, residual: f64 },

    /// Adaptive quadrature exhausted its refinement budget before the error
    /// estimate dropped below the requested tolerance.
    #[error("quadrature on [{a}, {b}] stalled at error estimate {err_est:e} (value ≈ {value})")]
    QuadratureNoConvergence { a: f64, b: f64, value: f64, err_est: f64 },

    /// The integrand produced a NaN or infinity inside the integration range.
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    /// The adaptive ODE integrator shrank its step below the resolvable
    /// spacing of the independent variable.
    #[error("ODE step size underflow at phi = {phi}")]
    StepSizeUnderflow { phi: f64 },

    /// The adaptive ODE integrator exceeded its step budget.
    #[error("ODE integration exceeded {max_steps} steps; reached phi = {phi}")]
    OdeStepBudget { max_steps: usize, phi: f64 },

    /// An evaluation point outside the branch on which the function is
    /// defined by its defining curve.
    #[error("phi = {phi} is outside the supported branch [0, {phi_max}] for p = {p}, q = {q}")]
    PhiOutOfDomain { phi: f64, phi_max: f64, p: u32, q: u32 },

    /// Exponent pair outside the supported integer range.
    #[error("unsupported exponents p = {p}, q = {q} (need 1 <= p, q <= 16)")]
    BadParams { p: u32, q: u32 },

    /// The derivative formulas divide by q*S^q + p*C^p, which must be
    /// positive on the curve.
    #[error("derivative denominator q*S^q + p*C^p = {denom} is not positive at (C, S) = ({c}, {s})")]
    DerivativeSingularity { denom: f64, c: f64, s: f64 },

    /// The tangent T = S/C has a pole where C vanishes.
    #[error("tangent pole: C(phi) vanishes at phi = {phi}")]
    TangentPole { phi: f64 },

    /// Oscillator coefficient A(phi) must stay strictly positive.
    #[error("coefficient A({phi}) = {value} is not strictly positive")]
    NonPositiveCoefficient { phi: f64, value: f64 },

    /// Too few sample points for the requested stencil.
    #[error("grid of {points} points is too coarse (need at least {min})")]
    GridTooCoarse { points: usize, min: usize },

    /// Grid that is not strictly increasing, does not start at zero, or
    /// contains non-finite entries.
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    /// Any other malformed input (mismatched lengths, non-finite scalars, ...).
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
