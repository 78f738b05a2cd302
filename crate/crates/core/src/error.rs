use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix entry is NaN or infinite.
    #[error("matrix has a non-finite entry")]
    NonFinite,

    /// Hermiticity violated beyond tolerance.
    #[error("not Hermitian: max |m_ij - conj(m_ji)| = {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    /// Trace differs from one beyond tolerance.
    #[error("trace deviates from 1 by {deviation:.3e} (tolerance {tol:.3e})")]
    TraceDeviation { deviation: f64, tol: f64 },

    /// An eigenvalue is negative beyond tolerance.
    #[error("not positive semi-definite: eigenvalue {eigenvalue:.3e} below -{tol:.3e}")]
    NotPositive { eigenvalue: f64, tol: f64 },

    /// Physical parameters violate their invariants.
    #[error("invalid engine parameters: {0}")]
    InvalidParams(String),

    /// All dissipation channels vanish; the steady-state denominator is zero.
    #[error("degenerate parameters: steady-state denominator is zero")]
    DegenerateParameters,

    /// The Liouvillian kernel is not one-dimensional.
    #[error("steady state not unique: second-smallest singular value {sigma:.3e} below {tol:.3e}")]
    DegenerateKernel { sigma: f64, tol: f64 },

    /// A state handed to a steady-state-only operation is not a fixed point.
    #[error("not a steady state: ||L vec(rho)|| = {residual:.3e} exceeds {tol:.3e}")]
    NotSteadyState { residual: f64, tol: f64 },

    /// Trace drifted during time integration; the step size is too large.
    #[error("trace drifted by {drift:.3e} during integration; reduce dt")]
    StepSize { drift: f64 },

    /// A scalar argument is outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
}
