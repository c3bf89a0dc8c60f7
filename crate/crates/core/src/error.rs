use thiserror::Error;

/// Errors raised by the spectral and dynamical solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("root bracketing failed: {0}")]
    Convergence(String),

    #[error("scattering denominator vanishes at k = {k}")]
    SingularPoint { k: f64 },

    #[error("eigensolver failure: {0}")]
    Numerical(String),

    #[error("t_max = {t_max} exceeds the revival limit {limit} of the truncated array")]
    RevivalWindowExceeded { t_max: f64, limit: f64 },

    #[error("time step dt = {dt} exceeds the integrator bound {max}")]
    StepTooLarge { dt: f64, max: f64 },

    #[error("analysis window too short: {0}")]
    WindowTooShort(String),
}

impl Error {
    /// Stable variant name, used for machine-readable error reporting.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams { .. } => "InvalidParams",
            Error::Domain(_) => "DomainError",
            Error::Convergence(_) => "ConvergenceError",
            Error::SingularPoint { .. } => "SingularPoint",
            Error::Numerical(_) => "NumericalError",
            Error::RevivalWindowExceeded { .. } => "RevivalWindowExceeded",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::WindowTooShort(_) => "WindowTooShort",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
