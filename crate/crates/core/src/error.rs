use thiserror::Error;

pub type Result<T> = std::result::Result<T, RwaError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RwaError {
    #[error("field frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("coupling must be non-negative, got {0}")]
    NegativeCoupling(f64),
    #[error("non-finite parameter `{0}`")]
    NonFinite(&'static str),
    #[error("Fock level {n} does not fit below cutoff {cutoff}")]
    CutoffTooSmall { n: usize, cutoff: usize },
    #[error("truncated Poisson tail mass {mass:e} at cutoff {cutoff} is not below {tol:e}")]
    TruncationMassTooLarge { mass: f64, cutoff: usize, tol: f64 },
    #[error("argument {name} = {value} outside domain {domain}")]
    DomainError {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("quadrature did not converge after {levels} bisection levels (last change {last_change:e})")]
    QuadratureNoConvergence { levels: usize, last_change: f64 },
    #[error("no positive coupling satisfies the error budget")]
    Infeasible,
}

impl RwaError {
    /// Stable machine-readable tag, used on stderr by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            RwaError::NonPositiveFrequency(_) => "NonPositiveFrequency",
            RwaError::NegativeCoupling(_) => "NegativeCoupling",
            RwaError::NonFinite(_) => "NonFinite",
            RwaError::CutoffTooSmall { .. } => "CutoffTooSmall",
            RwaError::TruncationMassTooLarge { .. } => "TruncationMassTooLarge",
            RwaError::DomainError { .. } => "DomainError",
            RwaError::InvalidArgument(_) => "InvalidArgument",
            RwaError::NoConvergence(_) => "NoConvergence",
            RwaError::QuadratureNoConvergence { .. } => "QuadratureNoConvergence",
            RwaError::Infeasible => "Infeasible",
        }
    }

    /// Process exit code: 2 for parameter errors, 3 for numerical non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            RwaError::NoConvergence(_) | RwaError::QuadratureNoConvergence { .. } => 3,
            _ => 2,
        }
    }
}
