use thiserror::Error;

pub type Result<T> = std::result::Result<T, WaveError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveError {
    #[error("x = {x} lies outside the profile domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("the potential is singular at x = {x}")]
    SingularPoint { x: f64 },

    #[error("no turning point: k² does not change sign ({0})")]
    NoTurningPoint(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("k² is negative inside the integration interval (k²({x}) = {ksq})")]
    ForbiddenRegion { x: f64, ksq: f64 },

    #[error("quadrature did not converge: {0}")]
    Integration(String),

    #[error("no root found: {0}")]
    NoRoot(String),

    #[error("wavefunction does not decay at the grid edge: {0}")]
    Truncation(String),

    #[error("integration step too coarse: {0}")]
    Accuracy(String),

    #[error("basis functions diverge at x = {x}")]
    Divergent { x: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl WaveError {
    /// Short machine-readable tag, used in the CLI error document.
    pub fn kind(&self) -> &'static str {
        match self {
            WaveError::Domain { .. } => "domain",
            WaveError::SingularPoint { .. } => "singular_point",
            WaveError::NoTurningPoint(_) => "no_turning_point",
            WaveError::Precondition(_) => "precondition",
            WaveError::ForbiddenRegion { .. } => "forbidden_region",
            WaveError::Integration(_) => "integration",
            WaveError::NoRoot(_) => "no_root",
            WaveError::Truncation(_) => "truncation",
            WaveError::Accuracy(_) => "accuracy",
            WaveError::Divergent { .. } => "divergent",
            WaveError::Config(_) => "config",
        }
    }

    /// True for errors caused by bad input rather than a numerical failure.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            WaveError::Config(_) | WaveError::Precondition(_) | WaveError::Domain { .. }
        )
    }
}
