use thiserror::Error;

/// Errors produced by the solvers, field computations and scenario drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohmError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("eigensolver did not converge after {iterations} iterations: {detail}")]
    Numeric { iterations: usize, detail: String },

    #[error("propagation integrity: {0}")]
    PropagationIntegrity(String),

    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("trajectory integrity: {0}")]
    TrajectoryIntegrity(String),
}

impl BohmError {
    /// Stable machine-readable tag, used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            BohmError::InvalidConfig(_) => "invalid_config",
            BohmError::DegenerateState(_) => "degenerate_state",
            BohmError::GridMismatch(_) => "grid_mismatch",
            BohmError::Resolution(_) => "resolution",
            BohmError::Geometry(_) => "geometry",
            BohmError::Numeric { .. } => "numeric",
            BohmError::PropagationIntegrity(_) => "propagation_integrity",
            BohmError::DomainTooSmall(_) => "domain_too_small",
            BohmError::Precondition(_) => "precondition",
            BohmError::TrajectoryIntegrity(_) => "trajectory_integrity",
        }
    }
}

pub type Result<T> = std::result::Result<T, BohmError>;
