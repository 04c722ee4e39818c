use thiserror::Error;

/// Errors raised by the simulation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite parameter: {0}")]
    NonFinite(&'static str),

    #[error("momentum magnitude must be positive (got {0})")]
    NonPositiveMagnitude(f64),

    #[error("expected a future-pointing null vector, got (t={t}, |p|={spatial})")]
    NotFutureNull { t: f64, spatial: f64 },

    #[error("H(Λp)^-1 Λ H(p) does not fix the standard vector (deviation {0:e})")]
    NotLittleGroup(f64),

    #[error("transformed momentum has degenerate time component {0:e}")]
    DegenerateTimeComponent(f64),

    #[error("invalid quadrature size: n_theta={n_theta}, n_phi={n_phi}")]
    DegenerateGrid { n_theta: usize, n_phi: usize },

    #[error("invalid beam: {0}")]
    InvalidBeam(String),

    #[error("density matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("density matrix check failed: {0}")]
    InvalidDensity(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
