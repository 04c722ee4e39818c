//! Frame dependence of polarization entanglement for pairs of photon beams.
//!
//! A pair of Gaussian photon beams, maximally entangled in polarization, is
//! viewed from a boosted frame. Each momentum component's polarization is
//! carried along by the massless little-group rotation, the momentum is
//! traced out, and the log negativity of the resulting 9×9 polarization
//! density matrix is reported as a function of boost direction, rapidity and
//! beam spread.
//!
//! Module map:
//! - [`lorentz`]: four-vectors and generator-built Lorentz transforms
//! - [`wigner`]: little-group angle, closed form and matrix oracle
//! - [`polarization`]: helicity and h/v polarization vectors, transport laws
//! - [`beam`]: beam profile, quadrature grid, reduced density matrix
//! - [`entanglement`]: partial transpose, Jacobi spectra, log negativity
//! - [`sweep`]: rapidity sweeps, figure presets, CSV and plot output
//! - [`validate`]: the self-check suite behind `photon-frames validate`

pub mod beam;
pub mod density;
pub mod entanglement;
pub mod error;
pub mod lorentz;
pub mod polarization;
pub mod quadrature;
pub mod sweep;
pub mod validate;
pub mod wigner;

pub use error::{Error, Result};

impl Error {
    /// Process exit status for the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_)
            | Error::InvalidBeam(_)
            | Error::DegenerateGrid { .. }
            | Error::NonFinite(_)
            | Error::NonPositiveMagnitude(_) => 1,
            _ => 3,
        }
    }
}
