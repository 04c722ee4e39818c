//! The 9×9 reduced polarization density matrix of a photon pair.
//!
//! Basis ordering is `(x, y, z)_A ⊗ (x, y, z)_B`, i.e. index `3a + b`.

use nalgebra::{Complex, SMatrix, SVector};

use crate::entanglement::hermitian_eigenvalues;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Matrix9 = SMatrix<C64, 9, 9>;
pub type Vector9 = SVector<C64, 9>;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Matrix9,
}

impl DensityMatrix {
    /// Wraps a matrix after checking Hermiticity, unit trace and positivity.
    pub fn new(entries: Matrix9) -> Result<Self> {
        let rho = Self { entries };
        rho.validate()?;
        Ok(rho)
    }

    /// Hermitizes, normalizes the trace to one, then validates.
    pub fn from_unnormalized(m: Matrix9) -> Result<Self> {
        let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
        let tr = h.trace().re;
        if !(tr.is_finite() && tr > 0.0) {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        Self::new(h / C64::new(tr, 0.0))
    }

    pub(crate) fn new_unchecked(entries: Matrix9) -> Self {
        Self { entries }
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(psi: &Vector9) -> Result<Self> {
        Self::from_unnormalized(psi * psi.adjoint())
    }

    /// `I / 9`.
    pub fn maximally_mixed() -> Self {
        Self::new_unchecked(Matrix9::identity() / C64::new(9.0, 0.0))
    }

    /// The Bell state `(x̂x̂ − ŷŷ)/√2` embedded in the pair space.
    pub fn bell() -> Self {
        Self::pure(&bell_vector()).expect("Bell projector is a valid state")
    }

    pub fn matrix(&self) -> &Matrix9 {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let s = hermitian_eigenvalues(&self.entries)?;
        Ok(*s.eigenvalues().last().expect("nine eigenvalues"))
    }

    fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_defect();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "Hermiticity defect {herm:e}"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let min = self.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.entries - other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `(x̂⊗x̂ − ŷ⊗ŷ)/√2`.
pub fn bell_vector() -> Vector9 {
    let mut v = Vector9::zeros();
    v[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[4] = C64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v
}
