//! Photon polarization four-vectors and their Lorentz transport.
//!
//! [`d_rotation_form`] is the production path: it only ever applies
//! rotations, so norms are preserved by construction. [`d_gauge_form`]
//! transforms the vector with `Λ` and subtracts the momentum-proportional
//! part that restores a zero time component. The two must agree.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Complex, Matrix4};

use crate::error::{Error, Result};
use crate::lorentz::{compose, rot_z, rotation_to, Direction, FourVector, LorentzTransform};
use crate::wigner::{wigner_angle, Helicity};

type C64 = Complex<f64>;

const I: C64 = C64::new(0.0, 1.0);

/// Smallest `(Λp)⁰` accepted by the gauge form.
pub const MIN_ENERGY: f64 = 1e-300;

/// A complex four-vector `ε^μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVector(pub [C64; 4]);

impl PolarizationVector {
    pub fn from_real(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self([t, x, y, z].map(|c| C64::new(c, 0.0)))
    }

    pub fn components(&self) -> &[C64; 4] {
        &self.0
    }

    pub fn time(&self) -> C64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [C64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn spatial_norm(&self) -> f64 {
        self.0[1..].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermitian inner product `⟨self|other⟩` of the spatial parts.
    pub fn spatial_inner(&self, other: &Self) -> C64 {
        (1..4).map(|i| self.0[i].conj() * other.0[i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..4)
            .map(|i| (self.0[i] - other.0[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Applies a real 4×4 matrix.
    pub fn transformed(&self, m: &Matrix4<f64>) -> Self {
        let mut out = [C64::new(0.0, 0.0); 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.0[c] * m[(r, c)]).sum();
        }
        Self(out)
    }
}

impl std::ops::Add for PolarizationVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([0, 1, 2, 3].map(|i| self.0[i] + o.0[i]))
    }
}

impl std::ops::Sub for PolarizationVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([0, 1, 2, 3].map(|i| self.0[i] - o.0[i]))
    }
}

/// Helicity polarization vector `ε_λ(d) = R(d) (0, 1, λi, 0) / √2`.
pub fn epsilon(d: &Direction, lam: Helicity) -> PolarizationVector {
    let base = PolarizationVector([
        C64::new(0.0, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(0.0, lam.sign() * FRAC_1_SQRT_2),
        C64::new(0.0, 0.0),
    ]);
    base.transformed(rotation_to(d).matrix())
}

/// "Horizontal" polarization `(e^{iφ}ε₊ + e^{-iφ}ε₋)/√2`; tends to `x̂` as `θ → 0`.
pub fn h_vec(d: &Direction) -> PolarizationVector {
    let ph = C64::from_polar(1.0, d.phi());
    let plus = epsilon(d, Helicity::Plus).scale(ph * FRAC_1_SQRT_2);
    let minus = epsilon(d, Helicity::Minus).scale(ph.conj() * FRAC_1_SQRT_2);
    plus + minus
}

/// "Vertical" polarization `-i(e^{iφ}ε₊ − e^{-iφ}ε₋)/√2`; tends to `ŷ` as `θ → 0`.
pub fn v_vec(d: &Direction) -> PolarizationVector {
    let ph = C64::from_polar(1.0, d.phi());
    let plus = epsilon(d, Helicity::Plus).scale(-I * ph * FRAC_1_SQRT_2);
    let minus = epsilon(d, Helicity::Minus).scale(-I * ph.conj() * FRAC_1_SQRT_2);
    plus - minus
}

/// Signature shared by both transport laws.
pub type Transport =
    fn(&LorentzTransform, &FourVector, &PolarizationVector) -> Result<PolarizationVector>;

/// `D(Λ)ε = R(Λp̂) R_z(Θ(Λ, p)) R(p̂)⁻¹ ε`.
pub fn d_rotation_form(
    l: &LorentzTransform,
    p: &FourVector,
    eps: &PolarizationVector,
) -> Result<PolarizationVector> {
    let theta = wigner_angle(l, p)?.radians();
    let lp = l.apply(p);
    let r = compose(
        &compose(&rotation_to(&lp.direction()), &rot_z(theta)?),
        &rotation_to(&p.direction()).inverse(),
    );
    Ok(eps.transformed(r.matrix()))
}

/// `D(Λ)ε = Λε − ((Λε)⁰ / (Λp)⁰) Λp`.
pub fn d_gauge_form(
    l: &LorentzTransform,
    p: &FourVector,
    eps: &PolarizationVector,
) -> Result<PolarizationVector> {
    let le = eps.transformed(l.matrix());
    let lp = l.apply(p);
    if lp.t.is_nan() || lp.t <= MIN_ENERGY {
        return Err(Error::DegenerateTimeComponent(lp.t));
    }
    let ratio = le.time() / lp.t;
    let mut out = le.0;
    for (o, c) in out.iter_mut().zip([lp.t, lp.x, lp.y, lp.z]) {
        *o -= ratio * c;
    }
    // the subtraction cancels the time component analytically
    out[0] = C64::new(0.0, 0.0);
    Ok(PolarizationVector(out))
}
