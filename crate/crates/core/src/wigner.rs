//! Little-group rotation angle `Θ(Λ, p)` for massless momenta.
//!
//! Two independent routes are provided: [`wigner_angle`] folds closed-form
//! per-generator rules over the factor list of `Λ`, and
//! [`wigner_angle_oracle`] extracts the rotation part of
//! `W = H(Λp)⁻¹ Λ H(p)` directly from the matrices.

use std::f64::consts::PI;

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::lorentz::{
    minkowski_dot, standard_boost, Direction, Factor, FourVector, Generator, LorentzTransform,
};

/// Relative tolerance on `p·p / t²` for accepting a null vector.
pub const NULL_TOL: f64 = 1e-10;

/// Tolerance on `|W k − k|` (scaled by the size of `Λ`) for little-group membership.
pub const LITTLE_GROUP_TOL: f64 = 1e-9;

/// Photon helicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub const BOTH: [Helicity; 2] = [Helicity::Plus, Helicity::Minus];

    pub fn value(self) -> i32 {
        match self {
            Helicity::Plus => 1,
            Helicity::Minus => -1,
        }
    }

    pub fn sign(self) -> f64 {
        self.value() as f64
    }
}

/// A rotation angle reduced to `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WignerAngle(f64);

impl WignerAngle {
    pub fn new(angle: f64) -> Self {
        Self(reduce_angle(angle))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Distance to `other` on the circle, in `[0, π]`.
    pub fn distance(self, other: WignerAngle) -> f64 {
        reduce_angle(self.0 - other.0).abs()
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn reduce_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Closed-form angle for a rotation `R_y(γ)` acting on a momentum along `d`.
pub type RotYRule = fn(f64, &Direction) -> f64;

/// `atan2(A, B)` with `A = sin γ sin φ`, `B = sin θ cos γ + cos θ sin γ cos φ`.
pub fn rot_y_angle(gamma: f64, d: &Direction) -> f64 {
    let (sg, cg) = gamma.sin_cos();
    let (st, ct) = d.theta().sin_cos();
    let (sp, cp) = d.phi().sin_cos();
    let a = sg * sp;
    let b = st * cg + ct * sg * cp;
    a.atan2(b)
}

fn check_future_null(p: &FourVector) -> Result<()> {
    let bad = || Error::NotFutureNull {
        t: p.t,
        spatial: p.spatial_norm(),
    };
    if !p.is_finite() || p.t <= 0.0 {
        return Err(bad());
    }
    if minkowski_dot(p, p).abs() > NULL_TOL * p.t * p.t {
        return Err(bad());
    }
    Ok(())
}

fn generator_angle(kind: Generator, param: f64, d: &Direction, rot_y: RotYRule) -> f64 {
    match kind {
        Generator::BoostZ => 0.0,
        Generator::RotZ => {
            if !d.is_pole() {
                0.0
            } else if d.theta() < PI / 2.0 {
                param
            } else {
                // on -ẑ the standard rotation R_y(π) reverses the sense of R_z
                -param
            }
        }
        Generator::RotY => rot_y(param, d),
    }
}

/// `Θ` for a single generator acting on `p`.
pub fn wigner_angle_generator(kind: Generator, param: f64, p: &FourVector) -> Result<WignerAngle> {
    if !param.is_finite() {
        return Err(Error::NonFinite("generator parameter"));
    }
    check_future_null(p)?;
    Ok(WignerAngle::new(generator_angle(
        kind,
        param,
        &p.direction(),
        rot_y_angle,
    )))
}

/// `Θ(Λ, p)` by folding the closed-form rules over the factors of `Λ`.
pub fn wigner_angle(l: &LorentzTransform, p: &FourVector) -> Result<WignerAngle> {
    wigner_angle_with(l, p, rot_y_angle)
}

/// [`wigner_angle`] with a substitutable `R_y` rule.
pub fn wigner_angle_with(
    l: &LorentzTransform,
    p: &FourVector,
    rot_y: RotYRule,
) -> Result<WignerAngle> {
    check_future_null(p)?;
    let mut total = 0.0;
    let mut q = p.to_vector();
    for &Factor { kind, param } in l.factors().iter().rev() {
        let d = Direction::from_cartesian(q[1], q[2], q[3]);
        total += generator_angle(kind, param, &d, rot_y);
        q = kind.matrix(param) * q;
    }
    Ok(WignerAngle::new(total))
}

/// Little-group element `W = H(Λp)⁻¹ Λ H(p)`.
pub fn little_group_element(l: &LorentzTransform, p: &FourVector) -> Result<LorentzTransform> {
    check_future_null(p)?;
    let lp = l.apply(p);
    check_future_null(&lp)?;
    let h_p = standard_boost(&p.direction(), p.t)?;
    let h_lp = standard_boost(&lp.direction(), lp.t)?;
    let w = crate::lorentz::compose(&crate::lorentz::compose(&h_lp.inverse(), l), &h_p);

    let k = FourVector::standard();
    let defect = w.apply(&k).max_abs_diff(&k);
    let scale = l.matrix().abs().max().max(1.0);
    if defect > LITTLE_GROUP_TOL * scale {
        return Err(Error::NotLittleGroup(defect));
    }
    Ok(w)
}

/// `Θ(Λ, p)` read off the x-y block of the little-group element.
pub fn wigner_angle_oracle(l: &LorentzTransform, p: &FourVector) -> Result<WignerAngle> {
    let w = little_group_element(l, p)?;
    let m = w.matrix();
    Ok(WignerAngle::new(m[(2, 1)].atan2(m[(1, 1)])))
}

/// `Λ|p λ⟩ = e^{-iλΘ(Λ,p)} |Λp λ⟩`: returns `Λp` and the phase.
pub fn boost_helicity_state(
    l: &LorentzTransform,
    p: &FourVector,
    lam: Helicity,
) -> Result<(FourVector, Complex<f64>)> {
    let theta = wigner_angle(l, p)?.radians();
    Ok((l.apply(p), Complex::from_polar(1.0, -lam.sign() * theta)))
}
