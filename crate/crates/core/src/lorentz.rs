//! Real Minkowski-space algebra: four-vectors, the metric, and Lorentz
//! transforms built from the three generators `L_z`, `R_y` and `R_z`.
//!
//! Index order is `(t, x, y, z)` with metric signature `(+, -, -, -)` and
//! `c = 1`. Every [`LorentzTransform`] carries the ordered list of generator
//! factors it was built from, so the little-group angle can be folded over
//! the factors in closed form.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};

/// Below this `sin θ` a direction is treated as lying on the z axis.
pub const POLE_EPS: f64 = 1e-12;

/// A real contravariant four-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    /// The standard null vector `k = (1, ẑ)`.
    pub const fn standard() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    /// Photon momentum of energy `omega` travelling along `d`.
    pub fn null(d: &Direction, omega: f64) -> Self {
        let [x, y, z] = d.unit_vector();
        Self::new(omega, omega * x, omega * y, omega * z)
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn spatial_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.t, self.x, self.y, self.z)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    /// Direction of the spatial part.
    pub fn direction(&self) -> Direction {
        Direction::from_cartesian(self.x, self.y, self.z)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.t - other.t)
            .abs()
            .max((self.x - other.x).abs())
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl Add for FourVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for FourVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for FourVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for FourVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

/// Minkowski inner product with signature `(+, -, -, -)`.
pub fn minkowski_dot(u: &FourVector, v: &FourVector) -> f64 {
    u.t * v.t - u.x * v.x - u.y * v.y - u.z * v.z
}

/// The metric `η = diag(+1, -1, -1, -1)`.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// A unit spatial direction in polar coordinates.
///
/// `theta ∈ [0, π]` is measured from `ẑ`, `phi ∈ [0, 2π)` from `x̂`. On the
/// axis (`sin θ < POLE_EPS`) `phi` is stored as 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite("direction angle"));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidConfig(format!(
                "polar angle {theta} outside [0, π]"
            )));
        }
        Ok(Self::normalized(theta, phi))
    }

    fn normalized(theta: f64, phi: f64) -> Self {
        if theta.sin() < POLE_EPS {
            return Self { theta, phi: 0.0 };
        }
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    /// `+ẑ`.
    pub const fn z() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    /// Direction of a nonzero Cartesian vector; the zero vector maps to `+ẑ`.
    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        let rho = x.hypot(y);
        let theta = rho.atan2(z);
        Self::normalized(theta, y.atan2(x))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn is_pole(&self) -> bool {
        self.theta.sin() < POLE_EPS
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// One of the three generator families used to build every transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    BoostZ,
    RotY,
    RotZ,
}

impl Generator {
    /// 4×4 matrix of this generator at the given parameter.
    pub fn matrix(self, param: f64) -> Matrix4<f64> {
        let mut m = Matrix4::identity();
        match self {
            Generator::BoostZ => {
                let (c, s) = (param.cosh(), param.sinh());
                m[(0, 0)] = c;
                m[(0, 3)] = s;
                m[(3, 0)] = s;
                m[(3, 3)] = c;
            }
            Generator::RotY => {
                let (s, c) = param.sin_cos();
                m[(1, 1)] = c;
                m[(1, 3)] = s;
                m[(3, 1)] = -s;
                m[(3, 3)] = c;
            }
            Generator::RotZ => {
                let (s, c) = param.sin_cos();
                m[(1, 1)] = c;
                m[(1, 2)] = -s;
                m[(2, 1)] = s;
                m[(2, 2)] = c;
            }
        }
        m
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::BoostZ => "L_z",
            Generator::RotY => "R_y",
            Generator::RotZ => "R_z",
        })
    }
}

/// A generator together with its parameter (rapidity or angle).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub kind: Generator,
    pub param: f64,
}

/// A proper orthochronous Lorentz transform with its generator factorization.
///
/// The factor list reads left to right as matrix multiplication, so
/// `[(RotY, a), (BoostZ, b)]` is `R_y(a) · L_z(b)` and acts on a vector with
/// the rightmost factor first.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzTransform {
    matrix: Matrix4<f64>,
    factors: Vec<Factor>,
}

impl Default for LorentzTransform {
    fn default() -> Self {
        Self::identity()
    }
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix4::identity(),
            factors: Vec::new(),
        }
    }

    pub fn generator(kind: Generator, param: f64) -> Result<Self> {
        if !param.is_finite() {
            return Err(Error::NonFinite("generator parameter"));
        }
        Ok(Self {
            matrix: kind.matrix(param),
            factors: vec![Factor { kind, param }],
        })
    }

    /// Builds a transform from an ordered factor list.
    pub fn from_factors(factors: &[Factor]) -> Result<Self> {
        factors.iter().try_fold(Self::identity(), |acc, f| {
            Ok(compose(&acc, &Self::generator(f.kind, f.param)?))
        })
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        FourVector::from_vector(&(self.matrix * v.to_vector()))
    }

    /// The inverse transform: reversed factor list with negated parameters.
    pub fn inverse(&self) -> Self {
        let factors: Vec<Factor> = self
            .factors
            .iter()
            .rev()
            .map(|f| Factor {
                kind: f.kind,
                param: -f.param,
            })
            .collect();
        // η Λᵀ η is the exact inverse for a metric-preserving matrix.
        let eta = metric();
        Self {
            matrix: eta * self.matrix.transpose() * eta,
            factors,
        }
    }

    /// Largest entry of `|ΛᵀηΛ − η|`.
    pub fn metric_defect(&self) -> f64 {
        let eta = metric();
        (self.matrix.transpose() * eta * self.matrix - eta)
            .abs()
            .max()
    }

    /// Largest entry of `|∏ factors − matrix|`.
    pub fn factor_defect(&self) -> f64 {
        let product = self
            .factors
            .iter()
            .fold(Matrix4::identity(), |acc, f| acc * f.kind.matrix(f.param));
        (product - self.matrix).abs().max()
    }

    /// True if the spatial-time mixing vanishes (a pure rotation matrix).
    pub fn is_rotation(&self, tol: f64) -> bool {
        (self.matrix[(0, 0)] - 1.0).abs() < tol
            && (1..4).all(|i| self.matrix[(0, i)].abs() < tol && self.matrix[(i, 0)].abs() < tol)
    }
}

/// Boost along `ẑ` with rapidity `xi`.
pub fn boost_z(xi: f64) -> Result<LorentzTransform> {
    LorentzTransform::generator(Generator::BoostZ, xi)
}

/// Rotation about `ŷ` by `gamma`.
pub fn rot_y(gamma: f64) -> Result<LorentzTransform> {
    LorentzTransform::generator(Generator::RotY, gamma)
}

/// Rotation about `ẑ` by `gamma`.
pub fn rot_z(gamma: f64) -> Result<LorentzTransform> {
    LorentzTransform::generator(Generator::RotZ, gamma)
}

/// `a · b`, with the factor lists concatenated.
pub fn compose(a: &LorentzTransform, b: &LorentzTransform) -> LorentzTransform {
    let mut factors = Vec::with_capacity(a.factors.len() + b.factors.len());
    factors.extend_from_slice(&a.factors);
    factors.extend_from_slice(&b.factors);
    LorentzTransform {
        matrix: a.matrix * b.matrix,
        factors,
    }
}

/// `R(d) = R_z(φ) R_y(θ)`, the rotation taking `ẑ` to `d`.
pub fn rotation_to(d: &Direction) -> LorentzTransform {
    // angles of a Direction are always finite
    compose(
        &rot_z(d.phi()).expect("finite angle"),
        &rot_y(d.theta()).expect("finite angle"),
    )
}

/// `H(p) = R(p̂) L_z(ln |p|)`, mapping `k = (1, ẑ)` to `(|p|, p)`.
pub fn standard_boost(d: &Direction, magnitude: f64) -> Result<LorentzTransform> {
    if !magnitude.is_finite() {
        return Err(Error::NonFinite("momentum magnitude"));
    }
    if magnitude <= 0.0 {
        return Err(Error::NonPositiveMagnitude(magnitude));
    }
    Ok(compose(&rotation_to(d), &boost_z(magnitude.ln())?))
}
