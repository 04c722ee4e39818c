//! Gaussian photon beams and the boosted two-photon polarization state.
//!
//! Both photons share one angular profile, so after tracing out momentum the
//! pair density matrix factorizes into single-photon moment matrices:
//!
//! ```text
//! ρ = ½ Σ_{a,b ∈ {h,v}} s_a s_b M_ab ⊗ M_ab,   M_ab = Σ_i w_i x_a(p_i) x_b(p_i)†
//! ```
//!
//! where `x_a(p)` is the spatial part of the transported polarization vector
//! and `s_h = +1`, `s_v = −1`. The brute-force double sum and the helicity
//! basis construction are kept alongside as cross-checks.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Complex, Matrix3, Vector3};

use crate::density::{DensityMatrix, Matrix9, Vector9};
use crate::error::{Error, Result};
use crate::lorentz::{Direction, FourVector, LorentzTransform};
use crate::polarization::{d_rotation_form, epsilon, h_vec, v_vec, PolarizationVector, Transport};
use crate::quadrature::gauss_legendre_interval;
use crate::wigner::{boost_helicity_state, Helicity};

type C64 = Complex<f64>;

/// Angular profile of one beam: `|f(θ)|² ∝ exp(−θ²/σ²)` on the shell `|p| = p0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    sigma_theta: f64,
    p0: f64,
}

impl BeamSpec {
    pub fn new(sigma_theta: f64, p0: f64) -> Result<Self> {
        if !(sigma_theta.is_finite() && sigma_theta > 0.0 && sigma_theta <= PI) {
            return Err(Error::InvalidBeam(format!(
                "sigma_theta must lie in (0, π], got {sigma_theta}"
            )));
        }
        if !(p0.is_finite() && p0 > 0.0) {
            return Err(Error::InvalidBeam(format!("p0 must be positive, got {p0}")));
        }
        Ok(Self { sigma_theta, p0 })
    }

    /// Beam with unit shell momentum.
    pub fn with_spread(sigma_theta: f64) -> Result<Self> {
        Self::new(sigma_theta, 1.0)
    }

    pub fn sigma_theta(&self) -> f64 {
        self.sigma_theta
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn momentum(&self, d: &Direction) -> FourVector {
        FourVector::null(d, self.p0)
    }
}

/// Unnormalized density in `θ` including the `sin θ` Jacobian.
pub fn angular_weight(theta: f64, spec: &BeamSpec) -> f64 {
    let s = spec.sigma_theta;
    (-(theta * theta) / (s * s)).exp() * theta.sin()
}

/// Product grid over the unit sphere with weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<Direction>,
    weights: Vec<f64>,
    n_theta: usize,
    n_phi: usize,
}

impl QuadratureGrid {
    pub fn nodes(&self) -> &[Direction] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Weighted mean of `g` over the grid.
    pub fn mean(&self, g: impl Fn(&Direction) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(d, w)| w * g(d))
            .sum()
    }

    fn weighted(&self) -> impl Iterator<Item = (&Direction, f64)> {
        self.nodes
            .iter()
            .zip(self.weights.iter().copied())
            .filter(|(_, w)| *w > 0.0)
    }
}

/// Gauss–Legendre in `θ ∈ [0, π]`, equispaced `φ ∈ [0, 2π)`.
///
/// Weights carry the beam profile and are renormalized to sum to one.
/// Nodes whose Gaussian factor underflows keep a weight of exactly zero.
pub fn build_grid(spec: &BeamSpec, n_theta: usize, n_phi: usize) -> Result<QuadratureGrid> {
    if n_theta < 2 || n_phi < 2 {
        return Err(Error::DegenerateGrid { n_theta, n_phi });
    }
    let (thetas, gl) = gauss_legendre_interval(n_theta, 0.0, PI);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut nodes = Vec::with_capacity(n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for (&theta, &w) in thetas.iter().zip(&gl) {
        let wt = w * angular_weight(theta, spec) * dphi;
        for j in 0..n_phi {
            nodes.push(Direction::new(theta, j as f64 * dphi)?);
            weights.push(wt);
        }
    }
    let total: f64 = weights.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::InvalidBeam(format!("grid weights sum to {total}")));
    }
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(QuadratureGrid {
        nodes,
        weights,
        n_theta,
        n_phi,
    })
}

/// Linear polarization label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linear {
    H,
    V,
}

impl Linear {
    pub const BOTH: [Linear; 2] = [Linear::H, Linear::V];

    /// Sign of this term in `(|hh⟩ − |vv⟩)/√2`.
    pub fn sign(self) -> f64 {
        match self {
            Linear::H => 1.0,
            Linear::V => -1.0,
        }
    }

    fn index(self) -> usize {
        match self {
            Linear::H => 0,
            Linear::V => 1,
        }
    }
}

fn spatial3(v: &PolarizationVector) -> Vector3<C64> {
    let [x, y, z] = v.spatial();
    Vector3::new(x, y, z)
}

/// Spatial parts of `D(Λ)h_p` and `D(Λ)v_p` using the given transport law.
pub fn transported_hv_with(
    l: &LorentzTransform,
    d: &Direction,
    spec: &BeamSpec,
    transport: Transport,
) -> Result<[Vector3<C64>; 2]> {
    let p = spec.momentum(d);
    let h = transport(l, &p, &h_vec(d))?;
    let v = transport(l, &p, &v_vec(d))?;
    Ok([spatial3(&h), spatial3(&v)])
}

/// Spatial parts of `D(Λ)h_p` and `D(Λ)v_p`.
pub fn transported_hv(
    l: &LorentzTransform,
    d: &Direction,
    spec: &BeamSpec,
) -> Result<[Vector3<C64>; 2]> {
    transported_hv_with(l, d, spec, d_rotation_form)
}

fn kron(a: &Vector3<C64>, b: &Vector3<C64>) -> Vector9 {
    Vector9::from_fn(|i, _| a[i / 3] * b[i % 3])
}

fn kron_matrix(a: &Matrix3<C64>, b: &Matrix3<C64>) -> Matrix9 {
    Matrix9::from_fn(|r, c| a[(r / 3, c / 3)] * b[(r % 3, c % 3)])
}

/// `(D h_p ⊗ D h_q − D v_p ⊗ D v_q)/√2`.
pub fn pair_kernel(
    l: &LorentzTransform,
    p_dir: &Direction,
    q_dir: &Direction,
    spec: &BeamSpec,
) -> Result<Vector9> {
    let [hp, vp] = transported_hv(l, p_dir, spec)?;
    let [hq, vq] = transported_hv(l, q_dir, spec)?;
    Ok((kron(&hp, &hq) - kron(&vp, &vq)) * C64::new(FRAC_1_SQRT_2, 0.0))
}

/// The four single-photon moment matrices `M_ab`, indexed `[a][b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrices(pub [[Matrix3<C64>; 2]; 2]);

impl MomentMatrices {
    pub fn get(&self, a: Linear, b: Linear) -> &Matrix3<C64> {
        &self.0[a.index()][b.index()]
    }

    /// `½ Σ s_a s_b M_ab ⊗ M_ab`, before normalization.
    pub fn pair_matrix(&self) -> Matrix9 {
        let mut rho = Matrix9::zeros();
        for a in Linear::BOTH {
            for b in Linear::BOTH {
                let m = self.get(a, b);
                rho += kron_matrix(m, m) * C64::new(0.5 * a.sign() * b.sign(), 0.0);
            }
        }
        rho
    }
}

pub fn moment_matrices_with(
    l: &LorentzTransform,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
    transport: Transport,
) -> Result<MomentMatrices> {
    let mut m = [[Matrix3::<C64>::zeros(); 2]; 2];
    for (d, w) in grid.weighted() {
        let x = transported_hv_with(l, d, spec, transport)?;
        for a in 0..2 {
            for b in 0..2 {
                m[a][b] += x[a] * x[b].adjoint() * C64::new(w, 0.0);
            }
        }
    }
    Ok(MomentMatrices(m))
}

pub fn moment_matrices(
    l: &LorentzTransform,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
) -> Result<MomentMatrices> {
    moment_matrices_with(l, grid, spec, d_rotation_form)
}

/// `M_ab = Σ_i w_i x_a(p_i) x_b(p_i)†`.
pub fn moment_matrix(
    l: &LorentzTransform,
    a: Linear,
    b: Linear,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
) -> Result<Matrix3<C64>> {
    let mut m = Matrix3::<C64>::zeros();
    for (d, w) in grid.weighted() {
        let x = transported_hv(l, d, spec)?;
        m += x[a.index()] * x[b.index()].adjoint() * C64::new(w, 0.0);
    }
    Ok(m)
}

/// Reduced polarization density matrix of the boosted pair.
pub fn reduced_density(
    l: &LorentzTransform,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
) -> Result<DensityMatrix> {
    DensityMatrix::from_unnormalized(moment_matrices(l, grid, spec)?.pair_matrix())
}

/// [`reduced_density`] with a substitutable transport law.
pub fn reduced_density_with(
    l: &LorentzTransform,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
    transport: Transport,
) -> Result<DensityMatrix> {
    DensityMatrix::from_unnormalized(moment_matrices_with(l, grid, spec, transport)?.pair_matrix())
}

/// `Σ_ij w_i w_j |ψ(p_i, q_j)⟩⟨ψ(p_i, q_j)|` evaluated pair by pair.
///
/// Quadratic in the grid size; meant for small grids.
pub fn reduced_density_direct(
    l: &LorentzTransform,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
) -> Result<DensityMatrix> {
    let mut rho = Matrix9::zeros();
    let live: Vec<_> = grid.weighted().collect();
    for &(p, wp) in &live {
        for &(q, wq) in &live {
            let psi = pair_kernel(l, p, q, spec)?;
            rho += psi * psi.adjoint() * C64::new(wp * wq, 0.0);
        }
    }
    DensityMatrix::from_unnormalized(rho)
}

/// The same state assembled in the helicity basis: amplitudes
/// `δ_λσ e^{iλφ_p} e^{iσφ_q} / √2`, each helicity state picking up
/// `e^{−iλΘ(Λ,p)}` and moving to `ε_λ(Λp̂)`.
pub fn reduced_density_helicity(
    l: &LorentzTransform,
    grid: &QuadratureGrid,
    spec: &BeamSpec,
) -> Result<DensityMatrix> {
    let mut n = [[Matrix3::<C64>::zeros(); 2]; 2];
    for (d, w) in grid.weighted() {
        let p = spec.momentum(d);
        let mut y = [Vector3::<C64>::zeros(); 2];
        for (slot, lam) in y.iter_mut().zip(Helicity::BOTH) {
            let (lp, phase) = boost_helicity_state(l, &p, lam)?;
            let amp = C64::from_polar(1.0, lam.sign() * d.phi()) * phase;
            *slot = spatial3(&epsilon(&lp.direction(), lam)) * amp;
        }
        for a in 0..2 {
            for b in 0..2 {
                n[a][b] += y[a] * y[b].adjoint() * C64::new(w, 0.0);
            }
        }
    }
    let mut rho = Matrix9::zeros();
    for m in n.iter().flatten() {
        rho += kron_matrix(m, m) * C64::new(0.5, 0.0);
    }
    DensityMatrix::from_unnormalized(rho)
}
