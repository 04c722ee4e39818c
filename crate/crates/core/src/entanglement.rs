//! Partial transpose, Hermitian spectra and log negativity.

use nalgebra::{Complex, SMatrix, SVector};

use crate::density::{DensityMatrix, Matrix9};
use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Full sweeps allowed before the Jacobi iteration gives up.
pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm, relative to the matrix norm, at which the
/// iteration stops.
pub const JACOBI_TOL: f64 = 1e-15;

/// Real eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Trace norm `Σ|λ|`.
    pub fn abs_sum(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).sum()
    }
}

/// Eigen-decomposition `m = V diag(values) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<const N: usize> {
    /// Eigenvalues, descending.
    pub values: SVector<f64, N>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: SMatrix<C64, N, N>,
}

/// Cyclic complex Jacobi diagonalization.
///
/// The input is symmetrized as `(m + m†)/2` before iterating.
pub fn hermitian_eigen<const N: usize>(m: &SMatrix<C64, N, N>) -> Result<HermitianEigen<N>> {
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite("matrix entry"));
    }
    let mut a = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut v = SMatrix::<C64, N, N>::identity();
    for i in 0..N {
        a[(i, i)].im = 0.0;
    }
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = JACOBI_TOL * scale;

    let off_norm = |a: &SMatrix<C64, N, N>| {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off: off_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = phase.conj() * -s;
                let u_qq = phase.conj() * c;

                for k in 0..N {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                for k in 0..N {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = SVector::<f64, N>::from_fn(|i, _| a[(order[i], order[i])].re);
    let vectors = SMatrix::<C64, N, N>::from_fn(|r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a 9×9 Hermitian matrix.
pub fn hermitian_eigenvalues(m: &Matrix9) -> Result<Spectrum> {
    let e = hermitian_eigen(m)?;
    Ok(Spectrum {
        eigenvalues: e.values.iter().copied().collect(),
    })
}

/// Transposes the first (photon A) factor: `((a,b),(a',b')) ↦ ((a',b),(a,b'))`.
pub fn partial_transpose_a(m: &Matrix9) -> Matrix9 {
    Matrix9::from_fn(|r, c| {
        let (a, b) = (r / 3, r % 3);
        let (a2, b2) = (c / 3, c % 3);
        m[(3 * a2 + b, 3 * a + b2)]
    })
}

/// Transposes the second (photon B) factor.
pub fn partial_transpose_b(m: &Matrix9) -> Matrix9 {
    Matrix9::from_fn(|r, c| {
        let (a, b) = (r / 3, r % 3);
        let (a2, b2) = (c / 3, c % 3);
        m[(3 * a + b2, 3 * a2 + b)]
    })
}

/// `log₂ ‖ρ^{T_A}‖₁`, clamped at zero.
pub fn log_negativity(rho: &DensityMatrix) -> Result<f64> {
    let spec = hermitian_eigenvalues(&partial_transpose_a(rho.matrix()))?;
    Ok(spec.abs_sum().log2().max(0.0))
}

/// Log negativity computed through the partial transpose on photon B.
pub fn log_negativity_b(rho: &DensityMatrix) -> Result<f64> {
    let spec = hermitian_eigenvalues(&partial_transpose_b(rho.matrix()))?;
    Ok(spec.abs_sum().log2().max(0.0))
}
