//! Self-check suite run by the `validate` subcommand.
//!
//! Each group exercises one family of invariants on seeded random input and
//! records the worst deviation it saw against a fixed tolerance. The
//! closed-form `R_y` rule and the gauge-form transport are taken from
//! [`Kernels`] so that deliberately broken versions can be shown to fail.

use std::f64::consts::PI;

use nalgebra::{Complex, Matrix3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::beam::{
    build_grid, reduced_density, reduced_density_direct, reduced_density_helicity,
    reduced_density_with, BeamSpec,
};
use crate::density::{DensityMatrix, Matrix9};
use crate::entanglement::{log_negativity, log_negativity_b};
use crate::error::Result;
use crate::lorentz::{
    compose, rot_y, rot_z, Direction, Factor, FourVector, Generator, LorentzTransform,
};
use crate::polarization::{d_gauge_form, d_rotation_form, epsilon, PolarizationVector, Transport};
use crate::sweep::make_boost;
use crate::wigner::{rot_y_angle, wigner_angle_oracle, wigner_angle_with, Helicity, RotYRule};

pub const SEED: u64 = 0x5eed_1ab5;
pub const RANDOM_CASES: usize = 1000;

pub const METRIC_TOL: f64 = 1e-12;
pub const WIGNER_TOL: f64 = 1e-9;
pub const D_FORM_TOL: f64 = 1e-10;
pub const GROUP_TOL: f64 = 1e-9;
pub const DENSITY_ROUTE_TOL: f64 = 1e-10;
pub const BELL_TOL: f64 = 1e-3;
pub const ROTATION_LN_TOL: f64 = 1e-8;
pub const OMEGA_LN_TOL: f64 = 1e-12;
pub const CONVERGENCE_TOL: f64 = 1e-4;

/// The two routines a mutation test may replace.
#[derive(Clone, Copy)]
pub struct Kernels {
    pub rot_y: RotYRule,
    pub gauge: Transport,
}

impl Default for Kernels {
    fn default() -> Self {
        Self {
            rot_y: rot_y_angle,
            gauge: d_gauge_form,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub groups: Vec<GroupResult>,
}

impl ValidationReport {
    pub fn group(&self, name: &str) -> Option<&GroupResult> {
        self.groups.iter().find(|g| g.name == name)
    }
}

/// Random transform with 1 to `max_factors` generators.
pub fn random_transform<R: Rng>(rng: &mut R, max_factors: usize) -> LorentzTransform {
    let n = rng.random_range(1..=max_factors);
    let factors: Vec<Factor> = (0..n)
        .map(|_| match rng.random_range(0..3) {
            0 => Factor {
                kind: Generator::BoostZ,
                param: rng.random_range(-1.5..1.5),
            },
            1 => Factor {
                kind: Generator::RotY,
                param: rng.random_range(-PI..PI),
            },
            _ => Factor {
                kind: Generator::RotZ,
                param: rng.random_range(-PI..PI),
            },
        })
        .collect();
    LorentzTransform::from_factors(&factors).expect("finite parameters")
}

/// Direction uniform on the sphere.
pub fn random_direction<R: Rng>(rng: &mut R) -> Direction {
    let c: f64 = rng.random_range(-1.0..1.0);
    Direction::new(c.acos(), rng.random_range(0.0..2.0 * PI)).expect("valid angles")
}

/// Future-pointing null vector with energy in `[e^-1, e]`.
pub fn random_null<R: Rng>(rng: &mut R) -> FourVector {
    let d = random_direction(rng);
    FourVector::null(&d, rng.random_range(-1.0f64..1.0).exp())
}

/// Normalized random superposition of `ε₊(d)` and `ε₋(d)`.
pub fn random_polarization<R: Rng>(rng: &mut R, d: &Direction) -> PolarizationVector {
    let a: Complex<f64> = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let b: Complex<f64> = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt().max(1e-12);
    epsilon(d, Helicity::Plus).scale(a / n) + epsilon(d, Helicity::Minus).scale(b / n)
}

fn circle_distance(a: f64, b: f64) -> f64 {
    crate::wigner::reduce_angle(a - b).abs()
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
    error: Option<String>,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            cases: 0,
            worst: 0.0,
            error: None,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.cases += 1;
        if deviation.is_nan() {
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(deviation);
        }
    }

    fn run(mut self, body: impl FnOnce(&mut Self) -> Result<()>) -> GroupResult {
        if let Err(e) = body(&mut self) {
            self.error = Some(e.to_string());
        }
        GroupResult {
            name: self.name,
            passed: self.error.is_none() && self.worst <= self.tolerance,
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
            error: self.error,
        }
    }
}

fn metric_group(rng: &mut ChaCha8Rng) -> GroupResult {
    Tally::new("metric", METRIC_TOL).run(|t| {
        for _ in 0..RANDOM_CASES {
            let l = random_transform(rng, 5);
            // rounding grows with the squared entry size once boosts are involved
            let scale = l.matrix().abs().max().max(1.0);
            t.record(l.metric_defect() / (scale * scale));
            t.record(l.factor_defect() / scale);
            let p = random_null(rng);
            let lp = l.apply(&p);
            t.record(crate::lorentz::minkowski_dot(&lp, &lp).abs() / (lp.t * lp.t));
        }
        Ok(())
    })
}

fn wigner_group(rng: &mut ChaCha8Rng, k: &Kernels) -> GroupResult {
    Tally::new("wigner_oracle", WIGNER_TOL).run(|t| {
        for _ in 0..RANDOM_CASES {
            let l = random_transform(rng, 5);
            let p = random_null(rng);
            let closed = wigner_angle_with(&l, &p, k.rot_y)?.radians();
            let oracle = wigner_angle_oracle(&l, &p)?.radians();
            t.record(circle_distance(closed, oracle));
        }
        Ok(())
    })
}

fn d_form_group(rng: &mut ChaCha8Rng, k: &Kernels) -> GroupResult {
    Tally::new("d_form_equivalence", D_FORM_TOL).run(|t| {
        for _ in 0..RANDOM_CASES {
            let l = random_transform(rng, 5);
            let p = random_null(rng);
            let eps = random_polarization(rng, &p.direction());
            let rot = d_rotation_form(&l, &p, &eps)?;
            let gauge = (k.gauge)(&l, &p, &eps)?;
            t.record(rot.max_abs_diff(&gauge));
        }
        Ok(())
    })
}

fn composition_group(rng: &mut ChaCha8Rng, k: &Kernels) -> GroupResult {
    Tally::new("composition_laws", GROUP_TOL).run(|t| {
        for _ in 0..RANDOM_CASES / 2 {
            let a = random_transform(rng, 3);
            let b = random_transform(rng, 3);
            let p = random_null(rng);
            let ab = compose(&b, &a);

            let lhs = wigner_angle_with(&ab, &p, k.rot_y)?.radians();
            let rhs = wigner_angle_with(&b, &a.apply(&p), k.rot_y)?.radians()
                + wigner_angle_with(&a, &p, k.rot_y)?.radians();
            t.record(circle_distance(lhs, rhs));
            let lhs = wigner_angle_oracle(&ab, &p)?.radians();
            let rhs = wigner_angle_oracle(&b, &a.apply(&p))?.radians()
                + wigner_angle_oracle(&a, &p)?.radians();
            t.record(circle_distance(lhs, rhs));

            let eps = random_polarization(rng, &p.direction());
            let once = (k.gauge)(&ab, &p, &eps)?;
            let twice = (k.gauge)(&b, &a.apply(&p), &(k.gauge)(&a, &p, &eps)?)?;
            t.record(once.max_abs_diff(&twice));
        }
        Ok(())
    })
}

fn density_group(k: &Kernels) -> GroupResult {
    Tally::new("density_sanity", DENSITY_ROUTE_TOL).run(|t| {
        let cases = [
            (0.0, 0.0, 1.0),
            (2.0 * PI / 5.0, -1.5, 1.3),
            (PI / 4.0, 2.0, 0.5),
        ];
        for &(alpha, xi, sigma) in &cases {
            let spec = BeamSpec::with_spread(sigma)?;
            let l = make_boost(alpha, xi)?;
            let small = build_grid(&spec, 8, 8)?;
            let fact = reduced_density(&l, &small, &spec)?;
            t.record(fact.max_abs_diff(&reduced_density_direct(&l, &small, &spec)?));
            t.record(fact.max_abs_diff(&reduced_density_helicity(&l, &small, &spec)?));
            t.record(fact.max_abs_diff(&reduced_density_with(&l, &small, &spec, k.gauge)?));

            let grid = build_grid(&spec, 32, 32)?;
            let rho = reduced_density(&l, &grid, &spec)?;
            t.record(rho.hermiticity_defect());
            t.record((rho.trace().re - 1.0).abs());
            t.record((-rho.min_eigenvalue()? - 1e-9).max(0.0));
        }
        Ok(())
    })
}

fn bell_group() -> GroupResult {
    Tally::new("bell_limit", BELL_TOL).run(|t| {
        let spec = BeamSpec::with_spread(0.01)?;
        let grid = build_grid(&spec, 64, 16)?;
        let rho = reduced_density(&LorentzTransform::identity(), &grid, &spec)?;
        t.record(rho.max_abs_diff(&DensityMatrix::bell()));
        t.record((log_negativity(&rho)? - 1.0).abs());
        Ok(())
    })
}

fn rotated(rho: &DensityMatrix, r: &LorentzTransform) -> Result<DensityMatrix> {
    let r3: Matrix3<Complex<f64>> = r
        .matrix()
        .fixed_view::<3, 3>(1, 1)
        .map(|x| Complex::new(x, 0.0));
    let rr = Matrix9::from_fn(|i, j| r3[(i / 3, j / 3)] * r3[(i % 3, j % 3)]);
    DensityMatrix::from_unnormalized(rr * rho.matrix() * rr.adjoint())
}

fn rotation_group(rng: &mut ChaCha8Rng) -> GroupResult {
    Tally::new("ln_rotation_invariance", ROTATION_LN_TOL).run(|t| {
        let spec = BeamSpec::with_spread(1.0)?;
        let grid = build_grid(&spec, 32, 32)?;
        let rho0 = reduced_density(&LorentzTransform::identity(), &grid, &spec)?;
        let ln0 = log_negativity(&rho0)?;
        for _ in 0..4 {
            let g = rng.random_range(-PI..PI);
            for r in [rot_z(g)?, rot_y(g)?] {
                let rho = reduced_density(&r, &grid, &spec)?;
                t.record((log_negativity(&rho)? - ln0).abs());
                t.record(rho.max_abs_diff(&rotated(&rho0, &r)?));
            }
        }
        for _ in 0..8 {
            let r = compose(
                &rot_z(rng.random_range(-PI..PI))?,
                &rot_y(rng.random_range(-PI..PI))?,
            );
            let rho = rotated(&rho0, &r)?;
            t.record((log_negativity(&rho)? - ln0).abs());
        }
        let boosted = reduced_density(&make_boost(1.0, 1.2)?, &grid, &spec)?;
        t.record((log_negativity(&boosted)? - log_negativity_b(&boosted)?).abs());
        Ok(())
    })
}

fn omega_group() -> GroupResult {
    Tally::new("omega_independence", OMEGA_LN_TOL).run(|t| {
        for &(alpha, xi) in &[(0.0, 1.0), (2.0 * PI / 5.0, -2.0), (PI / 2.0, 2.5)] {
            let l = make_boost(alpha, xi)?;
            let base = BeamSpec::new(1.0, 1.0)?;
            let ln_base =
                log_negativity(&reduced_density(&l, &build_grid(&base, 24, 24)?, &base)?)?;
            for w in [0.1, 10.0] {
                let spec = BeamSpec::new(1.0, w)?;
                let ln = log_negativity(&reduced_density(&l, &build_grid(&spec, 24, 24)?, &spec)?)?;
                t.record((ln - ln_base).abs());
            }
        }
        Ok(())
    })
}

fn convergence_group() -> GroupResult {
    Tally::new("convergence", CONVERGENCE_TOL).run(|t| {
        let spec = BeamSpec::with_spread(1.0)?;
        let coarse = build_grid(&spec, 64, 64)?;
        let fine = build_grid(&spec, 128, 128)?;
        for xi in [-2.0, 0.0, 2.0] {
            let l = make_boost(2.0 * PI / 5.0, xi)?;
            let a = log_negativity(&reduced_density(&l, &coarse, &spec)?)?;
            let b = log_negativity(&reduced_density(&l, &fine, &spec)?)?;
            t.record((a - b).abs());
        }
        Ok(())
    })
}

/// Runs every group with the given kernels.
pub fn validate_with(kernels: &Kernels) -> ValidationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let groups = vec![
        metric_group(&mut rng),
        wigner_group(&mut rng, kernels),
        d_form_group(&mut rng, kernels),
        composition_group(&mut rng, kernels),
        density_group(kernels),
        bell_group(),
        rotation_group(&mut rng),
        omega_group(),
        convergence_group(),
    ];
    ValidationReport {
        passed: groups.iter().all(|g| g.passed),
        groups,
    }
}

/// Runs every group with the production kernels.
pub fn validate() -> ValidationReport {
    validate_with(&Kernels::default())
}
