use std::f64::consts::PI;

use nalgebra::{Complex, Matrix3};
use photon_frames::beam::{
    build_grid, reduced_density, reduced_density_direct, reduced_density_helicity, BeamSpec,
};
use photon_frames::density::{DensityMatrix, Matrix9};
use photon_frames::lorentz::{rot_z, LorentzTransform};
use photon_frames::sweep::make_boost;

type C64 = Complex<f64>;

fn rotate_pair(rho: &DensityMatrix, l: &LorentzTransform) -> Matrix9 {
    let r: Matrix3<C64> = l
        .matrix()
        .fixed_view::<3, 3>(1, 1)
        .map(|x| C64::new(x, 0.0));
    let rr = Matrix9::from_fn(|i, j| r[(i / 3, j / 3)] * r[(i % 3, j % 3)]);
    rr * rho.matrix() * rr.adjoint()
}

const CASES: [(f64, f64, f64); 5] = [
    (0.0, 0.0, 1.0),
    (0.0, 2.0, 1.0),
    (2.0 * PI / 5.0, -1.5, 1.3),
    (PI / 2.0, 1.0, 0.5),
    (PI / 8.0, -2.5, 0.1),
];

#[test]
fn factorized_equals_direct_double_sum() {
    for &(alpha, xi, sigma) in &CASES {
        let spec = BeamSpec::with_spread(sigma).unwrap();
        let grid = build_grid(&spec, 8, 8).unwrap();
        let l = make_boost(alpha, xi).unwrap();
        let a = reduced_density(&l, &grid, &spec).unwrap();
        let b = reduced_density_direct(&l, &grid, &spec).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-10, "{alpha} {xi} {sigma}");
    }
}

#[test]
fn helicity_route_equals_linear_route() {
    for &(alpha, xi, sigma) in &CASES {
        let spec = BeamSpec::with_spread(sigma).unwrap();
        let grid = build_grid(&spec, 16, 16).unwrap();
        let l = make_boost(alpha, xi).unwrap();
        let a = reduced_density(&l, &grid, &spec).unwrap();
        let b = reduced_density_helicity(&l, &grid, &spec).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-10, "{alpha} {xi} {sigma}");
    }
}

#[test]
fn density_invariants_hold() {
    for &(alpha, xi, sigma) in &CASES {
        let spec = BeamSpec::with_spread(sigma).unwrap();
        let grid = build_grid(&spec, 32, 32).unwrap();
        let rho = reduced_density(&make_boost(alpha, xi).unwrap(), &grid, &spec).unwrap();
        assert!(rho.hermiticity_defect() < 1e-10);
        assert!((rho.trace().re - 1.0).abs() < 1e-10 && rho.trace().im.abs() < 1e-10);
        assert!(rho.min_eigenvalue().unwrap() >= -1e-9);
    }
}

#[test]
fn narrow_beam_is_bell_state() {
    let spec = BeamSpec::with_spread(0.01).unwrap();
    let grid = build_grid(&spec, 64, 64).unwrap();
    let rho = reduced_density(&LorentzTransform::identity(), &grid, &spec).unwrap();
    assert!(rho.max_abs_diff(&DensityMatrix::bell()) < 1e-3);
}

#[test]
fn rotation_conjugates_rest_state() {
    let spec = BeamSpec::with_spread(0.8).unwrap();
    let grid = build_grid(&spec, 32, 32).unwrap();
    let rho0 = reduced_density(&LorentzTransform::identity(), &grid, &spec).unwrap();
    let r = rot_z(0.77).unwrap();
    let rho = reduced_density(&r, &grid, &spec).unwrap();
    let expect = rotate_pair(&rho0, &r);
    let diff = (rho.matrix() - expect)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    assert!(diff < 1e-10);
}

#[test]
fn independent_of_shell_momentum() {
    for &(alpha, xi, sigma) in &CASES {
        let l = make_boost(alpha, xi).unwrap();
        let a = BeamSpec::new(sigma, 1.0).unwrap();
        let b = BeamSpec::new(sigma, 10.0).unwrap();
        let ra = reduced_density(&l, &build_grid(&a, 24, 24).unwrap(), &a).unwrap();
        let rb = reduced_density(&l, &build_grid(&b, 24, 24).unwrap(), &b).unwrap();
        assert!(ra.max_abs_diff(&rb) < 1e-12);
    }
}

#[test]
fn quadrature_converges_at_default_size() {
    for &(alpha, xi, sigma) in &CASES {
        let spec = BeamSpec::with_spread(sigma).unwrap();
        let l = make_boost(alpha, xi).unwrap();
        let a = reduced_density(&l, &build_grid(&spec, 64, 64).unwrap(), &spec).unwrap();
        let b = reduced_density(&l, &build_grid(&spec, 128, 128).unwrap(), &spec).unwrap();
        assert!(
            a.max_abs_diff(&b) < 1e-6,
            "{alpha} {xi} {sigma}: {:e}",
            a.max_abs_diff(&b)
        );
    }
}

/// Midpoint rule with 10⁶ panels over [0, π].
fn midpoint_mean(sigma: f64, g: impl Fn(f64) -> f64) -> f64 {
    let n = 1_000_000;
    let h = PI / n as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..n {
        let t = (i as f64 + 0.5) * h;
        let w = (-(t * t) / (sigma * sigma)).exp() * t.sin();
        num += w * g(t);
        den += w;
    }
    num / den
}

#[test]
fn grid_mean_angle_matches_fine_integral() {
    let sigma = 0.01;
    let spec = BeamSpec::with_spread(sigma).unwrap();
    let grid = build_grid(&spec, 128, 8).unwrap();
    let q = grid.mean(|d| d.theta());
    let oracle = midpoint_mean(sigma, |t| t);
    assert!((q - oracle).abs() < 1e-8, "{q} vs {oracle}");
    // small-angle limit of the mean is σ√π/2
    assert!((oracle / (sigma * PI.sqrt() / 2.0) - 1.0).abs() < 1e-4);
}

#[test]
fn grid_mean_cosine_is_converged() {
    let spec = BeamSpec::with_spread(0.5).unwrap();
    let a = build_grid(&spec, 64, 64).unwrap().mean(|d| d.theta().cos());
    let b = build_grid(&spec, 128, 128)
        .unwrap()
        .mean(|d| d.theta().cos());
    assert!((a - b).abs() < 1e-10);
    assert!((a - midpoint_mean(0.5, f64::cos)).abs() < 1e-9);
}
