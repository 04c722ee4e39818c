use nalgebra::{Complex, SMatrix};
use photon_frames::beam::{build_grid, reduced_density, BeamSpec};
use photon_frames::density::{DensityMatrix, Matrix9};
use photon_frames::entanglement::{
    hermitian_eigen, hermitian_eigenvalues, log_negativity, log_negativity_b, partial_transpose_a,
};
use photon_frames::lorentz::{compose, rot_y, rot_z};
use photon_frames::sweep::make_boost;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C64 = Complex<f64>;

fn random_hermitian<R: Rng>(rng: &mut R) -> Matrix9 {
    let a =
        Matrix9::from_fn(|_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    (a + a.adjoint()) * C64::new(0.5, 0.0)
}

#[test]
fn reconstruction_and_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let m = random_hermitian(&mut rng);
        let e = hermitian_eigen(&m).unwrap();
        let lam = SMatrix::<C64, 9, 9>::from_diagonal(&e.values.map(|x| C64::new(x, 0.0)));
        let back = e.vectors * lam * e.vectors.adjoint();
        assert!((back - m).norm() < 1e-9);
        let ortho = e.vectors.adjoint() * e.vectors - Matrix9::identity();
        assert!(ortho.norm() < 1e-12);
        for k in 0..9 {
            let v = e.vectors.column(k);
            assert!((m * v - v * C64::new(e.values[k], 0.0)).norm() < 1e-9);
        }
        assert!(e
            .values
            .iter()
            .zip(e.values.iter().skip(1))
            .all(|(a, b)| a >= b));
        assert!((e.values.sum() - m.trace().re).abs() < 1e-9);
    }
}

#[test]
fn degenerate_spectrum() {
    let mut d = Matrix9::zeros();
    for i in 0..9 {
        d[(i, i)] = C64::new(if i < 4 { 0.25 } else { 0.0 }, 0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let h = random_hermitian(&mut rng);
    let u = hermitian_eigen(&h).unwrap().vectors;
    let m = u * d * u.adjoint();
    let s = hermitian_eigenvalues(&m).unwrap();
    for (i, l) in s.eigenvalues().iter().enumerate() {
        let expect = if i < 4 { 0.25 } else { 0.0 };
        assert!((l - expect).abs() < 1e-12);
    }
}

#[test]
fn partial_transpose_preserves_trace_and_hermiticity() {
    let spec = BeamSpec::with_spread(1.0).unwrap();
    let grid = build_grid(&spec, 32, 32).unwrap();
    for &(a, xi) in &[(0.0, 1.0), (1.2, -2.0), (1.57, 0.4)] {
        let rho = reduced_density(&make_boost(a, xi).unwrap(), &grid, &spec).unwrap();
        let pt = partial_transpose_a(rho.matrix());
        assert!((pt - pt.adjoint()).norm() < 1e-10);
        assert!((hermitian_eigenvalues(&pt).unwrap().sum() - 1.0).abs() < 1e-9);
        assert_eq!(partial_transpose_a(&pt), *rho.matrix());
        assert!((log_negativity(&rho).unwrap() - log_negativity_b(&rho).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn log_negativity_is_local_rotation_invariant() {
    let spec = BeamSpec::with_spread(1.0).unwrap();
    let grid = build_grid(&spec, 32, 32).unwrap();
    let rho = reduced_density(&make_boost(0.9, 1.1).unwrap(), &grid, &spec).unwrap();
    let base = log_negativity(&rho).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let r = compose(
            &compose(
                &rot_z(rng.random_range(-3.0..3.0)).unwrap(),
                &rot_y(rng.random_range(-3.0..3.0)).unwrap(),
            ),
            &rot_z(rng.random_range(-3.0..3.0)).unwrap(),
        );
        let r3 = r
            .matrix()
            .fixed_view::<3, 3>(1, 1)
            .map(|x| C64::new(x, 0.0));
        let rr = Matrix9::from_fn(|i, j| r3[(i / 3, j / 3)] * r3[(i % 3, j % 3)]);
        let rotated = DensityMatrix::from_unnormalized(rr * rho.matrix() * rr.adjoint()).unwrap();
        assert!((log_negativity(&rotated).unwrap() - base).abs() < 1e-8);
    }
}

#[test]
fn narrow_beam_log_negativity_is_one() {
    let spec = BeamSpec::with_spread(0.01).unwrap();
    let grid = build_grid(&spec, 64, 64).unwrap();
    let rho = reduced_density(
        &photon_frames::lorentz::LorentzTransform::identity(),
        &grid,
        &spec,
    )
    .unwrap();
    assert!((log_negativity(&rho).unwrap() - 1.0).abs() < 1e-3);
}
