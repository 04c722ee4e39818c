use photon_frames::lorentz::{compose, FourVector};
use photon_frames::validate::{random_null, random_transform};
use photon_frames::wigner::{
    boost_helicity_state, reduce_angle, wigner_angle, wigner_angle_oracle, Helicity,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dist(a: f64, b: f64) -> f64 {
    reduce_angle(a - b).abs()
}

#[test]
fn closed_form_matches_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..2000 {
        let l = random_transform(&mut rng, 5);
        let p = random_null(&mut rng);
        let a = wigner_angle(&l, &p).unwrap().radians();
        let b = wigner_angle_oracle(&l, &p).unwrap().radians();
        worst = worst.max(dist(a, b));
    }
    assert!(worst < 1e-9, "worst disagreement {worst:e}");
}

#[test]
fn composition_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let a = random_transform(&mut rng, 3);
        let b = random_transform(&mut rng, 3);
        let p = random_null(&mut rng);
        let lhs = wigner_angle(&compose(&b, &a), &p).unwrap().radians();
        let rhs = wigner_angle(&b, &a.apply(&p)).unwrap().radians()
            + wigner_angle(&a, &p).unwrap().radians();
        assert!(dist(lhs, rhs) < 1e-9);
        let lhs = wigner_angle_oracle(&compose(&b, &a), &p).unwrap().radians();
        let rhs = wigner_angle_oracle(&b, &a.apply(&p)).unwrap().radians()
            + wigner_angle_oracle(&a, &p).unwrap().radians();
        assert!(dist(lhs, rhs) < 1e-9);
    }
}

#[test]
fn angle_is_frequency_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let l = random_transform(&mut rng, 5);
        let p = random_null(&mut rng);
        let unit = p * (1.0 / p.t);
        let base = wigner_angle(&l, &unit).unwrap().radians();
        let base_oracle = wigner_angle_oracle(&l, &unit).unwrap().radians();
        for w in [0.1, 1.0, 10.0] {
            let q: FourVector = unit * w;
            assert!(dist(wigner_angle(&l, &q).unwrap().radians(), base) < 1e-13);
            assert!(dist(wigner_angle_oracle(&l, &q).unwrap().radians(), base_oracle) < 1e-10);
        }
    }
}

#[test]
fn helicity_phase_is_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let l = random_transform(&mut rng, 5);
        let p = random_null(&mut rng);
        for lam in Helicity::BOTH {
            let (lp, phase) = boost_helicity_state(&l, &p, lam).unwrap();
            assert!((phase.norm() - 1.0).abs() < 1e-15);
            assert!(lp.max_abs_diff(&l.apply(&p)) == 0.0);
        }
        let (_, plus) = boost_helicity_state(&l, &p, Helicity::Plus).unwrap();
        let (_, minus) = boost_helicity_state(&l, &p, Helicity::Minus).unwrap();
        assert!((plus.conj() - minus).norm() < 1e-15);
    }
}

#[test]
fn angles_are_reported_half_open() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let l = random_transform(&mut rng, 5);
        let p = random_null(&mut rng);
        let a = wigner_angle(&l, &p).unwrap().radians();
        assert!(a > -std::f64::consts::PI && a <= std::f64::consts::PI);
    }
}
