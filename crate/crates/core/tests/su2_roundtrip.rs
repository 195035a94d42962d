use gtomo::linalg::{c, CMat};
use gtomo::quadrature::haar_grid;
use gtomo::su2::{su2_reconstruct, su2_reconstruct_direct, su2_tomogram_samples, wigner_d};
use gtomo::tomography::DensityState;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> DensityState {
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let h = &m * m.adjoint() + CMat::identity(n, n).scale(1e-3);
    let t = h.diagonal().sum().re;
    DensityState::new(h.scale(1.0 / t), 1e-9).unwrap()
}

#[test]
fn reconstruction_round_trips_and_matches_direct_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let grid = haar_grid(8).unwrap();
    assert!(grid.certified_two_j_max() >= 6);
    for two_j in [1i64, 2, 3] {
        for _ in 0..3 {
            let rho = random_state((two_j + 1) as usize, &mut rng);
            let samples = su2_tomogram_samples(&rho, two_j, &grid).unwrap();
            let rec = su2_reconstruct(&samples, two_j, &grid).unwrap();
            let err = (rec.clone() - rho.matrix()).norm();
            assert!(err < 1e-7, "2j={two_j} err={err:.3e}");
            if two_j == 1 {
                let phi: Vec<Complex64> = grid
                    .nodes()
                    .iter()
                    .map(|g| (rho.matrix() * wigner_d(two_j, g).unwrap()).diagonal().sum())
                    .collect();
                let direct = su2_reconstruct_direct(&phi, two_j, &grid).unwrap();
                assert!((direct - rec).norm() < 1e-7);
            }
        }
    }
}

#[test]
fn uniform_tomogram_reconstructs_maximally_mixed() {
    let grid = haar_grid(8).unwrap();
    for two_j in [1i64, 2] {
        let n = (two_j + 1) as usize;
        let rho = DensityState::maximally_mixed(n);
        let samples = su2_tomogram_samples(&rho, two_j, &grid).unwrap();
        let rec = su2_reconstruct(&samples, two_j, &grid).unwrap();
        assert!((rec - rho.matrix()).norm() < 1e-10);
    }
}

#[test]
fn grid_too_small_is_refused() {
    let grid = haar_grid(2).unwrap();
    let rho = DensityState::maximally_mixed(4);
    let samples = su2_tomogram_samples(&rho, 3, &grid).unwrap();
    match su2_reconstruct(&samples, 3, &grid) {
        Err(gtomo::Error::GridOrderInsufficient { .. }) => {}
        other => panic!("expected GridOrderInsufficient, got {other:?}"),
    }
}
