//! Acceptance suite: one test per criterion, each printing a pass line
//! with the measured figure. Tolerances are pinned in the assertions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gtomo::fixtures;
use gtomo::group_algebra::{convolve, solve_unitary_element, GroupFunction};
use gtomo::inverse::{decide, observable_symbols, StochasticFamily};
use gtomo::irrep::IrrepRegistry;
use gtomo::linalg::{c, cr, hermitian_eigenvalues, CMat};
use gtomo::naimark::{certify_positive, gns_construct, gns_expectation};
use gtomo::quadrature::haar_grid;
use gtomo::su2::{su2_reconstruct, su2_reconstruct_direct, su2_tomogram_samples, wigner_d};
use gtomo::su3::{phase_weighted_tomogram_sum, su3_defining, su3_tomogram, trace_at_torus_conjugate};
use gtomo::threej::{completeness_identity_holds, diagonal_identity_holds};
use gtomo::tomography::{
    positive_function, reconstruct, spectral_frames, tomogram, DensityState,
};

fn random_bloch_point(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    loop {
        let x = rng.gen_range(-1.0..1.0);
        let y = rng.gen_range(-1.0..1.0);
        let z = rng.gen_range(-1.0..1.0);
        if x * x + y * y + z * z <= 1.0 {
            return (x, y, z);
        }
    }
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> DensityState {
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let h = &m * m.adjoint() + CMat::identity(n, n).scale(1e-4);
    let t = h.diagonal().sum().re;
    DensityState::new(h.scale(1.0 / t), 1e-9).unwrap()
}

fn d2() -> (IrrepRegistry, usize) {
    (fixtures::s3_registry(), 2)
}

#[test]
fn criterion_01_s3_naimark_spectrum() {
    // Library path.
    let cert = certify_positive(&fixtures::chi2());
    let expected = [0.0, 0.0, 3.0, 3.0, 3.0, 3.0];
    let mut worst: f64 = 0.0;
    for (v, e) in cert.eigenvalues.iter().zip(expected) {
        worst = worst.max((v - e).abs());
    }
    assert!(worst < 1e-9, "spectrum deviates by {worst:.3e}");
    assert!(cert.is_positive());

    // The actual `naimark check` command on the shipped fixture, timed.
    let fixture = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join("chi2.json");
    let start = Instant::now();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_gtomo"))
        .args(["naimark", "check", fixture.to_str().unwrap()])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let eigs: Vec<f64> = doc["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for (v, e) in eigs.iter().zip(expected) {
        worst = worst.max((v - e).abs());
    }
    assert!(worst < 1e-9, "CLI spectrum deviates by {worst:.3e}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 01 PASS: naimark check gives (0,0,3,3,3,3), max deviation {:.3e}, {:?}",
        worst, elapsed
    );
}

#[test]
fn criterion_02_general_positive_function_spectrum() {
    let g = fixtures::s3();
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = rng.gen_range(-1.0..1.0);
        let b = rng.gen_range(-1.0..1.0);
        let r = rng.gen_range(-1.0..1.0);
        let s = rng.gen_range(-1.0..1.0);
        let t = rng.gen_range(-1.0..1.0);
        let f = GroupFunction::new(
            g.clone(),
            vec![cr(1.0), c(a, b), c(a, -b), cr(r), cr(s), cr(t)],
        )
        .unwrap();
        let cert = certify_positive(&f);
        let radical =
            (3.0 * b * b - r * t - s * t - r * s + r * r + s * s + t * t).max(0.0).sqrt();
        let mut expected = vec![
            2.0 * a + 1.0 + (r + s + t),
            2.0 * a + 1.0 - (r + s + t),
            1.0 - a + radical,
            1.0 - a + radical,
            1.0 - a - radical,
            1.0 - a - radical,
        ];
        expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (v, e) in cert.eigenvalues.iter().zip(&expected) {
            worst = worst.max((v - e).abs());
        }
    }
    assert!(worst < 1e-8, "worst multiset deviation {worst:.3e}");
    println!(
        "criterion 02 PASS: 100 random Hermitian-family spectra match closed forms, worst {:.3e}",
        worst
    );
}

#[test]
fn criterion_03_bloch_tomogram_closed_forms() {
    let (reg, _) = d2();
    let d = reg.find("D2").unwrap();
    let frames = spectral_frames(d).unwrap();
    // Components are compared by eigenphase: ascending frames place the
    // phase-0 component first, the reference display lists phase π first.
    for j in [3, 4, 5] {
        assert!(frames[j].phases[0].abs() < 1e-12);
        assert!((frames[j].phases[1] - PI).abs() < 1e-12);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let s3 = 3f64.sqrt();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (x, y, z) = random_bloch_point(&mut rng);
        let rho = DensityState::bloch(x, y, z).unwrap();
        let tom = tomogram(&rho, d).unwrap();
        // (phase π, phase 0) closed forms at g4, g5, g6.
        let reference = [
            ((1.0 - x) / 2.0, (1.0 + x) / 2.0),
            ((1.0 + (x + s3 * y) / 2.0) / 2.0, (1.0 - (x + s3 * y) / 2.0) / 2.0),
            ((1.0 + (x - s3 * y) / 2.0) / 2.0, (1.0 - (x - s3 * y) / 2.0) / 2.0),
        ];
        for (elem, (at_pi, at_zero)) in [3usize, 4, 5].iter().zip(reference) {
            worst = worst.max((tom.vectors[*elem][1] - at_pi).abs());
            worst = worst.max((tom.vectors[*elem][0] - at_zero).abs());
        }
    }
    assert!(worst < 1e-12, "worst deviation {worst:.3e}");
    println!(
        "criterion 03 PASS: 100 Bloch tomograms match the reference closed forms, worst {:.3e}",
        worst
    );
}

#[test]
fn criterion_04_finite_group_round_trip() {
    let (reg, _) = d2();
    let d = reg.find("D2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (x, y, z) = random_bloch_point(&mut rng);
        let rho = DensityState::bloch(x, y, z).unwrap();
        let phi = positive_function(&rho, d).unwrap();
        let (back, _) = reconstruct(&phi, d);
        worst = worst.max((back - rho.matrix()).norm());
    }
    assert!(worst < 1e-10, "worst round-trip error {worst:.3e}");
    println!(
        "criterion 04 PASS: 1000 reconstruct∘positive_function round trips, worst {:.3e}",
        worst
    );
}

#[test]
fn criterion_05_inverse_problem_boundary() {
    let (reg, _) = d2();
    let d = reg.find("D2").unwrap();
    let band = 1e-7;
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut skipped_band = 0usize;
    let mut worst_state: f64 = 0.0;
    for ix in 0..25 {
        for iy in 0..25 {
            for iz in 0..25 {
                let x = -1.2 + 0.1 * ix as f64;
                let y = -1.2 + 0.1 * iy as f64;
                let z = -1.2 + 0.1 * iz as f64;
                let r2 = x * x + y * y + z * z;
                if (r2 - 1.0).abs() < band {
                    skipped_band += 1;
                    continue;
                }
                let s3 = 3f64.sqrt();
                let xs = [z, z, z, -x, (x + s3 * y) / 2.0, (x - s3 * y) / 2.0];
                let lo = |v: f64| [(1.0 + v) / 2.0, (1.0 - v) / 2.0];
                let hi = |v: f64| [(1.0 - v) / 2.0, (1.0 + v) / 2.0];
                let vectors = vec![
                    lo(xs[0]).to_vec(),
                    lo(xs[1]).to_vec(),
                    hi(xs[2]).to_vec(),
                    hi(xs[3]).to_vec(),
                    hi(xs[4]).to_vec(),
                    hi(xs[5]).to_vec(),
                ];
                let tau = match StochasticFamily::new(fixtures::s3(), "D2", vectors) {
                    Ok(tau) => tau,
                    Err(_) => {
                        // Leaves the stochastic cube entirely; such points
                        // are necessarily outside the ball.
                        assert!(r2 > 1.0, "ball point ({x},{y},{z}) left the cube");
                        rejected += 1;
                        continue;
                    }
                };
                let verdict = decide(&tau, d, None).unwrap();
                if r2 <= 1.0 {
                    assert!(
                        verdict.accepted(),
                        "ball point ({x},{y},{z}) rejected: compat={} herm={} pos={}",
                        verdict.compatible,
                        verdict.hermitian,
                        verdict.positive
                    );
                    let state = verdict.recovered_state.unwrap();
                    let expected = DensityState::bloch(x, y, z).unwrap();
                    worst_state = worst_state.max((state.matrix() - expected.matrix()).norm());
                    accepted += 1;
                } else {
                    assert!(
                        !verdict.accepted(),
                        "outside point ({x},{y},{z}) with r² = {r2} accepted"
                    );
                    rejected += 1;
                }
            }
        }
    }
    assert!(worst_state < 1e-9, "recovered state error {worst_state:.3e}");
    println!(
        "criterion 05 PASS: 25³ sweep accepts exactly the unit ball ({} accepted, {} rejected, {} on the ±1e-7 band), worst recovered-state error {:.3e}",
        accepted, rejected, skipped_band, worst_state
    );
}

#[test]
fn criterion_06_stochastic_but_not_tomogram_witness() {
    let (reg, _) = d2();
    let d = reg.find("D2").unwrap();
    let (theta, phi_angle, lam2) = (FRAC_PI_2, FRAC_PI_6, 0.05);
    let a = fixtures::observable_a(theta, phi_angle, 0.0, 1.0 + lam2, lam2);

    // Independent check: A has a negative eigenvalue.
    let eigs = hermitian_eigenvalues(&a);
    assert!(eigs[0] < -1e-3 && eigs[1] > 0.0);

    // Stochasticity bound (1+2λ₂)·M(φ) ≤ 1 for this parameter point.
    let m_phi = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]
        .iter()
        .map(|alpha| (phi_angle + alpha).cos().abs())
        .fold(0.0f64, f64::max);
    assert!((1.0 + 2.0 * lam2) * m_phi <= 1.0);

    let symbols = observable_symbols(&a, d).unwrap();
    for v in &symbols {
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(v.iter().all(|&w| w >= -1e-12), "not stochastic: {v:?}");
    }
    let tau = StochasticFamily::new(fixtures::s3(), "D2", symbols).unwrap();
    let verdict = decide(&tau, d, None).unwrap();
    assert!(verdict.compatible);
    assert!(verdict.hermitian);
    assert!(!verdict.positive);
    println!(
        "criterion 06 PASS: observable witness is stochastic, compatible, hermitian, and not positive (min Naimark eigenvalue {:.6})",
        verdict.certificate.min_eigenvalue
    );
}

#[test]
fn criterion_07_gns_reproduction() {
    let (reg, _) = d2();
    let d = reg.find("D2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut worst_repro: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    for _ in 0..200 {
        let (x, y, z) = random_bloch_point(&mut rng);
        let rho = DensityState::bloch(x, y, z).unwrap();
        let phi = positive_function(&rho, d).unwrap();
        let model = gns_construct(&phi, d).unwrap();
        for g in fixtures::s3().elements() {
            let value = gns_expectation(&model, g);
            worst_repro = worst_repro.max((value - phi.function().value(g)).norm());
        }
        let trace = model.rho_xi.diagonal().sum().re;
        let purity = (&model.rho_xi * &model.rho_xi).diagonal().sum().re;
        worst_trace = worst_trace.max((trace - 1.0).abs()).max((purity - 1.0).abs());
    }
    assert!(worst_repro < 1e-9, "worst reproduction {worst_repro:.3e}");
    assert!(worst_trace < 1e-10, "worst trace/purity {worst_trace:.3e}");
    println!(
        "criterion 07 PASS: 200 GNS models reproduce φ (worst {:.3e}) with unit trace and purity (worst {:.3e})",
        worst_repro, worst_trace
    );
}

#[test]
fn criterion_08_z2_unitary_solver() {
    let reg = fixtures::z2_registry();
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let alpha = rng.gen_range(0.0..std::f64::consts::TAU);
        let beta = rng.gen_range(0.0..std::f64::consts::TAU);
        let ua = CMat::from_row_slice(1, 1, &[c(alpha.cos(), alpha.sin())]);
        let ub = CMat::from_row_slice(1, 1, &[c(beta.cos(), beta.sin())]);
        let solution = solve_unitary_element(&[ua.clone(), ub.clone()], &reg).unwrap();
        let ea = c(alpha.cos(), alpha.sin());
        let eb = c(beta.cos(), beta.sin());
        let expected = [(ea + eb) / 2.0, (ea - eb) / 2.0];
        for (v, e) in solution.f.values().iter().zip(expected) {
            worst = worst.max((v - e).norm());
        }

        // Homomorphism: f_g · f_h = f_{gh} under convolution.
        let alpha2 = rng.gen_range(0.0..std::f64::consts::TAU);
        let beta2 = rng.gen_range(0.0..std::f64::consts::TAU);
        let ua2 = CMat::from_row_slice(1, 1, &[c(alpha2.cos(), alpha2.sin())]);
        let ub2 = CMat::from_row_slice(1, 1, &[c(beta2.cos(), beta2.sin())]);
        let f2 = solve_unitary_element(&[ua2.clone(), ub2.clone()], &reg).unwrap();
        let product = solve_unitary_element(&[&ua * ua2, &ub * ub2], &reg).unwrap();
        let conv = convolve(&solution.f, &f2.f).unwrap();
        for (v, e) in conv.values().iter().zip(product.f.values()) {
            worst = worst.max((v - e).norm());
        }
    }
    assert!(worst < 1e-12, "worst deviation {worst:.3e}");
    println!(
        "criterion 08 PASS: 100 Z2 unitary solves match the closed form and compose, worst {:.3e}",
        worst
    );
}

#[test]
fn criterion_09_su2_reconstruction() {
    let start = Instant::now();
    let grid = haar_grid(8).unwrap();
    assert!(grid.certified_two_j_max() >= 6);
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let mut worst: f64 = 0.0;
    for two_j in [1i64, 2, 3] {
        for _ in 0..20 {
            let rho = random_state((two_j + 1) as usize, &mut rng);
            let samples = su2_tomogram_samples(&rho, two_j, &grid).unwrap();
            let rec = su2_reconstruct(&samples, two_j, &grid).unwrap();
            worst = worst.max((rec - rho.matrix()).norm());
        }
    }
    assert!(worst < 1e-7, "worst reconstruction error {worst:.3e}");

    // The generic reconstruction path agrees with the 3j path at j = 1/2.
    let mut worst_agree: f64 = 0.0;
    for _ in 0..5 {
        let rho = random_state(2, &mut rng);
        let samples = su2_tomogram_samples(&rho, 1, &grid).unwrap();
        let rec = su2_reconstruct(&samples, 1, &grid).unwrap();
        let phi: Vec<Complex64> = grid
            .nodes()
            .iter()
            .map(|g| (rho.matrix() * wigner_d(1, g).unwrap()).diagonal().sum())
            .collect();
        let direct = su2_reconstruct_direct(&phi, 1, &grid).unwrap();
        worst_agree = worst_agree.max((direct - rec).norm());
    }
    assert!(worst_agree < 1e-7, "paths disagree by {worst_agree:.3e}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 09 PASS: 60 SU(2) reconstructions (worst {:.3e}), 3j vs generic path {:.3e}, in {:?}",
        worst, worst_agree, elapsed
    );
}

#[test]
fn criterion_10_threej_identities_exact() {
    for two_j in 0..=4 {
        for two_big_j in (0..=2 * two_j).step_by(2) {
            assert!(
                diagonal_identity_holds(two_j, two_big_j),
                "diagonal identity fails at 2j={two_j}, 2J={two_big_j}"
            );
        }
        let ms: Vec<i64> = (-two_j..=two_j).step_by(2).collect();
        for &m1 in &ms {
            for &m2 in &ms {
                for &m1p in &ms {
                    for &m2p in &ms {
                        assert!(
                            completeness_identity_holds(two_j, m1, m2, m1p, m2p),
                            "completeness fails at 2j={two_j}, ({m1},{m2},{m1p},{m2p})"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 10 PASS: both 3j identities hold exactly in rational arithmetic for j ≤ 2");
}

#[test]
fn criterion_11_finite_subgroup_shortcut() {
    let emb = fixtures::s3_in_u2();
    let mut rng = ChaCha8Rng::seed_from_u64(1011);
    let mut agreements = 0usize;
    for trial in 0..100 {
        let mu: f64 = if trial % 2 == 0 {
            rng.gen_range(0.0..0.5)
        } else {
            rng.gen_range(-0.5..-1e-6)
        };
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        let ph = rng.gen_range(0.0..std::f64::consts::TAU);
        let u = CMat::from_row_slice(
            2,
            2,
            &[
                cr((t / 2.0).cos()),
                c(0.0, ph).exp() * (t / 2.0).sin(),
                -c(0.0, -ph).exp() * (t / 2.0).sin(),
                cr((t / 2.0).cos()),
            ],
        );
        let a = &u
            * CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![cr(1.0 - mu), cr(mu)]))
            * u.adjoint();
        let direct_psd = hermitian_eigenvalues(&a)[0] >= -1e-12;
        let cert = gtomo::embedding::finite_subgroup_positivity(
            |dm| (a.clone() * dm).diagonal().sum(),
            &emb,
        )
        .unwrap();
        assert_eq!(
            cert.is_positive(),
            direct_psd,
            "trial {trial}: mu = {mu}, min eig {:.3e}",
            cert.min_eigenvalue
        );
        agreements += 1;
    }
    println!(
        "criterion 11 PASS: subgroup Naimark verdicts agree with direct eigenvalue signs on {} matrices",
        agreements
    );
}

#[test]
fn criterion_12_su3_tomograms() {
    let mut rng = ChaCha8Rng::seed_from_u64(1012);
    let mut worst_stochastic: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    for _ in 0..1000 {
        let rho = random_state(3, &mut rng);
        let mut params = [0.0; 8];
        for v in &mut params {
            *v = rng.gen_range(-3.0..3.0);
        }
        let d = su3_defining(&params).unwrap();
        let tom = su3_tomogram(&rho, &d).unwrap();
        let total: f64 = tom.iter().map(|(_, w)| w).sum();
        worst_stochastic = worst_stochastic.max((total - 1.0).abs());
        for &(_, w) in &tom {
            assert!(w >= -1e-12, "negative component {w}");
        }
        let (xi1, xi2) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let lhs = trace_at_torus_conjugate(&rho, &d, xi1, xi2);
        let rhs = phase_weighted_tomogram_sum(&tom, xi1, xi2);
        worst_trace = worst_trace.max((lhs - rhs).norm());
    }
    assert!(worst_stochastic < 1e-12);
    assert!(worst_trace < 1e-11);
    println!(
        "criterion 12 PASS: 1000 SU(3) tomograms stochastic (worst {:.3e}) with trace identity (worst {:.3e})",
        worst_stochastic, worst_trace
    );
}
