//! Naimark matrices, positivity certification, the GNS construction and
//! the associated seminorm.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_group::Element;
use crate::group_algebra::{convolve, involution, GroupFunction, Involution};
use crate::irrep::Irrep;
use crate::linalg::{cr, direct_sum, hermitian_eigen, CMat, CVec};
use crate::tomography::{reconstruct, PositiveTypeFunction};

/// N(φ)_{jk} = φ(g_j⁻¹ g_k), assembled through the left-quotient table.
pub fn naimark_matrix(phi: &GroupFunction) -> CMat {
    let g = phi.group();
    let k = g.order();
    let mut n = CMat::zeros(k, k);
    for i in g.elements() {
        for j in g.elements() {
            n[(i.0, j.0)] = phi.value(g.left_quotient(i, j));
        }
    }
    n
}

/// Outcome of the full-group positivity check.
#[derive(Debug, Clone)]
pub struct PositivityCertificate {
    /// Eigenvalues of the K×K Naimark matrix, ascending.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    /// Absolute tolerance used for the verdict: 1e−9 · max(1, ‖N‖₂).
    pub tolerance: f64,
    positive: bool,
}

impl PositivityCertificate {
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn verdict(&self) -> &'static str {
        if self.positive {
            "positive"
        } else {
            "indefinite"
        }
    }
}

/// Certify positivity of a group function by eigendecomposing its full
/// Naimark matrix. For a finite group this single check is equivalent to
/// positivity over every tuple.
pub fn certify_positive(phi: &GroupFunction) -> PositivityCertificate {
    let n = naimark_matrix(phi);
    certify_matrix(&n)
}

pub(crate) fn certify_matrix(n: &CMat) -> PositivityCertificate {
    let eigenvalues = hermitian_eigen(n).0;
    let scale = eigenvalues
        .iter()
        .map(|v| v.abs())
        .fold(1.0f64, f64::max);
    let tolerance = 1e-9 * scale;
    let min_eigenvalue = eigenvalues[0];
    PositivityCertificate {
        positive: min_eigenvalue >= -tolerance,
        eigenvalues,
        min_eigenvalue,
        tolerance,
    }
}

/// Eigenvalues below this are treated as zero when counting the rank of a
/// reconstructed state.
pub const RANK_TOL: f64 = 1e-10;

/// The GNS model of a positive-type function compatible with an irrep:
/// a direct sum of r copies of D and a cyclic unit vector reproducing φ.
#[derive(Debug, Clone)]
pub struct GnsModel {
    pub rank: usize,
    pub dim: usize,
    /// U(gⱼ) = ⊕ᵣ D(gⱼ) for every group element, in element order.
    pub representation: Vec<CMat>,
    pub cyclic_vector: CVec,
    pub rho_xi: CMat,
    /// max_j |(ξ, U(gⱼ)ξ) − φ(gⱼ)|.
    pub reproduction_residual: f64,
}

impl GnsModel {
    /// Rank of the Gram matrix of the orbit {U(gⱼ)ξ}, with singular values
    /// above 1e−8 of the maximum counted.
    pub fn orbit_rank(&self) -> usize {
        let k = self.representation.len();
        let orbit: Vec<CVec> = self
            .representation
            .iter()
            .map(|u| u * &self.cyclic_vector)
            .collect();
        let mut gram = CMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = orbit[i].dotc(&orbit[j]);
            }
        }
        let vals = hermitian_eigen(&gram).0;
        let max = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if max == 0.0 {
            return 0;
        }
        vals.iter().filter(|&&v| v > 1e-8 * max).count()
    }
}

/// GNS construction for a positive-type function whose harmonic content
/// lies in the block of the irrep `d`.
///
/// With ρ = reconstruct(φ, D) = u diag(p) u† of rank r, the model is
/// U = ⊕ᵣ D and ξ = (u ⊕ ⋯ ⊕ u) ξ′ where ξ′ places √p_{s_j} at position
/// n(j−1)+s_j for the j-th nonzero eigenvalue p_{s_j}.
pub fn gns_construct(phi: &PositiveTypeFunction, d: &Irrep) -> Result<GnsModel> {
    let certificate = certify_positive(phi.function());
    if !certificate.is_positive() {
        return Err(Error::NotPositive {
            min_eigenvalue: certificate.min_eigenvalue,
        });
    }
    let n = d.dim();
    let (rho, _) = reconstruct(phi, d);
    let (p, u) = hermitian_eigen(&rho);
    let support: Vec<usize> = (0..n).filter(|&q| p[q] > RANK_TOL).collect();
    let rank = support.len();
    if rank == 0 {
        return Err(Error::RankZero);
    }
    let dim = rank * n;

    let mut xi_prime = CVec::zeros(dim);
    for (j, &s) in support.iter().enumerate() {
        xi_prime[n * j + s] = cr(p[s].sqrt());
    }
    let rotation = direct_sum(&vec![&u; rank]);
    let xi = &rotation * xi_prime;

    let representation: Vec<CMat> = d
        .group()
        .elements()
        .map(|g| direct_sum(&vec![d.matrix(g); rank]))
        .collect();

    let reproduction_residual = d
        .group()
        .elements()
        .map(|g| {
            let value = xi.dotc(&(&representation[g.0] * &xi));
            (value - phi.function().value(g)).norm()
        })
        .fold(0.0, f64::max);
    if reproduction_residual > 1e-6 {
        return Err(Error::Incompatible {
            residual: reproduction_residual,
        });
    }

    let rho_xi = &xi * xi.adjoint();
    Ok(GnsModel {
        rank,
        dim,
        representation,
        cyclic_vector: xi,
        rho_xi,
        reproduction_residual,
    })
}

/// The seminorm F(X†·X) of a group function X with respect to a certified
/// positive-type φ compatible with the irrep `d`, evaluated through the
/// column formula (K/n) Σ_q ‖X_q‖² ρ_q in the eigenbasis of ρ.
pub fn seminorm(x: &GroupFunction, phi: &PositiveTypeFunction, d: &Irrep) -> Result<f64> {
    let certificate = certify_positive(phi.function());
    if !certificate.is_positive() {
        return Err(Error::NotPositive {
            min_eigenvalue: certificate.min_eigenvalue,
        });
    }
    let n = d.dim();
    let k = d.group().order() as f64;
    let (rho, _) = reconstruct(phi, d);
    let (p, u) = hermitian_eigen(&rho);

    // Coefficients of X on the u-rotated matrix elements, in the normalized
    // convention X(g) = √(n/K) Σ_pq X_pq (u†D(g)u)_pq, so that
    // X_pq = √(n/K) Σⱼ X(gⱼ) (u†D(gⱼ)u)*_pq.
    let scale = (n as f64 / k).sqrt();
    let mut coeff = CMat::zeros(n, n);
    for g in d.group().elements() {
        let rotated = u.adjoint() * d.matrix(g) * &u;
        for r in 0..n {
            for s in 0..n {
                coeff[(r, s)] += x.value(g) * rotated[(r, s)].conj();
            }
        }
    }
    coeff = coeff.scale(scale);

    let mut value = 0.0;
    for q in 0..n {
        let col_norm_sq: f64 = (0..n).map(|pidx| coeff[(pidx, q)].norm_sqr()).sum();
        value += col_norm_sq * p[q].max(0.0);
    }
    Ok(value * k / n as f64)
}

/// The defining evaluation F(X†·X) = Σⱼ (X★·X)(gⱼ) φ(gⱼ)*, kept as an
/// independent route for cross-checking the column formula.
pub fn seminorm_by_convolution(
    x: &GroupFunction,
    phi: &PositiveTypeFunction,
) -> Result<f64> {
    let xstar = involution(x, Involution::Star);
    let prod = convolve(&xstar, x)?;
    let total: Complex64 = prod
        .values()
        .iter()
        .zip(phi.function().values())
        .map(|(a, b)| a * b.conj())
        .sum();
    Ok(total.re)
}

/// Evaluate (ξ, U(g)ξ) on one element of a GNS model.
pub fn gns_expectation(model: &GnsModel, g: Element) -> Complex64 {
    model
        .cyclic_vector
        .dotc(&(&model.representation[g.0] * &model.cyclic_vector))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tomography::{positive_function, DensityState};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chi2_naimark_matrix_block_structure() {
        let chi2 = fixtures::chi2();
        let n = naimark_matrix(&chi2);
        let expected = [
            [2.0, -1.0, -1.0, 0.0, 0.0, 0.0],
            [-1.0, 2.0, -1.0, 0.0, 0.0, 0.0],
            [-1.0, -1.0, 2.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 2.0, -1.0, -1.0],
            [0.0, 0.0, 0.0, -1.0, 2.0, -1.0],
            [0.0, 0.0, 0.0, -1.0, -1.0, 2.0],
        ];
        for i in 0..6 {
            for j in 0..6 {
                assert!((n[(i, j)] - cr(expected[i][j])).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn delta_and_constant_naimark() {
        let g = fixtures::s3();
        let delta = GroupFunction::delta(g.clone(), g.identity());
        assert!((naimark_matrix(&delta) - CMat::identity(6, 6)).norm() < 1e-15);
        let ones = GroupFunction::constant(g.clone(), cr(1.0));
        let n = naimark_matrix(&ones);
        assert!(n.iter().all(|v| (v - cr(1.0)).norm() < 1e-15));
    }

    #[test]
    fn chi2_spectrum() {
        let cert = certify_positive(&fixtures::chi2());
        let expected = [0.0, 0.0, 3.0, 3.0, 3.0, 3.0];
        for (v, e) in cert.eigenvalues.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
        assert!(cert.is_positive());
    }

    #[test]
    fn hermitian_family_closed_form_spot_check() {
        // (a,b,r,s,t) = (0.1, 0.2, 0.1, 0, 0)
        let (a, b, r, s, t) = (0.1, 0.2, 0.1, 0.0, 0.0);
        let g = fixtures::s3();
        let f = GroupFunction::new(
            g,
            vec![
                cr(1.0),
                Complex64::new(a, b),
                Complex64::new(a, -b),
                cr(r),
                cr(s),
                cr(t),
            ],
        )
        .unwrap();
        let cert = certify_positive(&f);
        let radical = (3.0 * b * b - r * t - s * t - r * s + r * r + s * s + t * t).sqrt();
        let mut expected = vec![
            2.0 * a + 1.0 + (r + s + t),
            2.0 * a + 1.0 - (r + s + t),
            1.0 - a + radical,
            1.0 - a + radical,
            1.0 - a - radical,
            1.0 - a - radical,
        ];
        expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (v, e) in cert.eigenvalues.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{v} vs {e}");
        }
    }

    #[test]
    fn indefinite_family_detected() {
        let g = fixtures::s3();
        let f = GroupFunction::new(
            g,
            [1.0, 0.0, 0.0, 1.5, 0.0, 0.0].iter().map(|&v| cr(v)).collect(),
        )
        .unwrap();
        let cert = certify_positive(&f);
        assert!(!cert.is_positive());
        // From the closed forms with a=b=0: min eigenvalue 1 − 1.5.
        assert!((cert.min_eigenvalue + 0.5).abs() < 1e-12);
    }

    #[test]
    fn tomographic_functions_certify_positive() {
        let reg = fixtures::s3_registry();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for d in reg.irreps() {
            for _ in 0..10 {
                let rho = random_state(d.dim(), &mut rng);
                let phi = positive_function(&rho, d).unwrap();
                let cert = certify_positive(phi.function());
                assert!(cert.is_positive(), "irrep {}", d.label());
            }
        }
    }

    #[test]
    fn characters_are_positive_type() {
        let reg = fixtures::s3_registry();
        for d in reg.irreps() {
            let chi = crate::irrep::character(d);
            assert!(certify_positive(&chi).is_positive());
        }
    }

    #[test]
    fn principal_submatrices_of_positive_naimark_stay_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let n = naimark_matrix(&fixtures::chi2());
        for _ in 0..30 {
            let size = rng.gen_range(1..=6);
            let mut idx: Vec<usize> = (0..6).collect();
            for i in (1..idx.len()).rev() {
                let j = rng.gen_range(0..=i);
                idx.swap(i, j);
            }
            idx.truncate(size);
            let mut sub = CMat::zeros(size, size);
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    sub[(a, b)] = n[(i, j)];
                }
            }
            let cert = certify_matrix(&sub);
            assert!(cert.is_positive());
        }
    }

    fn random_state(n: usize, rng: &mut ChaCha8Rng) -> DensityState {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let h = &m * m.adjoint() + CMat::identity(n, n).scale(1e-6);
        let trace = h.diagonal().sum().re;
        DensityState::new(h.scale(1.0 / trace), 1e-9).unwrap()
    }

    fn random_bloch(rng: &mut ChaCha8Rng) -> DensityState {
        loop {
            let x = rng.gen_range(-1.0..1.0);
            let y = rng.gen_range(-1.0..1.0);
            let z = rng.gen_range(-1.0..1.0);
            if x * x + y * y + z * z <= 1.0 {
                return DensityState::bloch(x, y, z).unwrap();
            }
        }
    }

    #[test]
    fn gns_reproduces_phi_for_mixed_states() {
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let rho = random_bloch(&mut rng);
            let phi = positive_function(&rho, d2).unwrap();
            let model = gns_construct(&phi, d2).unwrap();
            assert!(model.reproduction_residual < 1e-10);
            let trace = model.rho_xi.diagonal().sum().re;
            let purity = (&model.rho_xi * &model.rho_xi).diagonal().sum().re;
            assert!((trace - 1.0).abs() < 1e-10);
            assert!((purity - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn gns_maximally_mixed_rank_two() {
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        let rho = DensityState::maximally_mixed(2);
        let phi = positive_function(&rho, d2).unwrap();
        let model = gns_construct(&phi, d2).unwrap();
        assert_eq!(model.rank, 2);
        assert_eq!(model.dim, 4);
        assert!(model.reproduction_residual < 1e-10);
        assert_eq!(model.orbit_rank(), 4);
    }

    #[test]
    fn gns_pure_state_is_the_state_itself() {
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        // Pure state at a Bloch sphere point.
        let rho = DensityState::bloch(0.6, 0.0, 0.8).unwrap();
        let phi = positive_function(&rho, d2).unwrap();
        let model = gns_construct(&phi, d2).unwrap();
        assert_eq!(model.rank, 1);
        assert_eq!(model.dim, 2);
        // ξ is the unit eigenvector of ρ: ξξ† = ρ.
        assert!((model.rho_xi.clone() - rho.matrix()).norm() < 1e-9);
    }

    #[test]
    fn gns_matches_reference_inner_matrix() {
        // The 4×4 pure cyclic state for a rank-2 Bloch point: in the
        // eigenbasis of ρ the matrix has ρ∓ on the corners.
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        let (x, y, z) = (0.3f64, 0.25f64, -0.2f64);
        let r = (x * x + y * y + z * z).sqrt();
        let rho = DensityState::bloch(x, y, z).unwrap();
        let phi = positive_function(&rho, d2).unwrap();
        let model = gns_construct(&phi, d2).unwrap();
        let (_, u) = hermitian_eigen(rho.matrix());
        let big_u = direct_sum(&[&u, &u]);
        let inner = big_u.adjoint() * &model.rho_xi * &big_u;
        let rm = (1.0 - r) / 2.0;
        let rp = (1.0 + r) / 2.0;
        let cross = (rm * rp).sqrt();
        let mut expected = CMat::zeros(4, 4);
        expected[(0, 0)] = cr(rm);
        expected[(0, 3)] = cr(cross);
        expected[(3, 0)] = cr(cross);
        expected[(3, 3)] = cr(rp);
        assert!((inner - expected).norm() < 1e-9);
    }

    #[test]
    fn gns_rejects_indefinite_and_zero() {
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        let g = fixtures::s3();
        let f = GroupFunction::new(
            g,
            [1.0, 0.0, 0.0, 1.5, 0.0, 0.0].iter().map(|&v| cr(v)).collect(),
        )
        .unwrap();
        let phi = PositiveTypeFunction::new(f, 1e-12).unwrap();
        assert!(matches!(
            gns_construct(&phi, d2),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn seminorm_agrees_with_convolution_definition() {
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        let g = fixtures::s3();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..20 {
            let rho = random_bloch(&mut rng);
            let phi = positive_function(&rho, d2).unwrap();
            let x = GroupFunction::new(
                g.clone(),
                (0..6)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            let by_columns = seminorm(&x, &phi, d2).unwrap();
            let by_convolution = seminorm_by_convolution(&x, &phi).unwrap();
            assert!(
                (by_columns - by_convolution).abs() < 1e-10,
                "{by_columns} vs {by_convolution}"
            );
            assert!(by_columns >= -1e-12);
        }
    }

    #[test]
    fn seminorm_of_delta_e() {
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        let g = fixtures::s3();
        let rho = DensityState::bloch(0.1, 0.5, -0.3).unwrap();
        let phi = positive_function(&rho, d2).unwrap();
        let x = GroupFunction::delta(g.clone(), g.identity());
        let by_columns = seminorm(&x, &phi, d2).unwrap();
        let by_convolution = seminorm_by_convolution(&x, &phi).unwrap();
        assert!((by_columns - 1.0).abs() < 1e-10);
        assert!((by_convolution - 1.0).abs() < 1e-10);
    }

    #[test]
    fn seminorm_kernel_vanishes_on_zero_columns() {
        let reg = fixtures::s3_registry();
        let d2 = reg.find("D2").unwrap();
        // Pure state: ρ eigenvalues (0, 1); X supported on the zero column.
        let rho = DensityState::bloch(0.0, 0.0, 1.0).unwrap();
        let phi = positive_function(&rho, d2).unwrap();
        let (_, u) = hermitian_eigen(rho.matrix());
        // Build X(g) = Σ_p c_p (u†D(g)u)_{p,0}: support on the q=0 column only.
        let g = fixtures::s3();
        let values: Vec<Complex64> = g
            .elements()
            .map(|e| {
                let rot = u.adjoint() * d2.matrix(e) * &u;
                rot[(0, 0)] * cr(0.7) + rot[(1, 0)] * cr(-0.4)
            })
            .collect();
        let x = GroupFunction::new(g.clone(), values).unwrap();
        let val = seminorm(&x, &phi, d2).unwrap();
        assert!(val.abs() < 1e-12);
    }
}
