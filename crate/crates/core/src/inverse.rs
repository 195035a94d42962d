//! The inverse tomographic problem: decide whether an assigned family of
//! stochastic vectors is the tomogram of a density state for a given
//! irrep, recover the state when it is, and transport tomograms across
//! representations of equal dimension.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_group::{Element, FiniteGroup};
use crate::group_algebra::GroupFunction;
use crate::irrep::{harmonic_expand, Irrep, IrrepRegistry};
use crate::linalg::{c, cr, CMat};
use crate::naimark::{certify_positive, PositivityCertificate};
use crate::tomography::{
    reconstruct_function, spectral_frames, tomogram_with_frames, DensityState, SpectralFrame,
};

/// Residual threshold for the compatibility and hermiticity checks. Looser
/// than construction tolerance because two eigensolves compound.
pub const CHECK_TOL: f64 = 1e-8;

/// A candidate family of stochastic vectors, one per group element.
#[derive(Debug, Clone)]
pub struct StochasticFamily {
    group: Arc<FiniteGroup>,
    irrep_label: String,
    vectors: Vec<Vec<f64>>,
}

impl StochasticFamily {
    pub fn new(
        group: Arc<FiniteGroup>,
        irrep_label: &str,
        vectors: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if vectors.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                got: vectors.len(),
            });
        }
        let n = vectors[0].len();
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            let sum: f64 = v.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "vector at element {} sums to {}, not 1",
                    j + 1,
                    sum
                )));
            }
            if let Some(&w) = v.iter().find(|&&w| w < -1e-9) {
                return Err(Error::InvalidParameter(format!(
                    "vector at element {} has negative component {}",
                    j + 1,
                    w
                )));
            }
        }
        Ok(StochasticFamily {
            group,
            irrep_label: irrep_label.to_string(),
            vectors,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irrep_label(&self) -> &str {
        &self.irrep_label
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }
}

/// ψ(gⱼ) = Σ_m e^{iθ_m(gⱼ)} τ_m(gⱼ), the normalized group function a
/// family induces through the spectral frames of the representation.
pub fn candidate_function(tau: &StochasticFamily, d: &Irrep) -> Result<GroupFunction> {
    let frames = spectral_frames(d)?;
    candidate_function_with_frames(tau, &frames)
}

pub fn candidate_function_with_frames(
    tau: &StochasticFamily,
    frames: &[SpectralFrame],
) -> Result<GroupFunction> {
    let values = frames
        .iter()
        .zip(tau.vectors())
        .map(|(f, v)| {
            v.iter()
                .enumerate()
                .map(|(m, &w)| f.phase_factor(m) * w)
                .sum()
        })
        .collect();
    GroupFunction::new(tau.group().clone(), values)
}

/// Reproducing kernel R_pm(gⱼ, g_h) = e^{−iθ_m(gⱼ)} (V_{g_h}† D(gⱼ) V_{g_h})_pp.
pub fn reproducing_kernel(
    d: &Irrep,
    frames: &[SpectralFrame],
    g_j: Element,
    g_h: Element,
) -> CMat {
    let n = d.dim();
    let v_h = &frames[g_h.0].diagonalizer;
    let rotated = v_h.adjoint() * d.matrix(g_j) * v_h;
    let mut r = CMat::zeros(n, n);
    for p in 0..n {
        for m in 0..n {
            let phase = frames[g_j.0].phase_factor(m).conj();
            r[(p, m)] = phase * rotated[(p, p)];
        }
    }
    r
}

/// Per-element, per-component residual of the kernel fixed-point condition
/// (n/K) Σⱼ Σ_m R_pm(gⱼ, g_h) τ_m(gⱼ) = τ_p(g_h).
#[derive(Debug, Clone)]
pub struct CompatibilityReport {
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
}

impl CompatibilityReport {
    pub fn is_compatible(&self) -> bool {
        self.max_residual < CHECK_TOL
    }
}

/// Check the compatibility of a family with a representation. The kernel
/// sum collapses to the symbols of the constructed operator
/// ρ_τ = (n/K) Σⱼ ψ*(gⱼ) D(gⱼ), so the residual is
/// |(V_h† ρ_τ V_h)_pp − τ_p(g_h)| over all (h, p).
pub fn check_compatibility(tau: &StochasticFamily, d: &Irrep) -> Result<CompatibilityReport> {
    let frames = spectral_frames(d)?;
    check_compatibility_with_frames(tau, d, &frames)
}

pub fn check_compatibility_with_frames(
    tau: &StochasticFamily,
    d: &Irrep,
    frames: &[SpectralFrame],
) -> Result<CompatibilityReport> {
    if tau.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: tau.dim(),
        });
    }
    let psi = candidate_function_with_frames(tau, &frames)?;
    let (rho_tau, _) = reconstruct_function(&psi, d);
    let mut residuals = Vec::with_capacity(frames.len());
    let mut max_residual: f64 = 0.0;
    for (frame, v) in frames.iter().zip(tau.vectors()) {
        let rotated = frame.diagonalizer.adjoint() * &rho_tau * &frame.diagonalizer;
        let row: Vec<f64> = (0..d.dim())
            .map(|p| {
                let r = (rotated[(p, p)] - cr(v[p])).norm();
                max_residual = max_residual.max(r);
                r
            })
            .collect();
        residuals.push(row);
    }
    Ok(CompatibilityReport {
        residuals,
        max_residual,
    })
}

/// Self-adjointness residual of the operator constructed from the family:
/// ‖O − O†‖ with O = (n/K) Σⱼ Σ_m e^{−iθ_m(gⱼ)} τ_m(gⱼ) D(gⱼ).
///
/// O† is the same sum over inverse elements with the inverse phases paired
/// through the shared eigenvectors, which makes the comparison independent
/// of the frame convention.
pub fn check_hermiticity(tau: &StochasticFamily, d: &Irrep) -> Result<f64> {
    let frames = spectral_frames(d)?;
    check_hermiticity_with_frames(tau, d, &frames)
}

pub fn check_hermiticity_with_frames(
    tau: &StochasticFamily,
    d: &Irrep,
    frames: &[SpectralFrame],
) -> Result<f64> {
    let psi = candidate_function_with_frames(tau, &frames)?;
    let (o, _) = reconstruct_function(&psi, d);
    Ok((&o - o.adjoint()).norm())
}

/// Tomographic symbols of an arbitrary operator: the tomogram machinery
/// with the stochasticity requirement dropped.
pub fn observable_symbols(a: &CMat, d: &Irrep) -> Result<Vec<Vec<f64>>> {
    if a.nrows() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: a.nrows(),
        });
    }
    let frames = spectral_frames(d)?;
    Ok(frames
        .iter()
        .map(|f| crate::tomography::symbol_vector(a, f))
        .collect())
}

/// The full outcome of the inverse decision.
#[derive(Debug, Clone)]
pub struct InverseVerdict {
    pub compatible: bool,
    pub compatibility_residual: f64,
    pub hermitian: bool,
    pub hermiticity_residual: f64,
    pub positive: bool,
    pub certificate: PositivityCertificate,
    pub candidate_psi: GroupFunction,
    /// Present exactly when all three checks pass.
    pub recovered_state: Option<DensityState>,
    /// max |tomogram(ρ_τ) − τ| when the state is recovered.
    pub tomogram_residual: Option<f64>,
    /// Harmonic weight of ψ per registry block, when a registry is supplied.
    pub block_weights: Option<Vec<f64>>,
}

impl InverseVerdict {
    pub fn accepted(&self) -> bool {
        self.compatible && self.hermitian && self.positive
    }
}

/// Run compatibility, hermiticity and Naimark positivity on a family; on
/// success reconstruct ρ_τ and verify its tomogram reproduces the family.
/// All residuals are always computed — no short-circuiting — so a failure
/// report shows the full profile.
pub fn decide(
    tau: &StochasticFamily,
    d: &Irrep,
    registry: Option<&IrrepRegistry>,
) -> Result<InverseVerdict> {
    let frames = spectral_frames(d)?;
    let compat = check_compatibility_with_frames(tau, d, &frames)?;
    let herm_residual = check_hermiticity_with_frames(tau, d, &frames)?;
    let psi = candidate_function_with_frames(tau, &frames)?;
    let certificate = certify_positive(&psi);

    let compatible = compat.is_compatible();
    let hermitian = herm_residual < CHECK_TOL;
    let positive = certificate.is_positive();

    let block_weights = match registry {
        Some(reg) => Some(harmonic_expand(&psi, reg)?.block_weights(reg)),
        None => None,
    };

    let (recovered_state, tomogram_residual) = if compatible && hermitian && positive {
        let (rho, _) = reconstruct_function(&psi, d);
        let state = DensityState::new(rho, 1e-7)?;
        let tom = tomogram_with_frames(&state, d, &frames)?;
        let residual = tom
            .vectors
            .iter()
            .zip(tau.vectors())
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        (Some(state), Some(residual))
    } else {
        (None, None)
    };

    Ok(InverseVerdict {
        compatible,
        compatibility_residual: compat.max_residual,
        hermitian,
        hermiticity_residual: herm_residual,
        positive,
        certificate,
        candidate_psi: psi,
        recovered_state,
        tomogram_residual,
        block_weights,
    })
}

/// Transport an accepted family to another representation of the same
/// dimension: τ_β = tomogram(ρ_τ^α, D_β).
pub fn transport(
    tau_alpha: &StochasticFamily,
    d_alpha: &Irrep,
    d_beta: &Irrep,
) -> Result<StochasticFamily> {
    if d_alpha.dim() != d_beta.dim() {
        return Err(Error::DimensionMismatch {
            expected: d_alpha.dim(),
            got: d_beta.dim(),
        });
    }
    let verdict = decide(tau_alpha, d_alpha, None)?;
    if !verdict.accepted() {
        return Err(Error::SourceNotTomogram {
            reason: format!(
                "compatible={}, hermitian={}, positive={}",
                verdict.compatible, verdict.hermitian, verdict.positive
            ),
        });
    }
    let state = verdict.recovered_state.expect("accepted verdict carries a state");
    let tom = crate::tomography::tomogram(&state, d_beta)?;
    StochasticFamily::new(
        tau_alpha.group().clone(),
        d_beta.label(),
        tom.vectors,
    )
}

/// Self-consistency of tomographic symbols under the reproducing kernel:
/// max |(n/K) Σⱼ Σ_m R_pm(gⱼ, g_h) v*_m(gⱼ) − v*_p(g_h)| over (h, p),
/// for the symbols of an arbitrary operator.
pub fn kernel_self_consistency_residual(a: &CMat, d: &Irrep) -> Result<f64> {
    let frames = spectral_frames(d)?;
    let group = d.group();
    let k = group.order() as f64;
    let n = d.dim();
    let symbols: Vec<Vec<Complex64>> = frames
        .iter()
        .map(|f| {
            let rotated = f.diagonalizer.adjoint() * a * &f.diagonalizer;
            (0..n).map(|m| rotated[(m, m)]).collect()
        })
        .collect();
    let mut max_residual: f64 = 0.0;
    for h in group.elements() {
        for p in 0..n {
            let mut acc = c(0.0, 0.0);
            for j in group.elements() {
                let kernel = reproducing_kernel(d, &frames, j, h);
                for m in 0..n {
                    acc += kernel[(p, m)] * symbols[j.0][m].conj();
                }
            }
            acc *= cr(n as f64 / k);
            let target = symbols[h.0][p].conj();
            max_residual = max_residual.max((acc - target).norm());
        }
    }
    Ok(max_residual)
}
