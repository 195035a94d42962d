//! Tomograms of density states from unitary representations, and state
//! reconstruction from positive-type functions.
//!
//! Every represented unitary D(g) is diagonalized as V_g d_g V_g† with a
//! deterministic frame convention: eigenphases ascending in [0, 2π), each
//! eigenvector's first significant entry real positive, and V = I on scalar
//! matrices (so the identity element keeps the identity frame). Any valid
//! frame yields the same associated function, so the convention is purely
//! for reproducibility.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_group::Element;
use crate::group_algebra::GroupFunction;
use crate::irrep::{Irrep, IrrepRegistry};
use crate::linalg::{c, cr, hermitian_eigen, hermiticity_residual, unitary_eigen, CMat};

/// Default absolute tolerance for state validation.
pub const STATE_TOL: f64 = 1e-9;

/// A Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone)]
pub struct DensityState {
    matrix: CMat,
}

impl DensityState {
    pub fn new(matrix: CMat, tol: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidState {
                reason: "matrix is not square".into(),
            });
        }
        // Checked up front: NaN would sail through every tolerance below.
        if !crate::linalg::all_finite(&matrix) {
            return Err(Error::InvalidState {
                reason: "matrix has non-finite entries".into(),
            });
        }
        let herm = hermiticity_residual(&matrix);
        if herm > tol {
            return Err(Error::InvalidState {
                reason: format!("not Hermitian (residual {herm:.3e})"),
            });
        }
        let trace = matrix.diagonal().sum();
        if (trace - cr(1.0)).norm() > tol {
            return Err(Error::InvalidState {
                reason: format!("trace {} != 1", trace),
            });
        }
        let min_eig = hermitian_eigen(&matrix).0[0];
        if min_eig < -tol {
            return Err(Error::InvalidState {
                reason: format!("not positive semidefinite (min eigenvalue {min_eig:.3e})"),
            });
        }
        Ok(DensityState { matrix })
    }

    /// Qubit state at the Bloch point (x, y, z), x²+y²+z² ≤ 1.
    pub fn bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                cr((1.0 + z) / 2.0),
                c(x / 2.0, -y / 2.0),
                c(x / 2.0, y / 2.0),
                cr((1.0 - z) / 2.0),
            ],
        );
        DensityState::new(m, STATE_TOL)
    }

    /// Maximally mixed state I/n.
    pub fn maximally_mixed(n: usize) -> Self {
        DensityState {
            matrix: CMat::identity(n, n).scale(1.0 / n as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }
}

/// Eigenstructure of one represented unitary D(g) = V d V†.
#[derive(Debug, Clone)]
pub struct SpectralFrame {
    pub element: Element,
    /// Eigenphases in [0, 2π), ascending.
    pub phases: Vec<f64>,
    pub diagonalizer: CMat,
}

impl SpectralFrame {
    pub fn phase_factor(&self, m: usize) -> Complex64 {
        c(self.phases[m].cos(), self.phases[m].sin())
    }
}

/// Diagonalize D(g) under the deterministic frame convention.
pub fn spectral_frame(d: &Irrep, g: Element) -> Result<SpectralFrame> {
    let (phases, diagonalizer) = unitary_eigen(d.matrix(g))?;
    Ok(SpectralFrame {
        element: g,
        phases,
        diagonalizer,
    })
}

/// All K frames of a representation, indexed by element.
pub fn spectral_frames(d: &Irrep) -> Result<Vec<SpectralFrame>> {
    d.group().elements().map(|g| spectral_frame(d, g)).collect()
}

/// The tomogram of a state: one stochastic vector per group element.
#[derive(Debug, Clone)]
pub struct Tomogram {
    pub group_name: String,
    pub irrep_label: String,
    pub vectors: Vec<Vec<f64>>,
}

impl Tomogram {
    /// Largest violation of stochasticity over all elements.
    pub fn stochasticity_residual(&self) -> f64 {
        self.vectors
            .iter()
            .map(|v| {
                let sum_dev = (v.iter().sum::<f64>() - 1.0).abs();
                let neg = v.iter().fold(0.0f64, |acc, &w| acc.max(-w));
                sum_dev.max(neg)
            })
            .fold(0.0, f64::max)
    }
}

/// W_m(g, ρ) = (V_g† ρ V_g)_mm for every group element.
pub fn tomogram(rho: &DensityState, d: &Irrep) -> Result<Tomogram> {
    let frames = spectral_frames(d)?;
    tomogram_with_frames(rho, d, &frames)
}

pub fn tomogram_with_frames(
    rho: &DensityState,
    d: &Irrep,
    frames: &[SpectralFrame],
) -> Result<Tomogram> {
    if rho.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: rho.dim(),
        });
    }
    let vectors = frames
        .iter()
        .map(|f| symbol_vector(rho.matrix(), f))
        .collect();
    Ok(Tomogram {
        group_name: d.group().name().to_string(),
        irrep_label: d.label().to_string(),
        vectors,
    })
}

/// Diagonal of V† A V — the tomographic symbol of an operator in one frame.
/// Real parts are returned; for Hermitian A the imaginary parts vanish.
pub fn symbol_vector(a: &CMat, frame: &SpectralFrame) -> Vec<f64> {
    let rotated = frame.diagonalizer.adjoint() * a * &frame.diagonalizer;
    rotated.diagonal().iter().map(|z| z.re).collect()
}

/// A group function intended to be of positive type, with φ(e) = 1.
#[derive(Debug, Clone)]
pub struct PositiveTypeFunction {
    function: GroupFunction,
}

impl PositiveTypeFunction {
    /// Wrap a function after checking normalization φ(e) = 1 and the
    /// Hermitian symmetry φ(g⁻¹) = φ(g)*. Positivity itself is certified
    /// separately by a Naimark check.
    pub fn new(function: GroupFunction, tol: f64) -> Result<Self> {
        let group = function.group().clone();
        let at_e = function.value(group.identity());
        if (at_e - cr(1.0)).norm() > tol {
            return Err(Error::InvalidParameter(format!(
                "positive-type function must have value 1 at the identity, got {at_e}"
            )));
        }
        for g in group.elements() {
            let lhs = function.value(group.inv(g));
            let rhs = function.value(g).conj();
            if (lhs - rhs).norm() > tol {
                return Err(Error::InvalidParameter(format!(
                    "Hermitian symmetry fails at element {}: {} vs {}",
                    g.index(),
                    lhs,
                    rhs
                )));
            }
        }
        Ok(PositiveTypeFunction { function })
    }

    pub fn function(&self) -> &GroupFunction {
        &self.function
    }
}

/// φ_ρ(g) = Tr[ρ D(g)], evaluated by the direct trace.
pub fn positive_function(rho: &DensityState, d: &Irrep) -> Result<PositiveTypeFunction> {
    if rho.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: rho.dim(),
        });
    }
    let values = d
        .group()
        .elements()
        .map(|g| (rho.matrix() * d.matrix(g)).diagonal().sum())
        .collect();
    let f = GroupFunction::new(d.group().clone(), values)?;
    PositiveTypeFunction::new(f, 1e-9)
}

/// Reassembly of φ from phases and tomogram components,
/// φ(g) = Σ_m e^{iθ_m(g)} W_m(g). Equals the direct trace.
pub fn phase_weighted_sum(tom: &Tomogram, frames: &[SpectralFrame]) -> Vec<Complex64> {
    tom.vectors
        .iter()
        .zip(frames)
        .map(|(w, f)| {
            w.iter()
                .enumerate()
                .map(|(m, &wm)| f.phase_factor(m) * wm)
                .sum()
        })
        .collect()
}

/// Residuals attached to a reconstructed matrix.
#[derive(Debug, Clone)]
pub struct ReconstructionDiagnostics {
    pub hermiticity_residual: f64,
    pub trace_residual: f64,
    pub min_eigenvalue: f64,
}

/// Reconstruction formula ρ = (n/K) Σⱼ φ(gⱼ)* D(gⱼ).
///
/// Returns the matrix regardless of whether it is a state; the diagnostics
/// let callers decide. Assumes the harmonic content of φ lies in this
/// irrep's block.
pub fn reconstruct(phi: &PositiveTypeFunction, d: &Irrep) -> (CMat, ReconstructionDiagnostics) {
    reconstruct_function(phi.function(), d)
}

/// Same as [`reconstruct`] for a raw group function.
pub fn reconstruct_function(f: &GroupFunction, d: &Irrep) -> (CMat, ReconstructionDiagnostics) {
    let k = d.group().order() as f64;
    let n = d.dim();
    let mut rho = CMat::zeros(n, n);
    for g in d.group().elements() {
        rho += d.matrix(g).map(|e| e * f.value(g).conj());
    }
    rho = rho.scale(n as f64 / k);
    let diagnostics = ReconstructionDiagnostics {
        hermiticity_residual: hermiticity_residual(&rho),
        trace_residual: (rho.diagonal().sum() - cr(1.0)).norm(),
        min_eigenvalue: hermitian_eigen(&rho).0[0],
    };
    (rho, diagnostics)
}

/// One term of the convex decomposition of a positive-type function.
#[derive(Debug, Clone)]
pub struct ConvexComponent {
    pub irrep_label: String,
    pub weight: f64,
    pub function: PositiveTypeFunction,
    pub state: DensityState,
}

/// Decompose a positive-type function as φ = Σ_α γ^α φ^α with
/// φ^α = Tr[ρ^α D^α]; zero-weight blocks are omitted.
///
/// Positivity is certified internally through the full Naimark matrix.
pub fn convex_decompose(
    phi: &PositiveTypeFunction,
    registry: &IrrepRegistry,
) -> Result<Vec<ConvexComponent>> {
    registry.require_complete()?;
    let certificate = crate::naimark::certify_positive(phi.function());
    if !certificate.is_positive() {
        return Err(Error::NotPositive {
            min_eigenvalue: certificate.min_eigenvalue,
        });
    }

    let mut out = Vec::new();
    for d in registry.irreps() {
        let (block, _) = reconstruct_function(phi.function(), d);
        let weight = block.diagonal().sum().re;
        if weight <= 1e-12 {
            continue;
        }
        let state = DensityState::new(block.scale(1.0 / weight), 1e-8)?;
        let comp = positive_function(&state, d)?;
        out.push(ConvexComponent {
            irrep_label: d.label().to_string(),
            weight,
            function: comp,
            state,
        });
    }
    Ok(out)
}
