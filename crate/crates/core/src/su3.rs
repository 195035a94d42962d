//! SU(3) defining-representation tomography with Gelfand-Zetlin labels.
//!
//! The Cartan pair is H₁ = λ₃/2 and H₂ = λ₈/2 in the standard Gell-Mann
//! normalization Tr[T_a T_b] = δ_ab/2; the weights (m₁, m₂) below are their
//! eigenvalues on the defining basis, and m₃ is the isospin of the embedded
//! SU(2) doublet. The Lie-algebra structure constants enter only the
//! singular-element discussion and are not needed computationally.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, cr, unitary_exp_i, CMat, CVec};
use crate::tomography::DensityState;

/// Gelfand-Zetlin label of one defining-representation basis vector:
/// Cartan weights (m₁, m₂) and the isospin label m₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GZLabel {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

/// The eight Gell-Mann matrices λ₁…λ₈.
pub fn gell_mann() -> [CMat; 8] {
    let z = Complex64::new(0.0, 0.0);
    let o = cr(1.0);
    let i = c(0.0, 1.0);
    let s3 = 1.0 / 3f64.sqrt();
    [
        CMat::from_row_slice(3, 3, &[z, o, z, o, z, z, z, z, z]),
        CMat::from_row_slice(3, 3, &[z, -i, z, i, z, z, z, z, z]),
        CMat::from_row_slice(3, 3, &[o, z, z, z, -o, z, z, z, z]),
        CMat::from_row_slice(3, 3, &[z, z, o, z, z, z, o, z, z]),
        CMat::from_row_slice(3, 3, &[z, z, -i, z, z, z, i, z, z]),
        CMat::from_row_slice(3, 3, &[z, z, z, z, z, o, z, o, z]),
        CMat::from_row_slice(3, 3, &[z, z, z, z, z, -i, z, i, z]),
        CMat::from_row_slice(3, 3, &[cr(s3), z, z, z, cr(s3), z, z, z, cr(-2.0 * s3)]),
    ]
}

/// Cartan generator H₁ = λ₃/2.
pub fn h1() -> CMat {
    gell_mann()[2].scale(0.5)
}

/// Cartan generator H₂ = λ₈/2.
pub fn h2() -> CMat {
    gell_mann()[7].scale(0.5)
}

/// Gelfand-Zetlin labels of the defining basis (e₁, e₂, e₃): the (m₁, m₂)
/// pairs are distinct, and (e₁, e₂) form the isospin-1/2 doublet.
pub fn gz_labels() -> [GZLabel; 3] {
    let s3 = 3f64.sqrt();
    [
        GZLabel { m1: 0.5, m2: 1.0 / (2.0 * s3), m3: 0.5 },
        GZLabel { m1: -0.5, m2: 1.0 / (2.0 * s3), m3: 0.5 },
        GZLabel { m1: 0.0, m2: -1.0 / s3, m3: 0.0 },
    ]
}

/// The defining representation element exp(i Σ_a p_a λ_a/2) for eight real
/// parameters.
pub fn su3_defining(params: &[f64]) -> Result<CMat> {
    if params.len() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: params.len(),
        });
    }
    let generators = gell_mann();
    let mut h = CMat::zeros(3, 3);
    for (p, g) in params.iter().zip(&generators) {
        h += g.map(|e| e * cr(*p / 2.0));
    }
    Ok(unitary_exp_i(&h))
}

/// The maximal-torus element exp(i(ξ¹H₁ + ξ²H₂)), diagonal in the GZ basis
/// with phases ξ¹m₁ + ξ²m₂.
pub fn torus_element(xi1: f64, xi2: f64) -> CMat {
    let labels = gz_labels();
    CMat::from_diagonal(&CVec::from_iterator(
        3,
        labels.iter().map(|l| {
            let t = xi1 * l.m1 + xi2 * l.m2;
            c(t.cos(), t.sin())
        }),
    ))
}

/// Tomogram of a 3×3 state in the defining representation:
/// W_ρ(m₁,m₂,m₃; g) = Tr[ρ · D(g)|m⟩⟨m|D†(g)] over the GZ basis.
pub fn su3_tomogram(rho: &DensityState, d: &CMat) -> Result<Vec<(GZLabel, f64)>> {
    if rho.dim() != 3 || d.nrows() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: rho.dim().max(d.nrows()),
        });
    }
    let rotated = d.adjoint() * rho.matrix() * d;
    Ok(gz_labels()
        .iter()
        .enumerate()
        .map(|(m, &label)| (label, rotated[(m, m)].re))
        .collect())
}

/// Tr[ρ D(g̃)] for the torus-conjugated g̃ = D(g) e^{i(ξ¹H₁+ξ²H₂)} D†(g):
/// the left side of the trace identity the tomogram must satisfy.
pub fn trace_at_torus_conjugate(rho: &DensityState, d: &CMat, xi1: f64, xi2: f64) -> Complex64 {
    let g_tilde = d * torus_element(xi1, xi2) * d.adjoint();
    (rho.matrix() * g_tilde).diagonal().sum()
}

/// Σ_m e^{i(ξ¹m₁+ξ²m₂)} W_m: the phase-weighted tomogram sum that must
/// reproduce [`trace_at_torus_conjugate`].
pub fn phase_weighted_tomogram_sum(
    tomogram: &[(GZLabel, f64)],
    xi1: f64,
    xi2: f64,
) -> Complex64 {
    tomogram
        .iter()
        .map(|(l, w)| {
            let t = xi1 * l.m1 + xi2 * l.m2;
            c(t.cos(), t.sin()) * *w
        })
        .sum()
}

/// Residual of the basis-change identity: the tomogram of ρ with the PVM
/// built on the basis {|m⟩} equals the tomogram of U†ρU with the PVM built
/// on the transformed basis {U†|m⟩} and the transformed representation.
pub fn basis_change_residual(rho: &DensityState, d: &CMat, u: &CMat) -> Result<f64> {
    if u.nrows() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: u.nrows(),
        });
    }
    let original = su3_tomogram(rho, d)?;
    let rho_t = DensityState::new(u.adjoint() * rho.matrix() * u, 1e-8)?;
    let d_t = u.adjoint() * d * u;
    // Transformed-basis projectors: |m'⟩ = U†|m⟩, so the tomogram is the
    // diagonal of (U†DU)† · U†ρU · (U†DU) read on the vectors U†e_m.
    let rotated = d_t.adjoint() * rho_t.matrix() * &d_t;
    let transformed = u * rotated * u.adjoint();
    let mut worst: f64 = 0.0;
    for (m, (_, w)) in original.iter().enumerate() {
        worst = worst.max((transformed[(m, m)].re - w).abs());
        worst = worst.max(transformed[(m, m)].im.abs());
    }
    Ok(worst)
}
