//! Positivity of compact-group functions checked on an embedded finite
//! subgroup: when a function is compatible with an irreducible host
//! representation that restricts irreducibly to the subgroup, one K×K
//! Naimark matrix on the subgroup settles positivity on the whole group.
//!
//! The same argument would let SU(2), which embeds irreducibly in the
//! defining representation of any U(n), certify U(n) functions; only the
//! finite-subgroup route is implemented here, through an explicit
//! [`SubgroupEmbedding`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_group::SubgroupEmbedding;
use crate::group_algebra::GroupFunction;
use crate::naimark::{certify_positive, PositivityCertificate};

/// Relative residual allowed when verifying that the sampled function lies
/// in the span of the embedded representation's matrix elements.
pub const COMPATIBILITY_TOL: f64 = 1e-8;

/// Evaluate a group function on the embedded subgroup elements, verify its
/// harmonic content sits in the embedded block, and certify positivity of
/// the subgroup Naimark matrix. The certificate transfers to the ambient
/// group when the embedding is irreducible.
pub fn finite_subgroup_positivity<F>(
    psi: F,
    embedding: &SubgroupEmbedding,
) -> Result<PositivityCertificate>
where
    F: Fn(&crate::linalg::CMat) -> Complex64,
{
    let group = embedding.subgroup().clone();
    let k = group.order();
    let n = embedding.dim();

    // The embedded images must form an irreducible representation for the
    // transfer argument to hold.
    let rep = crate::irrep::Irrep::new(
        group.clone(),
        "embedded",
        (0..k)
            .map(|j| embedding.image(group.element(j + 1).unwrap()).clone())
            .collect(),
    )?;
    let report = rep.validate();
    if !report.is_valid_representation(1e-8) || !report.irreducible {
        return Err(Error::InvalidParameter(format!(
            "embedding is not an irreducible unitary representation (character norm {}, order {})",
            report.character_norm, k
        )));
    }

    let samples: Vec<Complex64> = group.elements().map(|g| psi(embedding.image(g))).collect();
    let sampled = GroupFunction::new(group.clone(), samples.clone())?;

    // Projection onto the span of the embedded matrix elements.
    let kf = k as f64;
    let mut coefficients = crate::linalg::CMat::zeros(n, n);
    for g in group.elements() {
        let image = embedding.image(g);
        for r in 0..n {
            for s in 0..n {
                coefficients[(r, s)] += sampled.value(g) * image[(r, s)].conj();
            }
        }
    }
    coefficients = coefficients.scale(n as f64 / kf);
    let mut projection_norm_sq = 0.0;
    let mut residual_sq = 0.0;
    for g in group.elements() {
        let image = embedding.image(g);
        let mut proj = Complex64::new(0.0, 0.0);
        for r in 0..n {
            for s in 0..n {
                proj += coefficients[(r, s)] * image[(r, s)];
            }
        }
        projection_norm_sq += proj.norm_sqr();
        residual_sq += (sampled.value(g) - proj).norm_sqr();
    }
    let scale = projection_norm_sq.max(1.0);
    let relative = (residual_sq / scale).sqrt();
    if relative > COMPATIBILITY_TOL {
        return Err(Error::CompatibilityUnverified { residual: relative });
    }

    Ok(certify_positive(&sampled))
}
