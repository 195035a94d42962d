//! Unitary representations of finite groups and harmonic analysis on the
//! group: validation, characters, Fourier expansion and inversion, the M
//! matrix and the regular-representation decomposition.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_group::{Element, FiniteGroup};
use crate::group_algebra::{inner_product, GroupFunction};
use crate::linalg::{cr, CMat};

/// A family of unitary matrices D(g) indexed by group elements.
///
/// Construction does not force irreducibility; [`validate`](Irrep::validate)
/// reports it, and the operations that need it say so.
#[derive(Debug, Clone)]
pub struct Irrep {
    group: Arc<FiniteGroup>,
    label: String,
    dim: usize,
    matrices: Vec<CMat>,
}

/// Residuals from checking a representation against its defining laws.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub homomorphism_residual: f64,
    pub unitarity_residual: f64,
    pub identity_residual: f64,
    /// Deviation of Σⱼ D*ᵣₛ(gⱼ) D_pq(gⱼ) from (K/n)·δδδ within this irrep.
    pub orthogonality_residual: f64,
    /// ⟨χ, χ⟩; equals K exactly for an irreducible representation.
    pub character_norm: f64,
    pub irreducible: bool,
}

impl ValidationReport {
    pub fn is_valid_representation(&self, tol: f64) -> bool {
        self.homomorphism_residual < tol
            && self.unitarity_residual < tol
            && self.identity_residual < tol
    }
}

impl Irrep {
    pub fn new(
        group: Arc<FiniteGroup>,
        label: &str,
        matrices: Vec<CMat>,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                got: matrices.len(),
            });
        }
        let dim = matrices[0].nrows();
        for m in &matrices {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.nrows(),
                });
            }
        }
        Ok(Irrep {
            group,
            label: label.to_string(),
            dim,
            matrices,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: Element) -> &CMat {
        &self.matrices[g.0]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    /// Direct sum of representations on a common group.
    pub fn direct_sum(parts: &[&Irrep], label: &str) -> Result<Irrep> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidParameter("direct sum of no representations".into()))?;
        let group = first.group().clone();
        let matrices = group
            .elements()
            .map(|g| {
                let blocks: Vec<&CMat> = parts.iter().map(|p| p.matrix(g)).collect();
                crate::linalg::direct_sum(&blocks)
            })
            .collect();
        Irrep::new(group, label, matrices)
    }

    /// Conjugate every matrix by a fixed unitary: D'(g) = U† D(g) U.
    pub fn conjugated_by(&self, u: &CMat, label: &str) -> Result<Irrep> {
        if u.nrows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.nrows(),
            });
        }
        let matrices = self.matrices.iter().map(|d| u.adjoint() * d * u).collect();
        Irrep::new(self.group.clone(), label, matrices)
    }

    /// Check homomorphism, unitarity, identity, Schur orthogonality and
    /// irreducibility (via the character norm).
    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let k = g.order() as f64;
        let n = self.dim;

        let identity_residual = (self.matrix(g.identity()) - CMat::identity(n, n)).norm();

        let mut homomorphism_residual: f64 = 0.0;
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                let residual = (self.matrix(a) * self.matrix(b) - self.matrix(ab)).norm();
                homomorphism_residual = homomorphism_residual.max(residual);
            }
        }

        let unitarity_residual = self
            .matrices
            .iter()
            .map(crate::linalg::unitarity_residual)
            .fold(0.0, f64::max);

        // Schur orthogonality within this representation.
        let mut orthogonality_residual: f64 = 0.0;
        for r in 0..n {
            for s in 0..n {
                for p in 0..n {
                    for q in 0..n {
                        let sum: Complex64 = g
                            .elements()
                            .map(|x| self.matrix(x)[(r, s)].conj() * self.matrix(x)[(p, q)])
                            .sum();
                        let expected = if r == p && s == q { cr(k / n as f64) } else { cr(0.0) };
                        orthogonality_residual = orthogonality_residual.max((sum - expected).norm());
                    }
                }
            }
        }

        let chi = character(self);
        let norm = inner_product(&chi, &chi).unwrap().re;
        let irreducible = (norm - k).abs() < k * 1e-9;

        ValidationReport {
            homomorphism_residual,
            unitarity_residual,
            identity_residual,
            orthogonality_residual,
            character_norm: norm,
            irreducible,
        }
    }
}

/// χ(g) = Tr D(g).
pub fn character(d: &Irrep) -> GroupFunction {
    let values = d
        .group()
        .elements()
        .map(|g| d.matrix(g).diagonal().sum())
        .collect();
    GroupFunction::new(d.group().clone(), values).unwrap()
}

/// A complete set of irreducible representations of one group.
#[derive(Debug, Clone)]
pub struct IrrepRegistry {
    group: Arc<FiniteGroup>,
    irreps: Vec<Irrep>,
}

impl IrrepRegistry {
    pub fn new(group: Arc<FiniteGroup>, irreps: Vec<Irrep>) -> Result<Self> {
        for d in &irreps {
            if **d.group() != *group {
                return Err(Error::GroupMismatch {
                    left: group.name().to_string(),
                    right: d.group().name().to_string(),
                });
            }
        }
        Ok(IrrepRegistry { group, irreps })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn find(&self, label: &str) -> Option<&Irrep> {
        self.irreps.iter().find(|d| d.label() == label)
    }

    pub fn is_complete(&self) -> bool {
        let sum: usize = self.irreps.iter().map(|d| d.dim() * d.dim()).sum();
        sum == self.group.order()
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::IncompleteIrrepSet {
                sum: self.irreps.iter().map(|d| d.dim() * d.dim()).sum(),
                order: self.group.order(),
            })
        }
    }
}

/// Per-irrep blocks of harmonic (Fourier) coefficients, in registry order.
///
/// The convention is the plain expansion f(gⱼ) = Σ_α Σ_{rs} c^α_{rs} D^α_{rs}(gⱼ)
/// with c^α_{rs} = (n_α/K) Σⱼ f(gⱼ) D^α_{rs}(gⱼ)*.
#[derive(Debug, Clone)]
pub struct HarmonicCoefficients {
    pub blocks: Vec<CMat>,
}

impl HarmonicCoefficients {
    /// Squared ℓ²-weight of each block in the reconstruction, useful for
    /// locating where a function lives.
    pub fn block_weights(&self, registry: &IrrepRegistry) -> Vec<f64> {
        let k = registry.group().order() as f64;
        self.blocks
            .iter()
            .zip(registry.irreps())
            .map(|(c, d)| {
                // ‖Σ_{rs} c_rs D_rs‖² = (K/n)·Σ|c_rs|² by orthogonality.
                c.iter().map(|z| z.norm_sqr()).sum::<f64>() * k / d.dim() as f64
            })
            .collect()
    }
}

/// Expand a group function over a complete registry of irreps.
pub fn harmonic_expand(f: &GroupFunction, registry: &IrrepRegistry) -> Result<HarmonicCoefficients> {
    registry.require_complete()?;
    let group = registry.group();
    let k = group.order() as f64;
    let blocks = registry
        .irreps()
        .iter()
        .map(|d| {
            let n = d.dim();
            let mut c = CMat::zeros(n, n);
            for g in group.elements() {
                let w = f.value(g);
                for r in 0..n {
                    for s in 0..n {
                        c[(r, s)] += w * d.matrix(g)[(r, s)].conj();
                    }
                }
            }
            c.scale(n as f64 / k)
        })
        .collect();
    Ok(HarmonicCoefficients { blocks })
}

/// Rebuild the function from its harmonic coefficients.
pub fn harmonic_reconstruct(
    coefficients: &HarmonicCoefficients,
    registry: &IrrepRegistry,
) -> Result<GroupFunction> {
    let group = registry.group();
    let values = group
        .elements()
        .map(|g| {
            coefficients
                .blocks
                .iter()
                .zip(registry.irreps())
                .map(|(c, d)| {
                    let dm = d.matrix(g);
                    c.iter()
                        .zip(dm.iter())
                        .map(|(a, b)| a * b)
                        .sum::<Complex64>()
                })
                .sum()
        })
        .collect();
    GroupFunction::new(group.clone(), values)
}

/// Â_f = Σⱼ f(gⱼ) D(gⱼ).
pub fn lift_operator(f: &GroupFunction, d: &Irrep) -> CMat {
    let mut out = CMat::zeros(d.dim(), d.dim());
    for g in d.group().elements() {
        out += d.matrix(g).map(|e| e * f.value(g));
    }
    out
}

/// Inversion formula f(g) = (n/K) Tr[A D†(g)]: recovers the component of a
/// function living in this irrep's block from its lifted operator.
pub fn invert_operator(a: &CMat, d: &Irrep) -> Result<GroupFunction> {
    if a.nrows() != d.dim() || a.ncols() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: a.nrows(),
        });
    }
    let k = d.group().order() as f64;
    let scale = d.dim() as f64 / k;
    let values = d
        .group()
        .elements()
        .map(|g| (a * d.matrix(g).adjoint()).diagonal().sum() * cr(scale))
        .collect();
    GroupFunction::new(d.group().clone(), values)
}

/// The unitary K×K matrix whose rows are the normalized matrix-element
/// functions √(n_α/K)·D^α_{rs}(·), blocks in registry order and (r,s)
/// row-major inside each block.
pub fn m_matrix(registry: &IrrepRegistry) -> Result<CMat> {
    registry.require_complete()?;
    let group = registry.group();
    let k = group.order();
    let mut m = CMat::zeros(k, k);
    let mut row = 0;
    for d in registry.irreps() {
        let n = d.dim();
        let scale = cr((n as f64 / k as f64).sqrt());
        for r in 0..n {
            for s in 0..n {
                for g in group.elements() {
                    m[(row, g.0)] = scale * d.matrix(g)[(r, s)];
                }
                row += 1;
            }
        }
    }
    Ok(m)
}

/// Character of the left regular representation built from the L table:
/// D^L(g_k)_{mn} = δ_{m, L\[k,n\]}.
pub fn regular_character(group: &Arc<FiniteGroup>) -> GroupFunction {
    let values = group
        .elements()
        .map(|g| {
            let fixed = group
                .elements()
                .filter(|&n| group.left_quotient(g, n) == n)
                .count();
            cr(fixed as f64)
        })
        .collect();
    GroupFunction::new(group.clone(), values).unwrap()
}

/// Multiplicity of each irrep in the regular representation,
/// m_α = ⟨χ^L, χ^α⟩ / K.
pub fn decompose_regular(registry: &IrrepRegistry) -> Result<Vec<usize>> {
    registry.require_complete()?;
    let k = registry.group().order() as f64;
    let chi_l = regular_character(registry.group());
    registry
        .irreps()
        .iter()
        .map(|d| {
            let chi = character(d);
            let m = inner_product(&chi_l, &chi).unwrap() / cr(k);
            let rounded = m.re.round();
            if (m.re - rounded).abs() > 1e-9 || m.im.abs() > 1e-9 || rounded < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "non-integer multiplicity {m} for irrep {}",
                    d.label()
                )));
            }
            Ok(rounded as usize)
        })
        .collect()
}
