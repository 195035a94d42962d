//! The group algebra ℂ\[G\]: complex functions on a finite group with the
//! convolution product, involutions, trace inner product and the
//! matrix-unit demo algebra.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_group::{Element, FiniteGroup};
use crate::irrep::IrrepRegistry;
use crate::linalg::{condition_number, cr, CMat, CVec, ZERO};

/// A complex-valued function on a finite group, i.e. the coefficient vector
/// of a group-algebra element.
#[derive(Debug, Clone)]
pub struct GroupFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Complex64>,
}

/// The three involutions on the group algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// f*(g) = [f(g)]*
    Conjugate,
    /// fᵀ(g) = f(g⁻¹)
    Transpose,
    /// f★(g) = f*(g⁻¹)
    Star,
}

impl GroupFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                got: values.len(),
            });
        }
        if let Some(idx) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFiniteValue { index: idx });
        }
        Ok(GroupFunction { group, values })
    }

    /// δ_g: 1 at `g`, 0 elsewhere.
    pub fn delta(group: Arc<FiniteGroup>, g: Element) -> Self {
        let mut values = vec![ZERO; group.order()];
        values[g.0] = cr(1.0);
        GroupFunction { group, values }
    }

    pub fn constant(group: Arc<FiniteGroup>, value: Complex64) -> Self {
        let values = vec![value; group.order()];
        GroupFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, g: Element) -> Complex64 {
        self.values[g.0]
    }

    fn check_same_group(&self, other: &GroupFunction) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.name().to_string(),
                right: other.group.name().to_string(),
            })
        }
    }
}

/// Convolution (f·h)(gₖ) = Σⱼ f(gⱼ) h(gⱼ⁻¹gₖ), by direct O(K²) summation.
pub fn convolve(f: &GroupFunction, h: &GroupFunction) -> Result<GroupFunction> {
    f.check_same_group(h)?;
    let g = f.group();
    let mut out = vec![ZERO; g.order()];
    for k in g.elements() {
        let mut acc = ZERO;
        for j in g.elements() {
            acc += f.value(j) * h.value(g.left_quotient(j, k));
        }
        out[k.0] = acc;
    }
    GroupFunction::new(f.group.clone(), out)
}

/// Apply one of the three involutions.
pub fn involution(f: &GroupFunction, kind: Involution) -> GroupFunction {
    let g = f.group();
    let values = g
        .elements()
        .map(|x| match kind {
            Involution::Conjugate => f.value(x).conj(),
            Involution::Transpose => f.value(g.inv(x)),
            Involution::Star => f.value(g.inv(x)).conj(),
        })
        .collect();
    GroupFunction {
        group: f.group.clone(),
        values,
    }
}

/// Tr\[A_f\] = f(e).
pub fn trace(f: &GroupFunction) -> Complex64 {
    f.value(f.group().identity())
}

/// ⟨A_f, A_h⟩ = Σⱼ f*(gⱼ) h(gⱼ).
pub fn inner_product(f: &GroupFunction, h: &GroupFunction) -> Result<Complex64> {
    f.check_same_group(h)?;
    Ok(f
        .values
        .iter()
        .zip(&h.values)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Pointwise (Hadamard) product.
pub fn hadamard(f: &GroupFunction, h: &GroupFunction) -> Result<GroupFunction> {
    f.check_same_group(h)?;
    let values = f.values.iter().zip(&h.values).map(|(a, b)| a * b).collect();
    GroupFunction::new(f.group.clone(), values)
}

/// Solution of the unitary-element linear system, with the condition number
/// of the assembled system for diagnostics.
#[derive(Debug, Clone)]
pub struct UnitarySolution {
    pub f: GroupFunction,
    pub condition_number: f64,
}

/// Solve Σⱼ f(gⱼ) D^α(gⱼ) = u^α for every irrep α of a complete registry.
///
/// The system is K×K dense with rows made of irrep matrix elements; it is
/// nonsingular for a valid registry, but the condition number is still
/// reported and the solve refused above 1e12.
pub fn solve_unitary_element(targets: &[CMat], registry: &IrrepRegistry) -> Result<UnitarySolution> {
    registry.require_complete()?;
    let group = registry.group().clone();
    let k = group.order();
    if targets.len() != registry.irreps().len() {
        return Err(Error::DimensionMismatch {
            expected: registry.irreps().len(),
            got: targets.len(),
        });
    }
    for (idx, (u, d)) in targets.iter().zip(registry.irreps()).enumerate() {
        if u.nrows() != d.dim() || u.ncols() != d.dim() {
            return Err(Error::DimensionMismatch {
                expected: d.dim(),
                got: u.nrows(),
            });
        }
        let residual = crate::linalg::unitarity_residual(u);
        if residual > 1e-9 {
            return Err(Error::NonUnitaryTarget { index: idx, residual });
        }
    }

    let mut a = CMat::zeros(k, k);
    let mut rhs = CVec::zeros(k);
    let mut row = 0;
    for (u, d) in targets.iter().zip(registry.irreps()) {
        let n = d.dim();
        for r in 0..n {
            for s in 0..n {
                for j in group.elements() {
                    a[(row, j.0)] = d.matrix(j)[(r, s)];
                }
                rhs[row] = u[(r, s)];
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, k);

    let cond = condition_number(&a);
    if !cond.is_finite() || cond > 1e12 {
        return Err(Error::IllConditioned { cond });
    }
    let lu = a.lu();
    let x = lu.solve(&rhs).ok_or(Error::IllConditioned { cond: f64::INFINITY })?;
    let f = GroupFunction::new(group, x.iter().copied().collect())?;
    Ok(UnitarySolution {
        f,
        condition_number: cond,
    })
}

/// Structure constants of the matrix-unit algebra on n² basis elements
/// A_{(r,s)} = |a_r⟩⟨a_s|, indexed row-major.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    /// product[j][k] = Some(l) when A_j · A_k = A_l, None when the product is 0.
    product: Vec<Vec<Option<usize>>>,
}

/// Build the structure constants γ_{jk}^l of the matrix-unit algebra.
pub fn matrix_unit_algebra(n: usize) -> StructureConstants {
    assert!(n >= 1);
    let dim = n * n;
    let row = |idx: usize| idx / n;
    let col = |idx: usize| idx % n;
    let mut product = vec![vec![None; dim]; dim];
    for j in 0..dim {
        for k in 0..dim {
            if col(j) == row(k) {
                product[j][k] = Some(row(j) * n + col(k));
            }
        }
    }
    StructureConstants { n, product }
}

impl StructureConstants {
    pub fn dimension(&self) -> usize {
        self.n * self.n
    }

    /// γ_{jk}^l with 0-based indices; exactly 0 or 1 for matrix units.
    pub fn gamma(&self, j: usize, k: usize, l: usize) -> f64 {
        match self.product[j][k] {
            Some(p) if p == l => 1.0,
            _ => 0.0,
        }
    }

    /// Index of the product A_j · A_k, when nonzero.
    pub fn product(&self, j: usize, k: usize) -> Option<usize> {
        self.product[j][k]
    }

    /// The associativity relations γ_{jk}^m γ_{ml}^r = γ_{kl}^m γ_{jm}^r,
    /// checked exactly.
    pub fn verify_associativity(&self) -> bool {
        let dim = self.dimension();
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    for r in 0..dim {
                        let lhs: f64 = (0..dim)
                            .map(|m| self.gamma(j, k, m) * self.gamma(m, l, r))
                            .sum();
                        let rhs: f64 = (0..dim)
                            .map(|m| self.gamma(k, l, m) * self.gamma(j, m, r))
                            .sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The regular realization A_j ⇒ (γ_j)_k^l as an n²×n² matrix.
    pub fn realization(&self, j: usize) -> CMat {
        let dim = self.dimension();
        let mut m = CMat::zeros(dim, dim);
        for k in 0..dim {
            if let Some(l) = self.product[j][k] {
                m[(l, k)] = cr(1.0);
            }
        }
        m
    }

    /// Hilbert-Schmidt norm of a coefficient vector, ‖A‖² = Σ|c|².
    pub fn hs_norm(&self, coefficients: &[Complex64]) -> f64 {
        coefficients.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hilbert-Schmidt norm rescaled so the unit element E = Σ A_{(r,r)}
    /// has norm one.
    pub fn hs_norm_rescaled(&self, coefficients: &[Complex64]) -> f64 {
        self.hs_norm(coefficients) / (self.n as f64).sqrt()
    }
}
