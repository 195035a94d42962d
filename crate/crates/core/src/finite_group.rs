//! Finite groups given by explicit multiplication tables.
//!
//! Tables are 1-based in serialized form, with element 1 always the identity.
//! Internally everything is 0-based; [`Element`] hides the offset.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::CMat;

/// Index of a group element. Construct through [`FiniteGroup::element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) usize);

impl Element {
    /// 1-based index, matching the serialized table convention.
    pub fn index(&self) -> usize {
        self.0 + 1
    }
}

/// A finite group validated from its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,  // row-major K×K, 0-based entries
    inv: Vec<usize>,  // 0-based
    left: Vec<usize>, // left[i*K + k] = index of g_i^{-1} g_k
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl FiniteGroup {
    /// Validate a 1-based multiplication table and derive inverse and
    /// left-quotient tables. Rejects anything violating the group axioms,
    /// naming the first broken axiom and witness indices.
    pub fn build(mul_table: &[Vec<usize>], name: &str) -> Result<Arc<FiniteGroup>> {
        let k = mul_table.len();
        if k == 0 {
            return Err(Error::NotAGroup {
                reason: "empty table".into(),
            });
        }
        for (i, row) in mul_table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::NotAGroup {
                    reason: format!("row {} has length {} != {}", i + 1, row.len(), k),
                });
            }
            for (j, &e) in row.iter().enumerate() {
                if e < 1 || e > k {
                    return Err(Error::NotAGroup {
                        reason: format!("entry R[{},{}]={} out of range 1..={}", i + 1, j + 1, e, k),
                    });
                }
            }
        }
        let mul: Vec<usize> = mul_table
            .iter()
            .flat_map(|row| row.iter().map(|&e| e - 1))
            .collect();
        let at = |i: usize, j: usize| mul[i * k + j];

        // Element 1 must act as the identity on both sides.
        for i in 0..k {
            if at(0, i) != i {
                return Err(Error::NotAGroup {
                    reason: format!("identity law fails: R[1,{}] = {} != {}", i + 1, at(0, i) + 1, i + 1),
                });
            }
            if at(i, 0) != i {
                return Err(Error::NotAGroup {
                    reason: format!("identity law fails: R[{},1] = {} != {}", i + 1, at(i, 0) + 1, i + 1),
                });
            }
        }

        // Latin square: every row and column is a permutation.
        for i in 0..k {
            let mut seen_row = vec![false; k];
            let mut seen_col = vec![false; k];
            for j in 0..k {
                let r = at(i, j);
                if seen_row[r] {
                    return Err(Error::NotAGroup {
                        reason: format!("Latin-square violation: duplicate {} in row {}", r + 1, i + 1),
                    });
                }
                seen_row[r] = true;
                let c = at(j, i);
                if seen_col[c] {
                    return Err(Error::NotAGroup {
                        reason: format!("Latin-square violation: duplicate {} in column {}", c + 1, i + 1),
                    });
                }
                seen_col[c] = true;
            }
        }

        // Associativity.
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if at(at(i, j), l) != at(i, at(j, l)) {
                        return Err(Error::NotAGroup {
                            reason: format!(
                                "associativity fails at (i,j,k) = ({},{},{})",
                                i + 1,
                                j + 1,
                                l + 1
                            ),
                        });
                    }
                }
            }
        }

        // Inverses: unique j with R[i,j] = 1; must be involutive.
        let mut inv = vec![0usize; k];
        for i in 0..k {
            let j = (0..k).find(|&j| at(i, j) == 0).ok_or_else(|| Error::NotAGroup {
                reason: format!("element {} has no right inverse", i + 1),
            })?;
            if at(j, i) != 0 {
                return Err(Error::NotAGroup {
                    reason: format!("inverse of {} is one-sided", i + 1),
                });
            }
            inv[i] = j;
        }
        for i in 0..k {
            if inv[inv[i]] != i {
                return Err(Error::NotAGroup {
                    reason: format!("inverse table is not involutive at {}", i + 1),
                });
            }
        }

        let mut left = vec![0usize; k * k];
        for i in 0..k {
            for j in 0..k {
                left[i * k + j] = at(inv[i], j);
            }
        }

        Ok(Arc::new(FiniteGroup {
            name: name.to_string(),
            order: k,
            mul,
            inv,
            left,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    /// Element from its 1-based index.
    pub fn element(&self, index_1based: usize) -> Result<Element> {
        if index_1based >= 1 && index_1based <= self.order {
            Ok(Element(index_1based - 1))
        } else {
            Err(Error::IndexOutOfRange {
                index: index_1based,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.mul[a.0 * self.order + b.0])
    }

    pub fn inv(&self, a: Element) -> Element {
        Element(self.inv[a.0])
    }

    /// g⁻¹h via the precomputed left table.
    pub fn left_quotient(&self, g: Element, h: Element) -> Element {
        Element(self.left[g.0 * self.order + h.0])
    }

    /// The 1-based multiplication table, for serialization.
    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul[i * self.order + j] + 1).collect())
            .collect()
    }

    /// 1-based inverse table.
    pub fn inv_table(&self) -> Vec<usize> {
        self.inv.iter().map(|&i| i + 1).collect()
    }

    /// Conjugacy classes by brute-force orbit scan, O(K²).
    pub fn conjugacy_classes(&self) -> Vec<Vec<Element>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if assigned[g.0] {
                continue;
            }
            let mut class = Vec::new();
            for h in self.elements() {
                let conj = self.mul(self.mul(h, g), self.inv(h));
                if !assigned[conj.0] {
                    assigned[conj.0] = true;
                    class.push(conj);
                }
            }
            class.sort();
            classes.push(class);
        }
        classes
    }
}

/// A finite subgroup embedded into a matrix group through unitary images.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    subgroup: Arc<FiniteGroup>,
    host_label: String,
    images: Vec<CMat>,
}

impl SubgroupEmbedding {
    /// Validate that the images respect the subgroup product within `tol`.
    pub fn new(
        subgroup: Arc<FiniteGroup>,
        host_label: &str,
        images: Vec<CMat>,
        tol: f64,
    ) -> Result<Self> {
        if images.len() != subgroup.order() {
            return Err(Error::DimensionMismatch {
                expected: subgroup.order(),
                got: images.len(),
            });
        }
        for g in subgroup.elements() {
            for h in subgroup.elements() {
                let gh = subgroup.mul(g, h);
                let residual = (&images[g.0] * &images[h.0] - &images[gh.0]).norm();
                if residual > tol {
                    return Err(Error::InvalidParameter(format!(
                        "embedding violates the product at ({}, {}): residual {:.3e}",
                        g.index(),
                        h.index(),
                        residual
                    )));
                }
            }
        }
        Ok(SubgroupEmbedding {
            subgroup,
            host_label: host_label.to_string(),
            images,
        })
    }

    pub fn subgroup(&self) -> &Arc<FiniteGroup> {
        &self.subgroup
    }

    pub fn host_label(&self) -> &str {
        &self.host_label
    }

    pub fn image(&self, g: Element) -> &CMat {
        &self.images[g.0]
    }

    pub fn dim(&self) -> usize {
        self.images[0].nrows()
    }
}
