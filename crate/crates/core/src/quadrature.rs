//! Product quadrature for the normalized Haar measure on SU(2):
//! uniform (trapezoid) nodes on the α and γ circles, Gauss–Legendre in
//! cos β. A grid certifies itself by testing Schur orthogonality of the
//! Wigner matrix elements up to the largest spin that passes.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::su2::{wigner_d, SU2Element, TWO_J_MAX};
use crate::threej::TwoJ;

/// Orthogonality residual a grid must reach to certify a spin.
pub const CERTIFICATION_TOL: f64 = 1e-9;

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Tricomi initial guess.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Quadrature nodes and weights approximating the normalized Haar measure.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    nodes: Vec<SU2Element>,
    weights: Vec<f64>,
    order: usize,
    certified_two_j_max: TwoJ,
    certification_residual: f64,
}

impl QuadratureGrid {
    pub fn nodes(&self) -> &[SU2Element] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest spin (doubled) for which every pair of representations up to
    /// it passed the orthogonality test at 1e−9.
    pub fn certified_two_j_max(&self) -> TwoJ {
        self.certified_two_j_max
    }

    /// Worst orthogonality residual observed within the certified range.
    pub fn certification_residual(&self) -> f64 {
        self.certification_residual
    }

    /// Integrate a scalar function over the grid.
    pub fn integrate<F: FnMut(&SU2Element) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(g, &w)| f(g) * w)
            .sum()
    }

    /// Build from raw parts, re-running certification (used by the CLI when
    /// grids are loaded back from files).
    pub fn from_parts(nodes: Vec<SU2Element>, weights: Vec<f64>, order: usize) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(Error::InvalidParameter(
                "grid nodes and weights must be nonempty and equal length".into(),
            ));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidParameter("grid weights must be finite".into()));
        }
        let mut grid = QuadratureGrid {
            nodes,
            weights,
            order,
            certified_two_j_max: 0,
            certification_residual: 0.0,
        };
        grid.certify()?;
        Ok(grid)
    }

    fn certify(&mut self) -> Result<()> {
        // Weight normalization is the two_j = 0 case of the test below, but
        // check it separately so the error message is direct.
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > CERTIFICATION_TOL {
            return Err(Error::GridOrderInsufficient {
                certified: -1,
                required: 0,
                residual: (total - 1.0).abs(),
            });
        }

        // Cache Wigner matrices per spin as the certification walks upward.
        let mut cache: Vec<Vec<crate::linalg::CMat>> = Vec::new();
        let mut certified: TwoJ = -1;
        let mut worst: f64 = 0.0;
        'outer: for two_j in 0..=TWO_J_MAX {
            let mats: Result<Vec<_>> = self.nodes.iter().map(|g| wigner_d(two_j, g)).collect();
            cache.push(mats?);
            for two_jp in 0..=two_j {
                let residual = self.orthogonality_residual(
                    &cache[two_j as usize],
                    &cache[two_jp as usize],
                    two_j == two_jp,
                    two_j,
                );
                if residual > CERTIFICATION_TOL {
                    break 'outer;
                }
                worst = worst.max(residual);
            }
            certified = two_j;
        }
        if certified < 0 {
            return Err(Error::GridOrderInsufficient {
                certified,
                required: 0,
                residual: worst,
            });
        }
        self.certified_two_j_max = certified;
        self.certification_residual = worst;
        Ok(())
    }

    /// max |Σ_w D^{j}_{rs}* D^{j'}_{pq} − δ_{jj'} δ_{rp} δ_{sq}/(2j+1)|.
    fn orthogonality_residual(
        &self,
        d1: &[crate::linalg::CMat],
        d2: &[crate::linalg::CMat],
        same: bool,
        two_j1: TwoJ,
    ) -> f64 {
        let n1 = d1[0].nrows();
        let n2 = d2[0].nrows();
        let mut worst: f64 = 0.0;
        for r in 0..n1 {
            for s in 0..n1 {
                for p in 0..n2 {
                    for q in 0..n2 {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (k, &w) in self.weights.iter().enumerate() {
                            acc += d1[k][(r, s)].conj() * d2[k][(p, q)] * w;
                        }
                        let expected = if same && r == p && s == q {
                            1.0 / (two_j1 + 1) as f64
                        } else {
                            0.0
                        };
                        worst = worst.max((acc - Complex64::new(expected, 0.0)).norm());
                    }
                }
            }
        }
        worst
    }
}

/// Build a product Haar grid: `order` uniform α nodes, 2·`order` uniform γ
/// nodes covering the double cover, and `order` Gauss–Legendre nodes in
/// cos β. Certification picks the largest reliable spin; building fails if
/// even the trivial representation cannot be integrated.
pub fn haar_grid(order: usize) -> Result<QuadratureGrid> {
    if order == 0 {
        return Err(Error::InvalidParameter("grid order must be positive".into()));
    }
    let n_alpha = order;
    let n_gamma = 2 * order;
    let (beta_nodes, beta_weights) = gauss_legendre(order);
    let mut nodes = Vec::with_capacity(n_alpha * n_gamma * order);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for ia in 0..n_alpha {
        let alpha = TAU * ia as f64 / n_alpha as f64;
        for (t, wb) in beta_nodes.iter().zip(&beta_weights) {
            let beta = t.clamp(-1.0, 1.0).acos();
            for ig in 0..n_gamma {
                let gamma = 2.0 * TAU * ig as f64 / n_gamma as f64;
                nodes.push(SU2Element { alpha, beta, gamma });
                weights.push(wb / 2.0 / n_alpha as f64 / n_gamma as f64);
            }
        }
    }
    QuadratureGrid::from_parts(nodes, weights, order)
}
