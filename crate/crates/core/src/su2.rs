//! SU(2) tomography: Euler-angle group elements, Wigner D matrices,
//! tomograms, the 3j-symbol reconstruction formula and the homogeneity
//! property of the underlying probability measure.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{c, cr, hermitian_eigen, CMat, CVec};
use crate::quadrature::QuadratureGrid;
use crate::threej::{three_j, TwoJ};
use crate::tomography::DensityState;

/// Largest spin supported: matrices stay at most 9×9.
pub const TWO_J_MAX: TwoJ = 8;

/// An SU(2) element in Euler angles, α ∈ \[0,2π), β ∈ \[0,π\], γ ∈ \[0,4π).
/// The γ range covers the double cover, so half-integer representations
/// are single-valued.
#[derive(Debug, Clone, Copy)]
pub struct SU2Element {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SU2Element {
    pub fn identity() -> Self {
        SU2Element {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
        }
    }

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(0.0..TAU).contains(&alpha) || !(0.0..=PI).contains(&beta) || !(0.0..2.0 * TAU).contains(&gamma)
        {
            return Err(Error::InvalidParameter(format!(
                "Euler angles out of range: ({alpha}, {beta}, {gamma})"
            )));
        }
        Ok(SU2Element { alpha, beta, gamma })
    }

    /// The defining 2×2 matrix.
    pub fn matrix(&self) -> CMat {
        let (hc, hs) = ((self.beta / 2.0).cos(), (self.beta / 2.0).sin());
        let ep = |t: f64| c(t.cos(), t.sin());
        CMat::from_row_slice(
            2,
            2,
            &[
                ep(-(self.alpha + self.gamma) / 2.0) * hc,
                -ep(-(self.alpha - self.gamma) / 2.0) * hs,
                ep((self.alpha - self.gamma) / 2.0) * hs,
                ep((self.alpha + self.gamma) / 2.0) * hc,
            ],
        )
    }

    /// Recover Euler angles from a 2×2 SU(2) matrix, resolving the double
    /// cover through the γ ∈ [0, 4π) range.
    pub fn from_matrix(u: &CMat) -> Result<Self> {
        if u.nrows() != 2 || u.ncols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: u.nrows(),
            });
        }
        let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
        if (det - cr(1.0)).norm() > 1e-9 || crate::linalg::unitarity_residual(u) > 1e-9 {
            return Err(Error::InvalidParameter(
                "matrix is not special unitary".into(),
            ));
        }
        let cm = u[(0, 0)].norm();
        let sm = u[(1, 0)].norm();
        let beta = 2.0 * sm.atan2(cm);
        let wrap4 = |t: f64| t.rem_euclid(2.0 * TAU);
        let (alpha, gamma);
        if sm < 1e-12 {
            alpha = 0.0;
            gamma = wrap4(-2.0 * u[(0, 0)].arg());
        } else if cm < 1e-12 {
            alpha = 0.0;
            gamma = wrap4(-2.0 * u[(1, 0)].arg());
        } else {
            let p = wrap4(-2.0 * u[(0, 0)].arg()); // α + γ (mod 4π)
            let m = wrap4(2.0 * u[(1, 0)].arg()); // α − γ (mod 4π)
            alpha = ((p + m) / 2.0).rem_euclid(TAU);
            gamma = wrap4(p - alpha);
        }
        SU2Element::new(alpha, beta.clamp(0.0, PI), gamma)
    }

    /// Group composition: multiply the 2×2 matrices and re-extract angles.
    pub fn compose(&self, other: &SU2Element) -> SU2Element {
        let m = self.matrix() * other.matrix();
        SU2Element::from_matrix(&m).expect("product of SU(2) matrices is SU(2)")
    }

    pub fn inverse(&self) -> SU2Element {
        SU2Element::from_matrix(&self.matrix().adjoint()).expect("inverse stays in SU(2)")
    }
}

/// J_z for spin j: diag(j, j−1, …, −j). Rows are ordered by descending m.
pub fn jz_matrix(two_j: TwoJ) -> CMat {
    let n = (two_j + 1) as usize;
    CMat::from_diagonal(&CVec::from_iterator(
        n,
        (0..n).map(|i| cr((two_j - 2 * i as i64) as f64 / 2.0)),
    ))
}

/// J_y for spin j, the tridiagonal Hermitian generator of rotations about y,
/// assembled from J_y = (J₊ − J₋)/(2i) in the descending-m basis.
pub fn jy_matrix(two_j: TwoJ) -> CMat {
    let n = (two_j + 1) as usize;
    let j = two_j as f64 / 2.0;
    let mut jy = CMat::zeros(n, n);
    for i in 0..n {
        let mi = j - i as f64;
        if i > 0 {
            let plus = ((j - mi) * (j + mi + 1.0)).sqrt();
            jy[(i - 1, i)] = c(0.0, -plus / 2.0);
        }
        if i + 1 < n {
            let minus = ((j + mi) * (j - mi + 1.0)).sqrt();
            jy[(i + 1, i)] = c(0.0, minus / 2.0);
        }
    }
    jy
}

/// The small Wigner matrix d^j(β) = exp(−iβ J_y), via eigendecomposition
/// of the explicit J_y.
pub fn wigner_small_d(two_j: TwoJ, beta: f64) -> Result<CMat> {
    if two_j < 0 || two_j > TWO_J_MAX {
        return Err(Error::SpinTooLarge {
            two_j,
            max: TWO_J_MAX,
        });
    }
    let jy = jy_matrix(two_j);
    let (vals, vecs) = hermitian_eigen(&jy);
    let n = vals.len();
    let d = CMat::from_diagonal(&CVec::from_iterator(
        n,
        vals.iter().map(|&l| {
            let t = -beta * l;
            c(t.cos(), t.sin())
        }),
    ));
    Ok(&vecs * d * vecs.adjoint())
}

/// The Wigner matrix D^j(α,β,γ) = e^{−iαJ_z} d^j(β) e^{−iγJ_z}.
pub fn wigner_d(two_j: TwoJ, g: &SU2Element) -> Result<CMat> {
    let n = (two_j + 1) as usize;
    let mut d = wigner_small_d(two_j, g.beta)?;
    for row in 0..n {
        let m_row = (two_j - 2 * row as i64) as f64 / 2.0;
        let pa = -g.alpha * m_row;
        let fa = c(pa.cos(), pa.sin());
        for col in 0..n {
            d[(row, col)] *= fa;
        }
    }
    for col in 0..n {
        let m_col = (two_j - 2 * col as i64) as f64 / 2.0;
        let pg = -g.gamma * m_col;
        let fg = c(pg.cos(), pg.sin());
        for row in 0..n {
            d[(row, col)] *= fg;
        }
    }
    Ok(d)
}

/// Tomogram of a state at one group element: W_ρ(g; m) = ⟨m|D†(g) ρ D(g)|m⟩,
/// indexed by m = j, j−1, …, −j.
pub fn su2_tomogram(rho: &DensityState, two_j: TwoJ, g: &SU2Element) -> Result<Vec<f64>> {
    let n = (two_j + 1) as usize;
    if rho.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.dim(),
        });
    }
    let d = wigner_d(two_j, g)?;
    let rotated = d.adjoint() * rho.matrix() * &d;
    Ok((0..n).map(|m| rotated[(m, m)].re).collect())
}

/// Tomogram samples over a whole quadrature grid, one stochastic vector per
/// node, reusing each node's Wigner matrix.
pub fn su2_tomogram_samples(
    rho: &DensityState,
    two_j: TwoJ,
    grid: &QuadratureGrid,
) -> Result<Vec<Vec<f64>>> {
    let n = (two_j + 1) as usize;
    if rho.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.dim(),
        });
    }
    grid.nodes()
        .iter()
        .map(|g| su2_tomogram(rho, two_j, g))
        .collect()
}

/// State reconstruction from grid-sampled tomograms through the 3j-symbol
/// double sum:
/// ρ_{m₁m₂} = Σ_{m,J} (2J+1)² (−1)^{M+m−m₂} [j j J; m₁ −m₂ −M]
///            [j j J; m −m 0] ∫ W_ρ(g; m) D^J_{M0}(g) dg,  M = m₁ − m₂.
///
/// The weight (2J+1)² belongs to the plain normalized Haar integral the
/// grid computes: one factor undoes the 1/(2J+1) of the Schur integral
/// ∫ D^{J'}_{s0} D^J_{M0} dg and one comes from the two Clebsch-Gordan
/// contractions. A torus-split measure would shift this weighting, which
/// is why the formal dimension does not appear explicitly here.
pub fn su2_reconstruct(
    samples: &[Vec<f64>],
    two_j: TwoJ,
    grid: &QuadratureGrid,
) -> Result<CMat> {
    let n = (two_j + 1) as usize;
    if samples.len() != grid.nodes().len() {
        return Err(Error::DimensionMismatch {
            expected: grid.nodes().len(),
            got: samples.len(),
        });
    }
    if let Some(row) = samples.iter().find(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: row.len(),
        });
    }
    let required = 2 * two_j;
    if grid.certified_two_j_max() < required {
        return Err(Error::GridOrderInsufficient {
            certified: grid.certified_two_j_max(),
            required,
            residual: grid.certification_residual(),
        });
    }

    // Haar integrals I[J][M][m] = ∫ W_ρ(g; m) D^J_{M0}(g) dg. D^J has odd
    // dimension (J integer), so the middle column is the M′ = 0 one.
    let mut integrals: Vec<Vec<Vec<Complex64>>> = Vec::new();
    for two_big_j in (0..=required).step_by(2) {
        let nj = (two_big_j + 1) as usize;
        let zero_col = nj / 2;
        let mut block = vec![vec![Complex64::new(0.0, 0.0); n]; nj];
        for (node_idx, (g, &w)) in grid.nodes().iter().zip(grid.weights()).enumerate() {
            let dj = wigner_d(two_big_j, g)?;
            for (mi, row) in block.iter_mut().enumerate() {
                let dvalue = dj[(mi, zero_col)] * w;
                for (m, slot) in row.iter_mut().enumerate() {
                    *slot += dvalue * samples[node_idx][m];
                }
            }
        }
        integrals.push(block);
    }

    let mut rho = CMat::zeros(n, n);
    for i1 in 0..n {
        let two_m1 = two_j - 2 * i1 as i64;
        for i2 in 0..n {
            let two_m2 = two_j - 2 * i2 as i64;
            let two_big_m = two_m1 - two_m2;
            let mut acc = Complex64::new(0.0, 0.0);
            for (jb, two_big_j) in (0..=required).step_by(2).enumerate() {
                if two_big_m.abs() > two_big_j {
                    continue;
                }
                let outer = three_j(two_j, two_j, two_big_j, two_m1, -two_m2, -two_big_m);
                if outer.is_zero() {
                    continue;
                }
                let weight = ((two_big_j + 1) * (two_big_j + 1)) as f64;
                let outer = outer.to_f64() * weight;
                let mi = ((two_big_j - two_big_m) / 2) as usize;
                for im in 0..n {
                    let two_m = two_j - 2 * im as i64;
                    let inner = three_j(two_j, two_j, two_big_j, two_m, -two_m, 0);
                    if inner.is_zero() {
                        continue;
                    }
                    // (−1)^{M + m − m₂}, an integer exponent.
                    let exponent = (two_big_m / 2 + (two_m - two_m2) / 2).rem_euclid(2);
                    let sign = if exponent == 0 { 1.0 } else { -1.0 };
                    acc += integrals[jb][mi][im] * (sign * outer * inner.to_f64());
                }
            }
            rho[(i1, i2)] = acc;
        }
    }
    Ok(rho)
}

/// Direct reconstruction ρ = (2j+1) ∫ φ(g)* D^j(g) dg from samples of the
/// positive-type function φ(g) = Tr[ρ D(g)] — the generic route, used to
/// cross-check the 3j path.
pub fn su2_reconstruct_direct(
    phi_samples: &[Complex64],
    two_j: TwoJ,
    grid: &QuadratureGrid,
) -> Result<CMat> {
    let n = (two_j + 1) as usize;
    if phi_samples.len() != grid.nodes().len() {
        return Err(Error::DimensionMismatch {
            expected: grid.nodes().len(),
            got: phi_samples.len(),
        });
    }
    let mut rho = CMat::zeros(n, n);
    for ((g, &w), &phi) in grid.nodes().iter().zip(grid.weights()).zip(phi_samples) {
        let d = wigner_d(two_j, g)?;
        rho += d.map(|e| e * phi.conj() * w);
    }
    Ok(rho.scale((two_j + 1) as f64))
}

/// Residual of the discrete homogeneity property: the phase-weighted
/// tomogram sum Σ_m e^{ikξm} W_m(g) must equal Tr[ρ D(g̃)] for the torus
/// point g̃ = D(g) e^{ikξ J_z} D†(g), for every scaling k of the torus
/// coordinate ξ.
pub fn homogeneity_residual(
    rho: &DensityState,
    two_j: TwoJ,
    g: &SU2Element,
    xi: f64,
    k: f64,
) -> Result<f64> {
    let n = (two_j + 1) as usize;
    if rho.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.dim(),
        });
    }
    let w = su2_tomogram(rho, two_j, g)?;
    let mut lhs = Complex64::new(0.0, 0.0);
    for (i, &wm) in w.iter().enumerate() {
        let m = (two_j - 2 * i as i64) as f64 / 2.0;
        let t = k * xi * m;
        lhs += c(t.cos(), t.sin()) * wm;
    }
    let d = wigner_d(two_j, g)?;
    let torus = CMat::from_diagonal(&CVec::from_iterator(
        n,
        (0..n).map(|i| {
            let m = (two_j - 2 * i as i64) as f64 / 2.0;
            let t = k * xi * m;
            c(t.cos(), t.sin())
        }),
    ));
    let g_tilde = &d * torus * d.adjoint();
    let rhs = (rho.matrix() * g_tilde).diagonal().sum();
    Ok((lhs - rhs).norm())
}
