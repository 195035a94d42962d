//! Complex linear algebra helpers shared across the crate.
//!
//! Everything here reduces to Hermitian eigendecomposition. Unitary matrices
//! are diagonalized through the commuting pair (U + U†)/2, (U − U†)/2i, which
//! keeps the whole crate free of general (non-normal) eigensolvers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// True when every entry is finite (no NaN or infinity).
pub fn all_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Hermiticity defect ‖M − M†‖ (Frobenius).
pub fn hermiticity_residual(m: &CMat) -> f64 {
    (m - m.adjoint()).norm()
}

/// Unitarity defect ‖M†M − I‖ (Frobenius).
pub fn unitarity_residual(m: &CMat) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMat::identity(n, n)).norm()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order together with the matching
/// orthonormal eigenvector columns. Each column is normalized so that its
/// first significant entry is real and positive, which makes the output
/// deterministic for golden tests.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "hermitian_eigen requires a square matrix");
    // Work on the exactly Hermitian part so tiny asymmetries cannot leak in.
    let h = (m + m.adjoint()).scale(0.5);
    let se = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    canonical_column_phases(&mut vectors);
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// Phases within this distance are treated as one eigenspace.
pub const PHASE_CLUSTER_TOL: f64 = 1e-8;

/// Eigendecomposition of a unitary matrix U = V diag(e^{iθ}) V†.
///
/// Phases are returned ascending in [0, 2π). A scalar matrix z·I yields
/// V = I, so the identity element of a representation gets the identity
/// frame. Fails when the reassembled matrix misses U by more than 1e−8.
pub fn unitary_eigen(u: &CMat) -> Result<(Vec<f64>, CMat)> {
    let n = u.nrows();
    assert_eq!(n, u.ncols(), "unitary_eigen requires a square matrix");

    // Scalar matrices keep the identity frame.
    let z = u[(0, 0)];
    if (u - CMat::identity(n, n).map(|e| e * z)).norm() < 1e-12 {
        let theta = wrap_phase(z.arg());
        return Ok((vec![theta; n], CMat::identity(n, n)));
    }

    // cos and sin parts commute and share U's eigenvectors.
    let a = (u + u.adjoint()).scale(0.5);
    let b = (u - u.adjoint()).map(|e| e / (2.0 * I));
    let (avals, avecs) = hermitian_eigen(&a);

    let mut phases: Vec<f64> = Vec::with_capacity(n);
    let mut columns: Vec<CVec> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && avals[end] - avals[end - 1] <= PHASE_CLUSTER_TOL {
            end += 1;
        }
        let k = end - start;
        let sub = avecs.columns(start, k).into_owned();
        if k == 1 {
            let col = CVec::from_column_slice(sub.as_slice());
            let s = (col.adjoint() * &b * &col)[(0, 0)].re;
            phases.push(wrap_phase(s.atan2(avals[start])));
            columns.push(col);
        } else {
            // Split the cosθ-degenerate subspace by the sin part.
            let bc = sub.adjoint() * &b * &sub;
            let (bvals, bvecs) = hermitian_eigen(&bc);
            let refined = &sub * &bvecs;
            for j in 0..k {
                phases.push(wrap_phase(bvals[j].atan2(avals[start])));
                columns.push(refined.column(j).into_owned());
            }
        }
        start = end;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| phases[x].partial_cmp(&phases[y]).unwrap());
    let sorted_phases: Vec<f64> = order.iter().map(|&k| phases[k]).collect();
    let mut v = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        v.set_column(dst, &columns[src]);
    }
    canonical_column_phases(&mut v);

    let d = CMat::from_diagonal(&CVec::from_iterator(
        n,
        sorted_phases.iter().map(|&t| c(t.cos(), t.sin())),
    ));
    let residual = (&v * d * v.adjoint() - u).norm();
    if residual > 1e-8 {
        return Err(Error::EigenFailure { residual });
    }
    Ok((sorted_phases, v))
}

/// Map an angle into [0, 2π). Values within 1e−12 of 2π snap to 0.
pub fn wrap_phase(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if TAU - t < 1e-12 {
        t = 0.0;
    }
    t
}

/// Rotate each column so its first significant entry is real positive.
fn canonical_column_phases(m: &mut CMat) {
    let (rows, cols) = m.shape();
    for j in 0..cols {
        let max_abs = (0..rows).map(|i| m[(i, j)].norm()).fold(0.0, f64::max);
        if max_abs == 0.0 {
            continue;
        }
        let pivot = (0..rows)
            .find(|&i| m[(i, j)].norm() > 1e-8 * max_abs)
            .unwrap();
        let z = m[(pivot, j)];
        let phase = z / z.norm();
        for i in 0..rows {
            m[(i, j)] /= phase;
        }
    }
}

/// Spectral norm estimate via the Hermitian eigenvalues of M†M.
pub fn spectral_norm(m: &CMat) -> f64 {
    let g = m.adjoint() * m;
    hermitian_eigenvalues(&g)
        .last()
        .map(|v| v.max(0.0).sqrt())
        .unwrap_or(0.0)
}

/// Condition number estimate of a square matrix via singular values.
pub fn condition_number(m: &CMat) -> f64 {
    let g = m.adjoint() * m;
    let vals = hermitian_eigenvalues(&g);
    let max = vals.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    let min = vals.first().copied().unwrap_or(0.0).max(0.0).sqrt();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Block-diagonal direct sum of square matrices.
pub fn direct_sum(blocks: &[&CMat]) -> CMat {
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(total, total);
    let mut offset = 0;
    for b in blocks {
        let n = b.nrows();
        out.view_mut((offset, offset), (n, n)).copy_from(*b);
        offset += n;
    }
    out
}

/// exp(iH) for Hermitian H, via eigendecomposition.
pub fn unitary_exp_i(h: &CMat) -> CMat {
    let (vals, vecs) = hermitian_eigen(h);
    let d = CMat::from_diagonal(&CVec::from_iterator(
        vals.len(),
        vals.iter().map(|&t| c(t.cos(), t.sin())),
    ));
    &vecs * d * vecs.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_unitary(n: usize, rng: &mut impl rand::Rng) -> CMat {
        // exp(iH) of a random Hermitian matrix is Haar-ish enough for tests.
        let mut h = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let h = (h.clone() + h.adjoint()).scale(0.5);
        unitary_exp_i(&h)
    }

    #[test]
    fn hermitian_eigen_reassembles() {
        let m = CMat::from_row_slice(2, 2, &[cr(2.0), I, -I, cr(2.0)]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        let d = CMat::from_diagonal(&CVec::from_iterator(2, vals.iter().map(|&v| cr(v))));
        assert!((&vecs * d * vecs.adjoint() - &m).norm() < 1e-12);
        assert!(unitarity_residual(&vecs) < 1e-12);
    }

    #[test]
    fn unitary_eigen_identity_frame() {
        let u = CMat::identity(3, 3);
        let (phases, v) = unitary_eigen(&u).unwrap();
        assert_eq!(phases, vec![0.0; 3]);
        assert!((v - CMat::identity(3, 3)).norm() == 0.0);
    }

    #[test]
    fn unitary_eigen_swap_matrix() {
        let u = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let (phases, v) = unitary_eigen(&u).unwrap();
        assert!(phases[0].abs() < 1e-12);
        assert!((phases[1] - std::f64::consts::PI).abs() < 1e-12);
        let d = CMat::from_diagonal(&CVec::from_iterator(
            2,
            phases.iter().map(|&t| c(t.cos(), t.sin())),
        ));
        assert!((&v * d * v.adjoint() - &u).norm() < 1e-12);
    }

    #[test]
    fn unitary_eigen_random_reassembly() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for _ in 0..20 {
                let u = random_unitary(n, &mut rng);
                let (phases, v) = unitary_eigen(&u).unwrap();
                for w in phases.windows(2) {
                    assert!(w[0] <= w[1] + 1e-15, "phases must be ascending");
                }
                let d = CMat::from_diagonal(&CVec::from_iterator(
                    n,
                    phases.iter().map(|&t| c(t.cos(), t.sin())),
                ));
                // 1e-8 is the library's own frame-residual contract.
                assert!((&v * d * v.adjoint() - &u).norm() < 1e-8);
                assert!(unitarity_residual(&v) < 1e-9);
            }
        }
    }

    #[test]
    fn unitary_eigen_degenerate_cos() {
        // diag(e^{iπ/3}, e^{-iπ/3}) has equal cosines but distinct phases.
        let t = std::f64::consts::FRAC_PI_3;
        let u = CMat::from_diagonal(&CVec::from_vec(vec![c(t.cos(), t.sin()), c(t.cos(), -t.sin())]));
        let (phases, v) = unitary_eigen(&u).unwrap();
        assert!((phases[0] - t).abs() < 1e-12);
        assert!((phases[1] - (TAU - t)).abs() < 1e-12);
        let d = CMat::from_diagonal(&CVec::from_iterator(
            2,
            phases.iter().map(|&p| c(p.cos(), p.sin())),
        ));
        assert!((&v * d * v.adjoint() - &u).norm() < 1e-12);
    }

    #[test]
    fn direct_sum_shape() {
        let a = CMat::identity(2, 2);
        let b = CMat::from_row_slice(1, 1, &[cr(3.0)]);
        let s = direct_sum(&[&a, &b]);
        assert_eq!(s.nrows(), 3);
        assert_eq!(s[(2, 2)], cr(3.0));
        assert_eq!(s[(0, 2)], ZERO);
    }
}
