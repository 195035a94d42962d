//! Built-in groups, representations and reference states used by tests,
//! the CLI registry and the shipped fixture files.

use std::sync::Arc;

use num_complex::Complex64;

use crate::finite_group::{FiniteGroup, SubgroupEmbedding};
use crate::group_algebra::GroupFunction;
use crate::inverse::StochasticFamily;
use crate::irrep::{character, Irrep, IrrepRegistry};
use crate::linalg::{c, cr, CMat, ZERO};

/// Multiplication table of S₃, the symmetry group of the triangle.
pub fn s3_table() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 3, 4, 5, 6],
        vec![2, 3, 1, 5, 6, 4],
        vec![3, 1, 2, 6, 4, 5],
        vec![4, 6, 5, 1, 3, 2],
        vec![5, 4, 6, 2, 1, 3],
        vec![6, 5, 4, 3, 2, 1],
    ]
}

pub fn s3() -> Arc<FiniteGroup> {
    FiniteGroup::build(&s3_table(), "S3").unwrap()
}

pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n + 1).collect())
        .collect()
}

/// The cyclic group Zₙ with elements ordered e, g, g², …
pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    FiniteGroup::build(&cyclic_table(n), &format!("Z{n}")).unwrap()
}

fn lambda() -> Complex64 {
    // e^{2πi/3}
    c(-0.5, 3f64.sqrt() / 2.0)
}

/// The three irreducible representations of S₃: trivial, sign, and the
/// two-dimensional representation built on λ = e^{2πi/3}.
pub fn s3_registry() -> IrrepRegistry {
    let g = s3();
    let l = lambda();
    let l2 = l * l;
    let one = CMat::identity(1, 1);
    let d0 = Irrep::new(g.clone(), "D0", vec![one.clone(); 6]).unwrap();
    let sign = |v: f64| CMat::from_row_slice(1, 1, &[cr(v)]);
    let d1 = Irrep::new(
        g.clone(),
        "D1",
        vec![sign(1.0), sign(1.0), sign(1.0), sign(-1.0), sign(-1.0), sign(-1.0)],
    )
    .unwrap();
    let diag = |a: Complex64, b: Complex64| CMat::from_row_slice(2, 2, &[a, ZERO, ZERO, b]);
    let anti = |a: Complex64, b: Complex64| CMat::from_row_slice(2, 2, &[ZERO, a, b, ZERO]);
    let d2 = Irrep::new(
        g.clone(),
        "D2",
        vec![
            CMat::identity(2, 2),
            diag(l, l.conj()),
            diag(l2, l2.conj()),
            anti(cr(1.0), cr(1.0)),
            anti(l, l.conj()),
            anti(l2, l2.conj()),
        ],
    )
    .unwrap();
    IrrepRegistry::new(g, vec![d0, d1, d2]).unwrap()
}

pub fn z2_registry() -> IrrepRegistry {
    cyclic_registry(2)
}

/// Roots-of-unity registry for Zₙ: D^m(gₖ) = e^{2πi·m·k/n}.
pub fn cyclic_registry(n: usize) -> IrrepRegistry {
    let g = cyclic(n);
    let irreps = (0..n)
        .map(|m| {
            let matrices = (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * (m * k % n) as f64 / n as f64;
                    CMat::from_row_slice(1, 1, &[c(t.cos(), t.sin())])
                })
                .collect();
            Irrep::new(g.clone(), &format!("D{m}"), matrices).unwrap()
        })
        .collect();
    IrrepRegistry::new(g, irreps).unwrap()
}

/// χ² on S₃, the character of the two-dimensional representation.
pub fn chi2() -> GroupFunction {
    character(s3_registry().find("D2").unwrap())
}

/// D⁰ ⊕ D¹ ⊕ D², the four-dimensional reducible representation carrying
/// every positive-type function on S₃.
pub fn s3_full_sum() -> Irrep {
    let reg = s3_registry();
    Irrep::direct_sum(
        &[reg.find("D0").unwrap(), reg.find("D1").unwrap(), reg.find("D2").unwrap()],
        "D0+D1+D2",
    )
    .unwrap()
}

/// S₃ embedded in the defining representation of U(2) through D².
pub fn s3_in_u2() -> SubgroupEmbedding {
    let reg = s3_registry();
    let d2 = reg.find("D2").unwrap();
    SubgroupEmbedding::new(
        reg.group().clone(),
        "U(2) defining",
        d2.matrices().to_vec(),
        1e-12,
    )
    .unwrap()
}

/// Block density state on D⁰ ⊕ D¹ ⊕ D²: diag(α, β, γ·Bloch(x,y,z)).
pub fn block_state(alpha: f64, beta: f64, gamma: f64, x: f64, y: f64, z: f64) -> CMat {
    let mut m = CMat::zeros(4, 4);
    m[(0, 0)] = cr(alpha);
    m[(1, 1)] = cr(beta);
    m[(2, 2)] = cr(gamma * (1.0 + z) / 2.0);
    m[(2, 3)] = c(gamma * x / 2.0, -gamma * y / 2.0);
    m[(3, 2)] = c(gamma * x / 2.0, gamma * y / 2.0);
    m[(3, 3)] = cr(gamma * (1.0 - z) / 2.0);
    m
}

/// The general stochastic family on S₃ from the inverse-problem analysis,
/// parametrized by (x₁, …, x₆) with τ(gⱼ) = ((1+xⱼ)/2, (1−xⱼ)/2) paired to
/// the eigenphases as the reference tables pair them. Components are stored
/// in this crate's ascending-phase order, so entries at g₃…g₆ appear
/// swapped relative to the parametrization.
pub fn s3_family_from_xs(xs: [f64; 6]) -> StochasticFamily {
    let lo = |x: f64| [(1.0 + x) / 2.0, (1.0 - x) / 2.0];
    let hi = |x: f64| [(1.0 - x) / 2.0, (1.0 + x) / 2.0];
    let vectors = vec![
        lo(xs[0]).to_vec(),
        lo(xs[1]).to_vec(),
        hi(xs[2]).to_vec(),
        hi(xs[3]).to_vec(),
        hi(xs[4]).to_vec(),
        hi(xs[5]).to_vec(),
    ];
    StochasticFamily::new(s3(), "D2", vectors).unwrap()
}

/// The family corresponding to the Bloch point (x, y, z): a genuine
/// tomogram for x²+y²+z² ≤ 1, and a compatible Hermitian family outside.
pub fn s3_family_bloch(x: f64, y: f64, z: f64) -> StochasticFamily {
    let s3 = 3f64.sqrt();
    s3_family_from_xs([z, z, z, -x, (x + s3 * y) / 2.0, (x - s3 * y) / 2.0])
}

/// The observable A = U diag(λ₁, −λ₂) U† whose tomographic symbols stay
/// stochastic for small λ₂ even though A is not positive.
pub fn observable_a(theta: f64, phi: f64, psi: f64, lam1: f64, lam2: f64) -> CMat {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = |t: f64| c(t.cos(), t.sin());
    let u = CMat::from_row_slice(
        2,
        2,
        &[
            e((phi + psi) / 2.0) * ct,
            e((phi - psi) / 2.0) * st,
            -e(-(phi - psi) / 2.0) * st,
            e(-(phi + psi) / 2.0) * ct,
        ],
    );
    let d = CMat::from_row_slice(2, 2, &[cr(lam1), ZERO, ZERO, cr(-lam2)]);
    &u * d * u.adjoint()
}
