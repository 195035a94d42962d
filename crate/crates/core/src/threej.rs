//! Wigner 3j symbols in exact arithmetic.
//!
//! Every 3j symbol is a signed square root of a rational number. The Racah
//! sum is evaluated over big rationals and the factorial radicand is kept
//! in prime-factored form, so selection rules, signs, and the orthogonality
//! identities can be checked exactly; `to_f64` converts at the end.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Spins are passed doubled (two_j = 2j) so half-integers stay integral.
pub type TwoJ = i64;

/// An exact value c·√r with rational c and squarefree integer r ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSqrt {
    coefficient: BigRational,
    radicand: BigUint,
}

impl SignedSqrt {
    pub fn zero() -> Self {
        SignedSqrt {
            coefficient: BigRational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    /// The exact square, sign discarded.
    pub fn squared(&self) -> BigRational {
        let r = BigRational::from_integer(BigInt::from(self.radicand.clone()));
        &self.coefficient * &self.coefficient * r
    }

    /// Exact product; the shared radicand factor is extracted with a gcd,
    /// so the result stays in canonical squarefree form.
    pub fn mul(&self, other: &SignedSqrt) -> SignedSqrt {
        if self.is_zero() || other.is_zero() {
            return SignedSqrt::zero();
        }
        let g = gcd_biguint(&self.radicand, &other.radicand);
        let ra = &self.radicand / &g;
        let rb = &other.radicand / &g;
        let coefficient = &self.coefficient
            * &other.coefficient
            * BigRational::from_integer(BigInt::from(g));
        SignedSqrt {
            coefficient,
            radicand: ra * rb,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coefficient.to_f64().unwrap_or(f64::NAN);
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        c * r.sqrt()
    }
}

fn gcd_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Exponents of the prime factorization of a product of factorials.
#[derive(Debug, Clone, Default)]
struct FactoredInt {
    exponents: BTreeMap<u64, i64>,
}

impl FactoredInt {
    fn mul_factorial(&mut self, n: i64, sign: i64) {
        debug_assert!(n >= 0);
        for k in 2..=n as u64 {
            let mut m = k;
            let mut p = 2;
            while p * p <= m {
                while m % p == 0 {
                    *self.exponents.entry(p).or_insert(0) += sign;
                    m /= p;
                }
                p += 1;
            }
            if m > 1 {
                *self.exponents.entry(m).or_insert(0) += sign;
            }
        }
    }

    /// Split into (rational square-root of the even part, squarefree odd part).
    fn sqrt_split(&self) -> (BigRational, BigUint) {
        let mut coeff = BigRational::one();
        let mut radicand = BigUint::one();
        for (&p, &e) in &self.exponents {
            let half = e.div_euclid(2);
            let odd = e.rem_euclid(2);
            let pb = BigInt::from(p);
            if half >= 0 {
                coeff *= BigRational::from_integer(pb.pow(half as u32));
            } else {
                coeff /= BigRational::from_integer(pb.pow((-half) as u32));
            }
            if odd == 1 {
                radicand *= BigUint::from(p);
            }
        }
        (coeff, radicand)
    }
}

fn factorial_rational(n: i64) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

fn triangle_ok(two_j1: TwoJ, two_j2: TwoJ, two_j3: TwoJ) -> bool {
    two_j3 >= (two_j1 - two_j2).abs() && two_j3 <= two_j1 + two_j2 && (two_j1 + two_j2 + two_j3) % 2 == 0
}

/// The Wigner 3j symbol (j1 j2 j3; m1 m2 m3), exact. Spins and projections
/// are doubled. Selection-rule violations give an exact zero.
pub fn three_j(
    two_j1: TwoJ,
    two_j2: TwoJ,
    two_j3: TwoJ,
    two_m1: TwoJ,
    two_m2: TwoJ,
    two_m3: TwoJ,
) -> SignedSqrt {
    if two_m1 + two_m2 + two_m3 != 0
        || !triangle_ok(two_j1, two_j2, two_j3)
        || two_m1.abs() > two_j1
        || two_m2.abs() > two_j2
        || two_m3.abs() > two_j3
        || (two_j1 + two_m1) % 2 != 0
        || (two_j2 + two_m2) % 2 != 0
        || (two_j3 + two_m3) % 2 != 0
    {
        return SignedSqrt::zero();
    }

    // Integer factorial arguments, from the doubled inputs.
    let a1 = (two_j1 + two_j2 - two_j3) / 2;
    let a2 = (two_j1 - two_j2 + two_j3) / 2;
    let a3 = (-two_j1 + two_j2 + two_j3) / 2;
    let b = (two_j1 + two_j2 + two_j3) / 2 + 1;
    let jm1 = (two_j1 + two_m1) / 2;
    let jm1n = (two_j1 - two_m1) / 2;
    let jm2 = (two_j2 + two_m2) / 2;
    let jm2n = (two_j2 - two_m2) / 2;
    let jm3 = (two_j3 + two_m3) / 2;
    let jm3n = (two_j3 - two_m3) / 2;

    // Radicand Δ·F in prime-factored form.
    let mut radical = FactoredInt::default();
    for n in [a1, a2, a3, jm1, jm1n, jm2, jm2n, jm3, jm3n] {
        radical.mul_factorial(n, 1);
    }
    radical.mul_factorial(b, -1);

    // Racah sum over big rationals.
    let k_min = 0
        .max((two_j2 - two_j3 - two_m1) / 2)
        .max((two_j1 - two_j3 + two_m2) / 2);
    let k_max = a1.min(jm1n).min(jm2);
    if k_max < k_min {
        return SignedSqrt::zero();
    }
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial_rational(k)
            * factorial_rational(a1 - k)
            * factorial_rational(jm1n - k)
            * factorial_rational(jm2 - k)
            * factorial_rational((two_j3 - two_j2 + two_m1) / 2 + k)
            * factorial_rational((two_j3 - two_j1 - two_m2) / 2 + k);
        let term = denom.recip();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return SignedSqrt::zero();
    }

    // Overall phase (−1)^{j1 − j2 − m3}.
    let phase_exp = (two_j1 - two_j2 - two_m3) / 2;
    let (mut coeff, radicand) = radical.sqrt_split();
    coeff *= sum;
    if phase_exp.rem_euclid(2) == 1 {
        coeff = -coeff;
    }
    SignedSqrt { coefficient: coeff, radicand }
}

/// An exact sum of signed square roots, grouped by squarefree radicand.
#[derive(Debug, Clone, Default)]
pub struct RadicalSum {
    terms: BTreeMap<BigUint, BigRational>,
}

impl RadicalSum {
    pub fn new() -> Self {
        RadicalSum::default()
    }

    pub fn add(&mut self, value: &SignedSqrt) {
        if value.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(value.radicand.clone())
            .or_insert_with(BigRational::zero);
        *entry += &value.coefficient;
        if entry.is_zero() {
            self.terms.remove(&value.radicand);
        }
    }

    pub fn add_scaled(&mut self, scale: &BigRational, value: &SignedSqrt) {
        let scaled = SignedSqrt {
            coefficient: scale * &value.coefficient,
            radicand: value.radicand.clone(),
        };
        self.add(&scaled);
    }

    /// True exactly when the sum equals the given rational.
    pub fn equals_rational(&self, target: &BigRational) -> bool {
        match self.terms.len() {
            0 => target.is_zero(),
            1 => {
                let (radicand, coeff) = self.terms.iter().next().unwrap();
                radicand.is_one() && coeff == target
            }
            _ => false,
        }
    }
}

/// Exact check of the diagonal identity
/// (2J+1) Σ_m [j j J; m −m 0]² = 1.
pub fn diagonal_identity_holds(two_j: TwoJ, two_big_j: TwoJ) -> bool {
    let mut total = BigRational::zero();
    let mut two_m = -two_j;
    while two_m <= two_j {
        let s = three_j(two_j, two_j, two_big_j, two_m, -two_m, 0);
        total += s.squared();
        two_m += 2;
    }
    total *= BigRational::from_integer(BigInt::from(two_big_j + 1));
    total.is_one()
}

/// Exact check of the completeness identity
/// Σ_{J,M} (2J+1) [j j J; m2′ −m1′ −M][j j J; m1 −m2 −M] = δ_{m1,m2′} δ_{m2,m1′}.
pub fn completeness_identity_holds(
    two_j: TwoJ,
    two_m1: TwoJ,
    two_m2: TwoJ,
    two_m1p: TwoJ,
    two_m2p: TwoJ,
) -> bool {
    let mut sum = RadicalSum::new();
    // J runs over the integers 0..2j of the product decomposition.
    for two_big_j in (0..=(2 * two_j)).step_by(2) {
        let weight = BigRational::from_integer(BigInt::from(two_big_j + 1));
        let mut two_big_m = -two_big_j;
        while two_big_m <= two_big_j {
            let left = three_j(two_j, two_j, two_big_j, two_m2p, -two_m1p, -two_big_m);
            let right = three_j(two_j, two_j, two_big_j, two_m1, -two_m2, -two_big_m);
            sum.add_scaled(&weight, &left.mul(&right));
            two_big_m += 2;
        }
    }
    let target = if two_m1 == two_m2p && two_m2 == two_m1p {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    sum.equals_rational(&target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_symbol() {
        let s = three_j(0, 0, 0, 0, 0, 0);
        assert!(s.squared().is_one());
        assert!((s.to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn known_values() {
        // (1/2 1/2 1; 1/2 1/2 −1) = −1/√3.
        let s = three_j(1, 1, 2, 1, 1, -2);
        assert!((s.to_f64() + 1.0 / 3f64.sqrt()).abs() < 1e-15);
        // (1/2 1/2 0; 1/2 −1/2 0) = 1/√2.
        let s = three_j(1, 1, 0, 1, -1, 0);
        assert!((s.to_f64() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        // (1 1 2; 1 −1 0) = 1/√30.
        let s = three_j(2, 2, 4, 2, -2, 0);
        assert!((s.to_f64() - 1.0 / 30f64.sqrt()).abs() < 1e-15);
        // (1 1 0; 1 −1 0) = 1/√3.
        let s = three_j(2, 2, 0, 2, -2, 0);
        assert!((s.to_f64() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        // (1 1 1; 1 −1 0) = 1/√6.
        let s = three_j(2, 2, 2, 2, -2, 0);
        assert!((s.to_f64() - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        // (2 2 4; 2 −2 0) = 1/(3√70).
        let s = three_j(4, 4, 8, 4, -4, 0);
        assert!((s.to_f64() - 70f64.sqrt() / 210.0).abs() < 1e-15);
        // (1 1 1; 0 0 0) = 0 by symmetry.
        let s = three_j(2, 2, 2, 0, 0, 0);
        assert!(s.is_zero());
    }

    #[test]
    fn selection_rules_give_exact_zero() {
        // m-sum violation.
        assert!(three_j(2, 2, 2, 2, 0, 0).is_zero());
        // Triangle violation.
        assert!(three_j(1, 1, 4, 1, -1, 0).is_zero());
        // Parity violation: |m| > j.
        assert!(three_j(2, 2, 2, 4, -2, -2).is_zero());
        // Half-integer mismatch: j = 1/2 with integer m.
        assert!(three_j(1, 2, 1, 0, 0, 0).is_zero());
    }

    #[test]
    fn diagonal_identity_exact() {
        for two_j in 0..=4 {
            for two_big_j in (0..=2 * two_j).step_by(2) {
                assert!(
                    diagonal_identity_holds(two_j, two_big_j),
                    "2j={two_j} 2J={two_big_j}"
                );
            }
        }
    }

    #[test]
    fn completeness_identity_exact() {
        for two_j in [1i64, 2, 3, 4] {
            let ms: Vec<i64> = (-two_j..=two_j).step_by(2).collect();
            for &m1 in &ms {
                for &m2 in &ms {
                    for &m1p in &ms {
                        for &m2p in &ms {
                            assert!(
                                completeness_identity_holds(two_j, m1, m2, m1p, m2p),
                                "2j={two_j} m=({m1},{m2},{m1p},{m2p})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_gcd_stays_squarefree() {
        let a = three_j(2, 2, 4, 2, -2, 0);
        let b = three_j(2, 2, 4, 0, 0, 0);
        let p = a.mul(&b);
        // √30·√x products must keep an exact squarefree radicand.
        let sq = p.squared();
        let direct = a.squared() * b.squared();
        assert_eq!(sq, direct);
    }
}
