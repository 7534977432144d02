//! Dense integer polynomials, coefficients stored lowest degree first.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::numtheory::divisors;

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero()];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient of `a` by the monic polynomial `b`. Panics if the division leaves a remainder.
pub fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

fn cyclotomic_memo(e: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&e) {
        return p.clone();
    }
    // x^e - 1
    let mut acc = vec![BigInt::zero(); e as usize + 1];
    acc[0] = -BigInt::one();
    acc[e as usize] = BigInt::one();
    for d in divisors(e) {
        if d == e {
            continue;
        }
        let phi_d = cyclotomic_memo(d, memo);
        acc = poly_div_exact(&acc, &phi_d);
    }
    memo.insert(e, acc.clone());
    acc
}

/// The `e`-th cyclotomic polynomial Φ_e, obtained by dividing `x^e − 1` by Φ_d for
/// every proper divisor `d` of `e`.
pub fn cyclotomic_polynomial(e: u64) -> Vec<BigInt> {
    assert!(e >= 1, "cyclotomic polynomial needs a positive order");
    cyclotomic_memo(e, &mut HashMap::new())
}

/// Evaluate an integer polynomial at an integer point.
pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::euler_phi;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    /// Product of Φ_d over all divisors reproduces x^n − 1, independently of the
    /// division order used to build each factor.
    #[test]
    fn divisor_product_is_x_pow_minus_one() {
        for n in 1..=60u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(ints(&[1]), |acc, d| poly_mul(&acc, &cyclotomic_polynomial(d)));
            let mut expected = vec![BigInt::zero(); n as usize + 1];
            expected[0] = BigInt::from(-1);
            expected[n as usize] = BigInt::one();
            assert_eq!(prod, expected, "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn evaluation() {
        // Φ_6(2) = 4 - 2 + 1
        assert_eq!(eval(&cyclotomic_polynomial(6), &BigInt::from(2)), BigInt::from(3));
    }
}
