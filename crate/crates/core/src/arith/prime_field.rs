//! Arithmetic in GF(q) for a machine-sized prime q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::numtheory::{is_prime, mul_mod, pow_mod, primitive_root};
use super::ArithError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, ArithError> {
        if is_prime(q) {
            Ok(PrimeField { q })
        } else {
            Err(ArithError::NotPrime(q))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.q)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.q)
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.q), "zero has no inverse in GF({})", self.q);
        pow_mod(a, self.q - 2, self.q)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let q = BigInt::from(self.q);
        let r = ((a % &q) + &q) % &q;
        r.to_u64().expect("residue fits in u64")
    }

    pub fn primitive_root(&self) -> u64 {
        primitive_root(self.q)
    }

    pub fn element(&self, v: u64) -> Fp {
        Fp {
            value: v % self.q,
            modulus: self.q,
        }
    }
}

/// A single element of GF(q) carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn field(&self) -> PrimeField {
        PrimeField { q: self.modulus }
    }

    pub fn inv(&self) -> Fp {
        Fp {
            value: self.field().inv(self.value),
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, e: u64) -> Fp {
        Fp {
            value: self.field().pow(self.value, e),
            modulus: self.modulus,
        }
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "prime field mismatch");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

macro_rules! fp_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Fp {
            type Output = Fp;
            fn $method(self, rhs: Fp) -> Fp {
                self.check(&rhs);
                Fp {
                    value: self.field().$method(self.value, rhs.value),
                    modulus: self.modulus,
                }
            }
        }
    };
}

fp_binop!(Add, add);
fp_binop!(Sub, sub);
fp_binop!(Mul, mul);

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.field().neg(self.value),
            modulus: self.modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(PrimeField::new(9), Err(ArithError::NotPrime(9)));
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn field_operations() {
        let f = PrimeField::new(7).unwrap();
        let a = f.element(3);
        let b = f.element(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!((a * a.inv()).value(), 1);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_bigint(&BigInt::from(-15)), 6);
        for x in 1..7 {
            assert_eq!(f.pow(x, 6), 1);
        }
    }
}
