//! Exact arithmetic: rationals, prime and extension finite fields, and
//! cyclotomic numbers in canonical power-basis form.

pub mod cyclotomic;
pub mod ext_field;
pub mod numtheory;
pub mod poly;
pub mod prime_field;
pub mod reduction;

use num_bigint::BigInt;
use thiserror::Error;

pub use cyclotomic::{root_power, Cyclotomic, CyclotomicField, CyclotomicRepr};
pub use ext_field::{ExtElement, ExtensionField};
pub use poly::cyclotomic_polynomial;
pub use prime_field::{Fp, PrimeField};
pub use reduction::{build_reduction, ReductionMap};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational_from_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("Q(E({from})) does not embed in Q(E({to}))")]
    NotEmbeddable { from: u64, to: u64 },
    #[error("value is not a rational integer (coefficients {coeffs})")]
    NotRationalInteger { coeffs: String },
    #[error("value has non-integral coefficients {coeffs}")]
    NonIntegral { coeffs: String },
    #[error("non-canonical cyclotomic: {0}")]
    NonCanonical(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible over GF({0})")]
    Reducible(u64),
    #[error("invalid reduction root: {0}")]
    InvalidRoot(String),
}

/// An integer as an exact JSON number (no float rounding).
pub fn bigint_to_json(n: &BigInt) -> serde_json::Number {
    use std::str::FromStr;
    serde_json::Number::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

/// `serialize_with` helpers for big integers in reports.
pub mod serde_big {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::{Serialize, Serializer};

    pub fn one<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        super::bigint_to_json(n).serialize(s)
    }

    pub fn many<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&super::bigint_to_json(n))?;
        }
        seq.end()
    }
}
