//! Elements of the cyclotomic field Q(ε_e) in the power basis 1, ε, …, ε^{φ(e)−1}.
//!
//! Values are kept reduced modulo Φ_e at all times, so two values are equal exactly
//! when their coefficient vectors are equal. The ring of integers of Q(ε_e) is
//! Z[ε_e], hence a value is an algebraic integer iff every coefficient is an integer.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::cyclotomic_polynomial;
use super::{rational_from_int, ArithError, Rational};

/// Reduction data for one cyclotomic order: Φ_e and the canonical form of every power ε^j.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u64,
    degree: usize,
    minimal_poly: Vec<BigInt>,
    // powers[j] = ε^j as sparse (basis index, coefficient) pairs, 0 <= j < e
    powers: Vec<Vec<(usize, i64)>>,
}

impl CyclotomicField {
    fn build(order: u64) -> Self {
        let minimal_poly = cyclotomic_polynomial(order);
        let degree = minimal_poly.len() - 1;
        let phi: Vec<i64> = minimal_poly
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
            .collect();
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
            // multiply by x and reduce the overflow term with the monic Φ_e
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = c
                        .checked_sub(top.checked_mul(phi[i]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        CyclotomicField {
            order,
            degree,
            minimal_poly,
            powers,
        }
    }

    /// Shared field data for order `e`.
    pub fn get(order: u64) -> Arc<CyclotomicField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic field cache poisoned");
        guard
            .entry(order)
            .or_insert_with(|| Arc::new(CyclotomicField::build(order)))
            .clone()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(e), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_poly(&self) -> &[BigInt] {
        &self.minimal_poly
    }

    fn power(&self, j: u64) -> &[(usize, i64)] {
        &self.powers[(j % self.order) as usize]
    }
}

#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

/// ε_e^j in canonical form.
pub fn root_power(e: u64, j: i64) -> Cyclotomic {
    let field = CyclotomicField::get(e);
    let j = j.rem_euclid(e as i64) as u64;
    let mut coeffs = vec![Rational::zero(); field.degree];
    for &(i, c) in field.power(j) {
        coeffs[i] = rational_from_int(c);
    }
    Cyclotomic { field, coeffs }
}

impl Cyclotomic {
    pub fn zero(e: u64) -> Self {
        let field = CyclotomicField::get(e);
        let coeffs = vec![Rational::zero(); field.degree];
        Cyclotomic { field, coeffs }
    }

    pub fn one(e: u64) -> Self {
        Self::from_rational(e, Rational::one())
    }

    pub fn from_rational(e: u64, r: Rational) -> Self {
        let mut z = Self::zero(e);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer<T: Into<BigInt>>(e: u64, n: T) -> Self {
        Self::from_rational(e, rational_from_int(n))
    }

    /// Build from a coefficient vector that must already have length φ(e).
    pub fn from_coeffs(e: u64, coeffs: Vec<Rational>) -> Result<Self, ArithError> {
        let field = CyclotomicField::get(e);
        if coeffs.len() != field.degree {
            return Err(ArithError::NonCanonical(format!(
                "order {e} needs {} coefficients, got {}",
                field.degree,
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { field, coeffs })
    }

    /// Σ_t mult[t]·ε^t for t < e.
    pub fn from_exponent_multiplicities(e: u64, mult: &[u64]) -> Self {
        let field = CyclotomicField::get(e);
        let mut acc = vec![BigInt::zero(); field.degree];
        for (t, &m) in mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for &(i, c) in field.power(t as u64) {
                acc[i] += BigInt::from(m) * c;
            }
        }
        let coeffs = acc.into_iter().map(Rational::from_integer).collect();
        Cyclotomic { field, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Algebraic integrality: every canonical coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn as_rational_integer(&self) -> Result<BigInt, ArithError> {
        match self.as_rational() {
            Some(r) if r.is_integer() => Ok(r.to_integer()),
            _ => Err(ArithError::NotRationalInteger {
                coeffs: self.coeff_string(),
            }),
        }
    }

    fn coeff_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}] over E({})", parts.join(", "), self.order())
    }

    fn check_order(&self, other: &Self) -> Result<(), ArithError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(ArithError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_order(other)?;
        let d = self.field.degree;
        if self.is_rational() {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<Rational> = raw.drain(..d).collect();
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, m) in self.field.power((d + k) as u64) {
                coeffs[i] += &c * rational_from_int(m);
            }
        }
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Cyclotomic::one(self.order());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Galois automorphism ε ↦ ε^k; `k` must be coprime to the order.
    pub fn galois(&self, k: i64) -> Self {
        let e = self.order();
        let k = k.rem_euclid(e as i64) as u64;
        assert!(
            e == 1 || k.gcd(&e) == 1,
            "exponent {k} is not coprime to {e}"
        );
        let mut coeffs = vec![Rational::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(j, m) in self.field.power(i as u64 * k) {
                coeffs[j] += c * rational_from_int(m);
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Complex conjugation, ε ↦ ε^{-1}.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// Re-express in Q(ε_f) for a multiple `f` of the current order.
    pub fn embed(&self, f: u64) -> Result<Self, ArithError> {
        let e = self.order();
        if !f.is_multiple_of(e) {
            return Err(ArithError::NotEmbeddable { from: e, to: f });
        }
        let step = (f / e) as i64;
        let mut acc = Cyclotomic::zero(f);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &root_power(f, i as i64 * step).scale(c);
            }
        }
        Ok(acc)
    }

    /// Evaluate an integer polynomial at this value.
    pub fn eval_poly(&self, poly: &[BigInt]) -> Self {
        poly.iter().rev().fold(Cyclotomic::zero(self.order()), |acc, c| {
            &(&acc * self) + &Cyclotomic::from_integer(self.order(), c.clone())
        })
    }

    pub fn to_repr(&self) -> CyclotomicRepr {
        let num_of = |c: &Rational| super::bigint_to_json(c.numer());
        let den_of = |c: &Rational| super::bigint_to_json(c.denom());
        CyclotomicRepr {
            e: self.order(),
            num: self.coeffs.iter().map(num_of).collect(),
            den: self.coeffs.iter().map(den_of).collect(),
        }
    }
}


fn parse_json_int(n: &serde_json::Number) -> Result<BigInt, ArithError> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| ArithError::NonCanonical(format!("{n} is not an integer")))
}

/// Wire form: `{ "e": int, "num": [int…], "den": [int…] }` with φ(e) entries each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclotomicRepr {
    pub e: u64,
    pub num: Vec<serde_json::Number>,
    pub den: Vec<serde_json::Number>,
}

impl TryFrom<CyclotomicRepr> for Cyclotomic {
    type Error = ArithError;

    /// Accepts only canonical input: lowest-terms fractions with positive
    /// denominators and exactly φ(e) coefficients.
    fn try_from(repr: CyclotomicRepr) -> Result<Self, ArithError> {
        if repr.e == 0 {
            return Err(ArithError::NonCanonical("order 0".into()));
        }
        if repr.num.len() != repr.den.len() {
            return Err(ArithError::NonCanonical(format!(
                "{} numerators but {} denominators",
                repr.num.len(),
                repr.den.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(repr.num.len());
        for (n, d) in repr.num.iter().zip(&repr.den) {
            let n = parse_json_int(n)?;
            let d = parse_json_int(d)?;
            if !d.is_positive() {
                return Err(ArithError::NonCanonical(format!("denominator {d}")));
            }
            if !n.gcd(&d).is_one() {
                return Err(ArithError::NonCanonical(format!("{n}/{d} not in lowest terms")));
            }
            coeffs.push(Rational::new_raw(n, d));
        }
        Cyclotomic::from_coeffs(repr.e, coeffs)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        Cyclotomic::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

/// Order first, then lexicographic on canonical coefficients.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

/// GAP-style rendering, e.g. `-1 + E(6)` or `2*E(5)^2 - E(5)^3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.order();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => format!("E({e})"),
                _ => format!("E({e})^{i}"),
            };
            if root.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{mag}*{root}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}
