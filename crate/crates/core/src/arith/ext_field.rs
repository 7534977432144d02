//! GF(p^f) as GF(p)[x]/(g) for a monic irreducible `g` of degree `f`.
//!
//! Elements are coefficient vectors of length `f`, lowest degree first. Field
//! elements are indexed by reading the coefficients as base-`p` digits with the
//! constant term least significant; that index order is the scan order used
//! whenever a "smallest" element or polynomial is chosen.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::numtheory::{is_prime, prime_factors};
use super::ArithError;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    degree: usize,
    // monic, length degree + 1
    modulus: Vec<u64>,
}

fn digits(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

/// Remainder of `a` modulo the monic `b` over GF(p).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let c = r.pop().expect("nonempty");
        if c != 0 {
            let off = r.len() - db;
            for j in 0..db {
                r[off + j] = (r[off + j] + (p - c) * b[j] % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let f = poly.len() - 1;
    for d in 1..=f / 2 {
        for n in 0..p.pow(d as u32) {
            let mut divisor = digits(n, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtensionField {
    /// GF(p^f) defined by the smallest monic irreducible of degree `f` in scan order.
    pub fn new(p: u64, degree: usize) -> Result<Arc<Self>, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        assert!(degree >= 1, "extension degree must be positive");
        let count = p.pow(degree as u32);
        for n in 0..count {
            let mut poly = digits(n, p, degree);
            poly.push(1);
            if is_irreducible(&poly, p) {
                return Ok(Arc::new(ExtensionField {
                    p,
                    degree,
                    modulus: poly,
                }));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(ArithError::Reducible(p));
        }
        if !is_irreducible(&modulus, p) {
            return Err(ArithError::Reducible(p));
        }
        Ok(Arc::new(ExtensionField {
            p,
            degree: modulus.len() - 1,
            modulus,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    pub fn zero(self: &Arc<Self>) -> ExtElement {
        self.from_index(0)
    }

    pub fn one(self: &Arc<Self>) -> ExtElement {
        self.from_index(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> ExtElement {
        self.from_index(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_index(self: &Arc<Self>, n: u64) -> ExtElement {
        ExtElement {
            field: self.clone(),
            coeffs: digits(n, self.p, self.degree),
        }
    }

    /// The element `x` of GF(p)[x]/(g).
    pub fn generator_x(self: &Arc<Self>) -> ExtElement {
        let mut x = vec![0, 1];
        x.resize(self.degree + 1, 0);
        ExtElement {
            field: self.clone(),
            coeffs: poly_rem(&x, &self.modulus, self.p),
        }
    }

    /// First element in index order that generates the multiplicative group.
    pub fn smallest_generator(self: &Arc<Self>) -> ExtElement {
        let target = self.size() - 1;
        (1..self.size())
            .map(|n| self.from_index(n))
            .find(|g| g.multiplicative_order() == target)
            .expect("finite fields have cyclic unit groups")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    field: Arc<ExtensionField>,
    coeffs: Vec<u64>,
}

impl ExtElement {
    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.field.p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn pow(&self, mut e: u64) -> ExtElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> ExtElement {
        assert!(!self.is_zero(), "zero has no inverse");
        self.pow(self.field.size() - 2)
    }

    /// Order in the multiplicative group; the element must be nonzero.
    pub fn multiplicative_order(&self) -> u64 {
        assert!(!self.is_zero(), "zero has no multiplicative order");
        let n = self.field.size() - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.pow(ord / r).is_one() {
                ord /= r;
            }
        }
        ord
    }

    fn check(&self, other: &ExtElement) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "extension field mismatch"
        );
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Add for &ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: &ExtElement) -> ExtElement {
        self.check(rhs);
        let p = self.field.p;
        ExtElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }
}

impl Neg for &ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        let p = self.field.p;
        ExtElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| (p - a) % p).collect(),
        }
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: &ExtElement) -> ExtElement {
        self + &(-rhs)
    }
}

impl Mul for &ExtElement {
    type Output = ExtElement;
    fn mul(self, rhs: &ExtElement) -> ExtElement {
        self.check(rhs);
        let p = self.field.p;
        let d = self.field.degree;
        let mut raw = vec![0u64; 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                raw[i + j] = (raw[i + j] + a * b) % p;
            }
        }
        let mut coeffs = poly_rem(&raw, &self.field.modulus, p);
        coeffs.resize(d, 0);
        ExtElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}
