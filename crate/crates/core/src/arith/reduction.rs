//! Reduction of cyclotomic integers modulo a maximal ideal above a prime `p`.
//!
//! Write `e = p^a · m` with `p ∤ m`. Modulo `p`, Φ_e factors as Φ_m^{φ(p^a)} and the
//! roots of Φ_m in an algebraic closure are the primitive `m`-th roots of unity,
//! which live in GF(p^f) with `f` the order of `p` modulo `m`. Choosing one such root
//! η fixes a ring homomorphism Z[ε_e] → GF(p^f), ε ↦ η, whose kernel is a maximal
//! ideal containing `p`.

use std::sync::Arc;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::ext_field::{ExtElement, ExtensionField};
use super::numtheory::{is_prime, multiplicative_order, p_free_part};
use super::ArithError;

#[derive(Debug, Clone)]
pub struct ReductionMap {
    order: u64,
    p: u64,
    p_free: u64,
    residue_degree: usize,
    field: Arc<ExtensionField>,
    root: ExtElement,
    // root^i for i < φ(e)
    root_powers: Vec<ExtElement>,
}

/// Deterministic reduction: the root is the first power of the smallest
/// multiplicative generator of GF(p^f) that has exact order `m` and kills Φ_e.
pub fn build_reduction(e: u64, p: u64) -> Result<ReductionMap, ArithError> {
    let roots = ReductionMap::candidate_roots(e, p)?;
    let root = roots
        .into_iter()
        .next()
        .expect("primitive m-th roots exist in GF(p^f)");
    ReductionMap::with_root(e, p, root)
}

impl ReductionMap {
    fn residue_field(e: u64, p: u64) -> Result<(u64, Arc<ExtensionField>), ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        let m = p_free_part(e, p);
        let f = multiplicative_order(p % m, m) as usize;
        Ok((m, ExtensionField::new(p, f)?))
    }

    /// Every admissible root, in scan order over powers of the smallest generator.
    pub fn candidate_roots(e: u64, p: u64) -> Result<Vec<ExtElement>, ArithError> {
        let (m, field) = Self::residue_field(e, p)?;
        let phi = CyclotomicField::get(e);
        let g = field.smallest_generator();
        let mut out = Vec::new();
        let mut x = g.clone();
        for _ in 1..field.size() {
            if x.multiplicative_order() == m && eval_int_poly(phi.minimal_poly(), &x).is_zero() {
                out.push(x.clone());
            }
            x = &x * &g;
        }
        Ok(out)
    }

    /// A map with an explicitly chosen root, validated against Φ_e and its order.
    pub fn with_root(e: u64, p: u64, root: ExtElement) -> Result<Self, ArithError> {
        let (m, field) = Self::residue_field(e, p)?;
        if **root.field() != *field {
            return Err(ArithError::InvalidRoot(
                "root lives in a different residue field".into(),
            ));
        }
        if root.is_zero() || root.multiplicative_order() != m {
            return Err(ArithError::InvalidRoot(format!("{root} does not have order {m}")));
        }
        let phi = CyclotomicField::get(e);
        if !eval_int_poly(phi.minimal_poly(), &root).is_zero() {
            return Err(ArithError::InvalidRoot(format!("{root} is not a root of Phi_{e}")));
        }
        let mut root_powers = Vec::with_capacity(phi.degree());
        let mut acc = field.one();
        for _ in 0..phi.degree() {
            root_powers.push(acc.clone());
            acc = &acc * &root;
        }
        Ok(ReductionMap {
            order: e,
            p,
            p_free: m,
            residue_degree: field.degree(),
            field,
            root,
            root_powers,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn p_free_part(&self) -> u64 {
        self.p_free
    }

    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn root(&self) -> &ExtElement {
        &self.root
    }

    /// Image of an integral cyclotomic under ε ↦ η, coefficients reduced mod p.
    pub fn reduce(&self, z: &Cyclotomic) -> Result<ExtElement, ArithError> {
        if z.order() != self.order {
            return Err(ArithError::OrderMismatch {
                left: z.order(),
                right: self.order,
            });
        }
        if !z.is_integral() {
            let parts: Vec<String> = z.coeffs().iter().map(|c| c.to_string()).collect();
            return Err(ArithError::NonIntegral {
                coeffs: parts.join(", "),
            });
        }
        let p = num_bigint::BigInt::from(self.p);
        let mut acc = self.field.zero();
        for (c, pw) in z.coeffs().iter().zip(&self.root_powers) {
            let r = ((c.numer() % &p) + &p) % &p;
            let r: i64 = r.try_into().expect("residue fits in i64");
            if r != 0 {
                acc = &acc + &(&self.field.from_int(r) * pw);
            }
        }
        Ok(acc)
    }
}

fn eval_int_poly(poly: &[num_bigint::BigInt], x: &ExtElement) -> ExtElement {
    let field = x.field().clone();
    let p = num_bigint::BigInt::from(field.characteristic());
    poly.iter().rev().fold(field.zero(), |acc, c| {
        let r: i64 = (((c % &p) + &p) % &p).try_into().expect("small residue");
        &(&acc * x) + &field.from_int(r)
    })
}
