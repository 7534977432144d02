//! Class sizes from trivial-character multiplicities, and p-defect-zero classes
//! detected through γ_n / δ_n residues.
//!
//! With `a_i` the number of classes of size `i` and `C_i = |G|/i`,
//! `[1_G, πⁿ] = Σ_i a_i C_i^{n−1}`. The `C_i` are distinct, so the first `d`
//! equations (one unknown per divisor of |G|) form a non-singular Vandermonde
//! system with a unique exact solution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::numtheory::{divisors, is_prime, p_part};
use crate::arith::{rational_from_int, Rational};
use crate::chartab::CharacterTable;
use crate::classfn::{delta, gamma, ClassFnError};
use crate::group::{ClassStructure, HasClasses};

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("need at least {needed} terms for order {order}, got {got}")]
    TooShort { needed: usize, got: usize, order: u64 },
    #[error("sequence is inconsistent with a group of order {order}: {reason}")]
    Inconsistent { order: u64, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the defect criterion needs n >= 2, got {0}")]
    PowerTooSmall(u32),
    #[error(transparent)]
    ClassFn(#[from] ClassFnError),
}

/// Number of classes of each size (sizes with no classes are omitted).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SizeSpectrum(pub BTreeMap<u64, u64>);

impl SizeSpectrum {
    pub fn from_sizes<'a>(sizes: impl IntoIterator<Item = &'a u64>) -> Self {
        let mut map = BTreeMap::new();
        for &s in sizes {
            *map.entry(s).or_insert(0) += 1;
        }
        SizeSpectrum(map)
    }

    /// Σ count·size.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|(s, c)| s * c).sum()
    }

    pub fn class_count(&self) -> u64 {
        self.0.values().sum()
    }
}

/// Spectrum of all classes.
pub fn class_size_spectrum(classes: &ClassStructure) -> SizeSpectrum {
    SizeSpectrum::from_sizes(&classes.sizes)
}

/// Spectrum of the real classes only.
pub fn real_class_size_spectrum(classes: &ClassStructure) -> SizeSpectrum {
    SizeSpectrum::from_sizes(
        classes.sizes.iter().zip(&classes.real).filter(|(_, &r)| r).map(|(s, _)| s),
    )
}

/// γ_1(1_G), …, γ_len(1_G).
pub fn gamma_sequence(table: &CharacterTable, len: u32) -> Result<Vec<BigInt>, ClassFnError> {
    (1..=len).map(|n| gamma(n, table.row(0), table)).collect()
}

/// δ_1(1_G), …, δ_len(1_G).
pub fn delta_sequence(table: &CharacterTable, len: u32) -> Result<Vec<BigInt>, ClassFnError> {
    (1..=len).map(|n| delta(n, table.row(0), table)).collect()
}

/// Number of equations needed for a group of this order.
pub fn required_terms(order: u64) -> usize {
    divisors(order).len()
}

/// Exact Gaussian elimination on a square system; `None` if singular.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        // pivot: largest |numerator·denominator| keeps intermediate sizes tame
        let weight = |r: &Rational| (r.numer() * r.denom()).abs();
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| weight(&a[x][col]).cmp(&weight(&a[y][col])))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn recover(seq: &[BigInt], order: u64, real: bool) -> Result<SizeSpectrum, DualityError> {
    let sizes = divisors(order);
    let d = sizes.len();
    if seq.len() < d {
        return Err(DualityError::TooShort {
            needed: d,
            got: seq.len(),
            order,
        });
    }
    let inconsistent = |reason: String| DualityError::Inconsistent { order, reason };
    let bases: Vec<Rational> = sizes.iter().map(|&i| rational_from_int(order / i)).collect();
    let row = |n: usize| -> Vec<Rational> { bases.iter().map(|c| c.pow(n as i32)).collect() };
    let matrix: Vec<Vec<Rational>> = (0..d).map(row).collect();
    let rhs: Vec<Rational> = seq[..d].iter().map(|x| Rational::from_integer(x.clone())).collect();
    let solution = solve_exact(matrix, rhs).ok_or_else(|| inconsistent("singular system".into()))?;

    for (n, value) in seq.iter().enumerate().skip(d) {
        let predicted: Rational = row(n).iter().zip(&solution).map(|(c, a)| c * a).sum();
        if predicted != Rational::from_integer(value.clone()) {
            return Err(inconsistent(format!("term {} is {value}, expected {predicted}", n + 1)));
        }
    }

    let mut spectrum = BTreeMap::new();
    for (&size, count) in sizes.iter().zip(&solution) {
        if !count.is_integer() || count.is_negative() {
            return Err(inconsistent(format!("{count} classes of size {size}")));
        }
        let count = count
            .to_integer()
            .to_u64()
            .ok_or_else(|| inconsistent("class count overflow".into()))?;
        if count > 0 {
            spectrum.insert(size, count);
        }
    }
    let spectrum = SizeSpectrum(spectrum);
    let total = spectrum.total();
    if (!real && total != order) || (real && total > order) {
        return Err(inconsistent(format!("class sizes add up to {total}")));
    }
    if spectrum.0.get(&1).copied().unwrap_or(0) == 0 {
        return Err(inconsistent("no class of size 1".into()));
    }
    Ok(spectrum)
}

/// Solve `Σ_i a_i (|G|/i)^{n−1} = seq[n−1]` over divisors `i` of |G|; any terms
/// beyond the first `d(|G|)` are checked against the solution.
pub fn recover_class_sizes(gamma_seq: &[BigInt], order: u64) -> Result<SizeSpectrum, DualityError> {
    recover(gamma_seq, order, false)
}

/// As [`recover_class_sizes`] for the δ-sequence; real classes need not cover G.
pub fn recover_real_class_sizes(delta_seq: &[BigInt], order: u64) -> Result<SizeSpectrum, DualityError> {
    recover(delta_seq, order, true)
}

/// Classes with |K|_p = |G|_p, i.e. centralizer order prime to p.
pub fn defect_zero_direct(classes: &impl HasClasses, p: u64) -> Vec<usize> {
    let c = classes.classes();
    (0..c.class_count())
        .filter(|&i| p_part(c.sizes[i], p) == p_part(c.order, p))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub p: u64,
    pub n: u32,
    pub real: bool,
    /// γ_n(φ) (or δ_n(φ)) for each irreducible φ, in table order.
    #[serde(serialize_with = "crate::arith::serde_big::many")]
    pub values: Vec<BigInt>,
    pub residues: Vec<u64>,
    /// Defect-zero classes, restricted to real classes when `real` is set.
    pub direct_classes: Vec<usize>,
    /// Some residue is nonzero.
    pub character_side: bool,
    /// Some class in `direct_classes`.
    pub direct_side: bool,
}

impl DefectReport {
    pub fn verdicts_agree(&self) -> bool {
        self.character_side == self.direct_side
    }
}

/// γ_n(φ) (or δ_n(φ)) and its residue mod p for every φ, for any n ≥ 1.
pub fn multiplicity_residues(
    table: &CharacterTable,
    p: u64,
    n: u32,
    real: bool,
) -> Result<Vec<(BigInt, u64)>, DualityError> {
    if !is_prime(p) {
        return Err(DualityError::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    table
        .rows()
        .iter()
        .map(|phi| {
            let v = if real { delta(n, phi, table)? } else { gamma(n, phi, table)? };
            let r = ((&v % &modulus) + &modulus) % &modulus;
            Ok((v, r.to_u64().expect("residue below p")))
        })
        .collect()
}

/// Both sides of the defect-zero criterion for prime `p` and `n ≥ 2`.
pub fn defect_zero_by_characters(
    table: &CharacterTable,
    p: u64,
    n: u32,
    real: bool,
) -> Result<DefectReport, DualityError> {
    if n < 2 {
        return Err(DualityError::PowerTooSmall(n));
    }
    let pairs = multiplicity_residues(table, p, n, real)?;
    let layout = table.classes();
    let direct_classes: Vec<usize> = defect_zero_direct(table, p)
        .into_iter()
        .filter(|&i| !real || layout.real[i])
        .collect();
    let (values, residues): (Vec<BigInt>, Vec<u64>) = pairs.into_iter().unzip();
    Ok(DefectReport {
        p,
        n,
        real,
        character_side: residues.iter().any(|&r| r != 0),
        direct_side: !direct_classes.is_empty(),
        values,
        residues,
        direct_classes,
    })
}
