//! Congruences modulo a maximal ideal M above p: p-element detection,
//! principal-block membership through central characters, and the
//! principal-block analog of the commutator-count criterion, which fails for S₃.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::numtheory::{is_prime, p_part};
use crate::arith::{serde_big, ArithError, Cyclotomic, Rational};
use crate::chartab::{Character, CharacterTable};
use crate::group::HasClasses;
use crate::classfn::{inner, pi_character, ClassFnError, ClassFunction};
use crate::duality::defect_zero_direct;

pub use crate::arith::{build_reduction, ReductionMap};

/// Largest class count for which the literal quadruple sum is evaluated.
pub const NAIVE_CLASS_CAP: usize = 3;

#[derive(Debug, Error)]
pub enum BlockError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    ClassFn(#[from] ClassFnError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("reduction map is for E({map}) but the table lives in E({table})")]
    MapOrder { map: u64, table: u64 },
    #[error("class {class} is out of range")]
    ClassIndex { class: usize },
    #[error("character {index} is out of range")]
    CharacterIndex { index: usize },
    #[error("block is empty")]
    EmptyBlock,
    #[error(
        "p-element test disagrees at class {class} (p = {p}): congruence says {congruence}, element order says {direct}"
    )]
    PElementMismatch {
        class: usize,
        p: u64,
        congruence: bool,
        direct: bool,
    },
    #[error("central character of row {character} at class {class} is not integral: {value}")]
    NonIntegral {
        character: usize,
        class: usize,
        value: String,
    },
    #[error("naive expansion needs at most {cap} classes, table has {classes}")]
    NaiveCap { cap: usize, classes: usize },
}

fn check_map(table: &CharacterTable, map: &ReductionMap) -> Result<(), BlockError> {
    if map.order() != table.exponent() {
        return Err(BlockError::MapOrder {
            map: map.order(),
            table: table.exponent(),
        });
    }
    Ok(())
}

fn check_class(table: &CharacterTable, class: usize) -> Result<(), BlockError> {
    if class >= table.class_count() {
        return Err(BlockError::ClassIndex { class });
    }
    Ok(())
}

/// Direct test: the class representative has p-power order.
pub fn is_p_element_direct(table: &CharacterTable, class: usize, p: u64) -> bool {
    let mut n = table.classes().rep_orders[class];
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// χ(g) ≡ χ(1) mod M for every χ, cross-checked against the element order.
pub fn is_p_element(table: &CharacterTable, class: usize, map: &ReductionMap) -> Result<bool, BlockError> {
    check_map(table, map)?;
    check_class(table, class)?;
    let congruence = p_element_congruence(table, class, map)?;
    let direct = is_p_element_direct(table, class, map.prime());
    if congruence != direct {
        return Err(BlockError::PElementMismatch {
            class,
            p: map.prime(),
            congruence,
            direct,
        });
    }
    Ok(congruence)
}

fn p_element_congruence(table: &CharacterTable, class: usize, map: &ReductionMap) -> Result<bool, BlockError> {
    for chi in table.rows() {
        let diff = chi.value(class) - chi.value(0);
        if !map.reduce(&diff)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of the p-element criterion for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PElementRow {
    pub class: usize,
    pub rep_order: u64,
    pub congruence: bool,
    pub direct: bool,
}

/// The p-element test for every class; disagreement is reported, not raised.
pub fn p_element_table(table: &CharacterTable, map: &ReductionMap) -> Result<Vec<PElementRow>, BlockError> {
    check_map(table, map)?;
    (0..table.class_count())
        .map(|class| {
            Ok(PElementRow {
                class,
                rep_order: table.classes().rep_orders[class],
                congruence: p_element_congruence(table, class, map)?,
                direct: is_p_element_direct(table, class, map.prime()),
            })
        })
        .collect()
}

/// ω_χ(K) = |K|·χ(g_K)/χ(1), which must be an algebraic integer.
pub fn central_character(table: &CharacterTable, character: usize, class: usize) -> Result<Cyclotomic, BlockError> {
    check_class(table, class)?;
    let chi = table
        .rows()
        .get(character)
        .ok_or(BlockError::CharacterIndex { index: character })?;
    let size = table.classes().sizes[class];
    let factor = Rational::new(BigInt::from(size), BigInt::from(chi.degree()));
    let w = chi.value(class).scale(&factor);
    if !w.is_integral() {
        return Err(BlockError::NonIntegral {
            character,
            class,
            value: w.to_string(),
        });
    }
    Ok(w)
}

/// A failed principal-block congruence: ω_χ(K) − |K| reduces to `residue` ≠ 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub character: usize,
    pub class: usize,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub p: u64,
    pub members: Vec<bool>,
    pub witnesses: Vec<Witness>,
}

impl BlockReport {
    pub fn member_indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }
}

/// χ ∈ B₀ iff ω_χ(K) ≡ |K| mod M for every class K.
pub fn principal_block_members(table: &CharacterTable, map: &ReductionMap) -> Result<BlockReport, BlockError> {
    check_map(table, map)?;
    let e = table.exponent();
    let mut members = Vec::with_capacity(table.rows().len());
    let mut witnesses = Vec::new();
    for character in 0..table.rows().len() {
        let mut member = true;
        for class in 0..table.class_count() {
            let w = central_character(table, character, class)?;
            let size = Cyclotomic::from_integer(e, table.classes().sizes[class]);
            let r = map.reduce(&(&w - &size))?;
            if !r.is_zero() {
                member = false;
                witnesses.push(Witness {
                    character,
                    class,
                    residue: r.to_string(),
                });
            }
        }
        members.push(member);
    }
    debug_assert!(members[0], "trivial character is always in B0");
    Ok(BlockReport {
        p: map.prime(),
        members,
        witnesses,
    })
}

fn block_sum(table: &CharacterTable, block: &[usize]) -> Result<ClassFunction, BlockError> {
    let (&first, rest) = block.split_first().ok_or(BlockError::EmptyBlock)?;
    let row = |i: usize| -> Result<&Character, BlockError> {
        table.rows().get(i).ok_or(BlockError::CharacterIndex { index: i })
    };
    let mut acc = ClassFunction::from_character(table, row(first)?);
    for &i in rest {
        acc = acc.add(&ClassFunction::from_character(table, row(i)?))?;
    }
    Ok(acc)
}

fn integer(z: Cyclotomic) -> Result<BigInt, BlockError> {
    Ok(z.as_rational_integer()?)
}

/// γ(ψ) = Σ_{χ₁,χ₂,χ₃ ∈ Irr(G), φ ∈ block} [ψ, |χ₁χ₂|²|χ₃|²φ], evaluated as
/// [ψ, π³·Σ_{φ∈block} φ] since Σ_χ |χ|² = π pointwise.
pub fn strunkov_analog_gamma(table: &CharacterTable, psi: &Character, block: &[usize]) -> Result<BigInt, BlockError> {
    let sum = block_sum(table, block)?;
    let theta = pi_character(table).power(3).mul(&sum)?;
    integer(inner(&ClassFunction::from_character(table, psi), &theta)?)
}

/// The literal quadruple sum, for tables with at most [`NAIVE_CLASS_CAP`] classes.
pub fn strunkov_analog_gamma_naive(
    table: &CharacterTable,
    psi: &Character,
    block: &[usize],
) -> Result<BigInt, BlockError> {
    if table.class_count() > NAIVE_CLASS_CAP {
        return Err(BlockError::NaiveCap {
            cap: NAIVE_CLASS_CAP,
            classes: table.class_count(),
        });
    }
    if block.is_empty() {
        return Err(BlockError::EmptyBlock);
    }
    let psi = ClassFunction::from_character(table, psi);
    let irr: Vec<ClassFunction> = table
        .rows()
        .iter()
        .map(|c| ClassFunction::from_character(table, c))
        .collect();
    let abs2 = |f: &ClassFunction| f.mul(&f.conjugate());
    let mut total = BigInt::zero();
    for x1 in &irr {
        for x2 in &irr {
            let a = abs2(&x1.mul(x2)?)?;
            for x3 in &irr {
                let b = a.mul(&abs2(x3)?)?;
                for &i in block {
                    let phi = irr.get(i).ok_or(BlockError::CharacterIndex { index: i })?;
                    total += integer(inner(&psi, &b.mul(phi)?)?)?;
                }
            }
        }
    }
    Ok(total)
}

/// γ(ψ) over the principal block for every ψ, in table order.
pub fn principal_block_gammas(table: &CharacterTable, map: &ReductionMap) -> Result<(BlockReport, Vec<BigInt>), BlockError> {
    let report = principal_block_members(table, map)?;
    let block = report.member_indices();
    let gammas = table
        .rows()
        .iter()
        .map(|psi| strunkov_analog_gamma(table, psi, &block))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((report, gammas))
}

/// One candidate divisor N for the analog "a defect-zero class exists iff
/// p·N ∤ γ(ψ) for some ψ".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizerCheck {
    pub name: &'static str,
    /// p·N
    pub modulus: u64,
    pub divisible: Vec<bool>,
    /// Some γ(ψ) is not divisible by p·N.
    pub some_not_divisible: bool,
    /// `some_not_divisible` agrees with the existence of a defect-zero class.
    pub matches_defect_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltNormalizerReport {
    pub p: u64,
    pub principal_block: Vec<usize>,
    #[serde(serialize_with = "serde_big::many")]
    pub gammas: Vec<BigInt>,
    /// |G|_p
    pub group_p_part: u64,
    /// Σ_{φ ∈ B₀} φ(1)²
    pub block_degree_square_sum: u64,
    pub block_degree_square_sum_p_part: u64,
    pub defect_zero_classes: Vec<usize>,
    pub checks: Vec<NormalizerCheck>,
}

/// γ(ψ) over B₀ against p·|G|_p, p·Σφ(1)² and p·(Σφ(1)²)_p. Nothing is asserted.
pub fn alt_normalizer_report(table: &CharacterTable, map: &ReductionMap) -> Result<AltNormalizerReport, BlockError> {
    let p = map.prime();
    if !is_prime(p) {
        return Err(BlockError::NotPrime(p));
    }
    let (report, gammas) = principal_block_gammas(table, map)?;
    let principal_block = report.member_indices();
    let group_p_part = p_part(table.order(), p);
    let block_degree_square_sum: u64 = principal_block
        .iter()
        .map(|&i| table.row(i).degree().pow(2))
        .sum();
    let block_degree_square_sum_p_part = p_part(block_degree_square_sum, p);
    let defect_zero_classes = defect_zero_direct(table, p);
    let has_defect_zero = !defect_zero_classes.is_empty();
    let checks = [
        ("p*|G|_p", group_p_part),
        ("p*sum_B0 phi(1)^2", block_degree_square_sum),
        ("p*(sum_B0 phi(1)^2)_p", block_degree_square_sum_p_part),
    ]
    .into_iter()
    .map(|(name, n)| {
        let modulus = p * n;
        let m = BigInt::from(modulus);
        let divisible: Vec<bool> = gammas.iter().map(|g| g.is_multiple_of(&m)).collect();
        let some_not_divisible = divisible.iter().any(|d| !d);
        NormalizerCheck {
            name,
            modulus,
            divisible,
            some_not_divisible,
            matches_defect_zero: some_not_divisible == has_defect_zero,
        }
    })
    .collect();
    Ok(AltNormalizerReport {
        p,
        principal_block,
        gammas,
        group_p_part,
        block_degree_square_sum,
        block_degree_square_sum_p_part,
        defect_zero_classes,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::compute_table;
    use crate::group::{enumerate, Catalog, ConjugacyData, DEFAULT_ELEMENT_CAP};

    fn table(name: &str) -> CharacterTable {
        let g = enumerate(Catalog::bundled().get(name).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        compute_table(&g, &ConjugacyData::new(&g)).unwrap()
    }

    fn map(t: &CharacterTable, p: u64) -> ReductionMap {
        build_reduction(t.exponent(), p).unwrap()
    }

    #[test]
    fn s3_p_elements() {
        let t = table("S3");
        let m = map(&t, 3);
        // classes: identity, 3-cycles, transpositions
        assert!(is_p_element(&t, 0, &m).unwrap());
        assert!(is_p_element(&t, 1, &m).unwrap());
        assert!(!is_p_element(&t, 2, &m).unwrap());
    }

    #[test]
    fn s3_central_characters() {
        let t = table("S3");
        let deg2 = t.rows().iter().position(|r| r.degree() == 2).unwrap();
        let sign = 1;
        assert_eq!(central_character(&t, deg2, 0).unwrap(), Cyclotomic::one(6));
        assert_eq!(central_character(&t, deg2, 1).unwrap(), Cyclotomic::from_integer(6, -1));
        assert_eq!(central_character(&t, sign, 2).unwrap(), Cyclotomic::from_integer(6, -3));
    }

    #[test]
    fn s3_single_principal_block() {
        let t = table("S3");
        let r = principal_block_members(&t, &map(&t, 3)).unwrap();
        assert_eq!(r.members, vec![true, true, true]);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn c2_p3_only_trivial() {
        let t = table("C2");
        let r = principal_block_members(&t, &map(&t, 3)).unwrap();
        assert_eq!(r.members, vec![true, false]);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!((r.witnesses[0].character, r.witnesses[0].class), (1, 1));
    }

    #[test]
    fn s3_counterexample_values() {
        let t = table("S3");
        let (_, gammas) = principal_block_gammas(&t, &map(&t, 3)).unwrap();
        let expect: Vec<BigInt> = [153, 153, 279].into_iter().map(BigInt::from).collect();
        assert_eq!(gammas, expect);
        for (i, psi) in t.rows().iter().enumerate() {
            assert_eq!(strunkov_analog_gamma_naive(&t, psi, &[0, 1, 2]).unwrap(), gammas[i]);
        }
    }

    #[test]
    fn naive_matches_on_small_tables() {
        for name in ["trivial", "C2", "C3", "S3"] {
            let t = table(name);
            for p in [2, 3] {
                let block = principal_block_members(&t, &map(&t, p)).unwrap().member_indices();
                for psi in t.rows() {
                    assert_eq!(
                        strunkov_analog_gamma(&t, psi, &block).unwrap(),
                        strunkov_analog_gamma_naive(&t, psi, &block).unwrap(),
                        "{name} p={p}"
                    );
                }
            }
        }
        let a4 = table("A4");
        assert!(matches!(
            strunkov_analog_gamma_naive(&a4, a4.row(0), &[0]),
            Err(BlockError::NaiveCap { .. })
        ));
    }

    #[test]
    fn empty_block_rejected() {
        let t = table("S3");
        assert!(matches!(strunkov_analog_gamma(&t, t.row(0), &[]), Err(BlockError::EmptyBlock)));
    }

    #[test]
    fn wrong_map_order_rejected() {
        let t = table("S3");
        let m = build_reduction(4, 3).unwrap();
        assert!(matches!(is_p_element(&t, 0, &m), Err(BlockError::MapOrder { .. })));
    }

    #[test]
    fn choice_independence() {
        for spec in Catalog::bundled().specs() {
            let t = table(&spec.name);
            for p in crate::arith::numtheory::prime_factors(t.order()).into_iter().chain([2, 3, 5, 7]) {
                let e = t.exponent();
                if crate::arith::numtheory::p_free_part(e, p) > 12 {
                    continue;
                }
                let base = principal_block_members(&t, &map(&t, p)).unwrap();
                let base_p = p_element_table(&t, &map(&t, p)).unwrap();
                for root in ReductionMap::candidate_roots(e, p).unwrap() {
                    let m = ReductionMap::with_root(e, p, root).unwrap();
                    assert_eq!(principal_block_members(&t, &m).unwrap().members, base.members);
                    let rows = p_element_table(&t, &m).unwrap();
                    assert_eq!(
                        rows.iter().map(|r| r.congruence).collect::<Vec<_>>(),
                        base_p.iter().map(|r| r.congruence).collect::<Vec<_>>()
                    );
                }
            }
        }
    }

    #[test]
    fn alt_normalizer_s3_and_trivial() {
        let t = table("S3");
        let r = alt_normalizer_report(&t, &map(&t, 3)).unwrap();
        assert_eq!(r.group_p_part, 3);
        assert_eq!(r.block_degree_square_sum, 6);
        assert_eq!(r.checks[0].modulus, 9);
        assert!(r.checks[0].divisible.iter().all(|&d| d));
        // the defect-zero class of transpositions exists, so the analog fails
        assert_eq!(r.defect_zero_classes, vec![2]);
        assert!(!r.checks[0].matches_defect_zero);

        let t = table("trivial");
        let r = alt_normalizer_report(&t, &map(&t, 2)).unwrap();
        assert_eq!(r.gammas.len(), 1);
        assert_eq!(r.principal_block, vec![0]);
    }

    #[test]
    fn d12_report_generates() {
        let t = table("D12");
        let r = alt_normalizer_report(&t, &map(&t, 3)).unwrap();
        assert_eq!(r.gammas.len(), t.rows().len());
        assert_eq!(r.checks.len(), 3);
    }
}
