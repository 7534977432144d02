//! Finite permutation groups enumerated in full, their conjugacy classes, and a
//! brute-force commutator counter.

mod commutator;
mod conjugacy;
mod perm;

use std::collections::{HashMap, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::numtheory::lcm;

pub use commutator::{count_commutator_solutions, COMMUTATOR_CAP_ONE, COMMUTATOR_CAP_TWO};
pub use conjugacy::{class_mult_coefficients, ClassStructure, ConjugacyData, HasClasses};
pub use perm::Permutation;

/// Default bound on |G| for full enumeration.
pub const DEFAULT_ELEMENT_CAP: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("malformed cycle notation {0}")]
    Malformed(String),
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("inconsistent class data: {0}")]
    InvalidClasses(String),
}

/// A named generating set, as stored in spec and catalog files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::InvalidSpec(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::InvalidSpec(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn parse_generators(&self) -> Result<Vec<Permutation>, GroupError> {
        if self.degree == 0 {
            return Err(GroupError::InvalidSpec("degree must be positive".into()));
        }
        self.generators
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.degree))
            .collect()
    }
}

/// A list of group specs, looked up by name (case-insensitive).
#[derive(Debug, Clone)]
pub struct Catalog {
    specs: Vec<GroupSpec>,
}

const BUNDLED_CATALOG: &str = include_str!("../../data/catalog.json");

impl Catalog {
    /// The catalog file shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_CATALOG).expect("bundled catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let specs: Vec<GroupSpec> =
            serde_json::from_str(text).map_err(|e| GroupError::InvalidSpec(e.to_string()))?;
        Ok(Catalog { specs })
    }

    pub fn load(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::InvalidSpec(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn specs(&self) -> &[GroupSpec] {
        &self.specs
    }

    pub fn get(&self, name: &str) -> Result<&GroupSpec, GroupError> {
        self.specs
            .iter()
            .find(|s| s.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| GroupError::UnknownGroup(name.to_string()))
    }
}

/// A fully enumerated permutation group with its multiplication table.
///
/// Element 0 is the identity; the remaining order is breadth-first from the
/// identity, applying the sorted generators in turn.
#[derive(Debug, Clone)]
pub struct Group {
    name: String,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u64>,
    exponent: u64,
}

/// Closure of the spec's generators, bounded by `cap` elements.
pub fn enumerate(spec: &GroupSpec, cap: usize) -> Result<Group, GroupError> {
    let mut gens = spec.parse_generators()?;
    gens.sort();
    gens.dedup();
    let identity = Permutation::identity(spec.degree);
    gens.retain(|g| *g != identity);

    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let next = elements[i].compose(g);
            if !index.contains_key(&next) {
                if elements.len() == cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }

    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            table[i * n + j] = index[&a.compose(b)] as u32;
        }
    }
    let inverses = elements.iter().map(|a| index[&a.inverse()] as u32).collect();
    let orders: Vec<u64> = elements.iter().map(Permutation::order).collect();
    let exponent = orders.iter().copied().fold(1, lcm);
    log::debug!("enumerated {} with {n} elements, exponent {exponent}", spec.name);
    Ok(Group {
        name: spec.name.clone(),
        elements,
        index,
        table,
        inverses,
        orders,
        exponent,
    })
}

impl Group {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `elements[a] * elements[b]` (apply `a` first).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, t: u64) -> usize {
        (0..t % self.orders[a]).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str, degree: usize, gens: &[&str]) -> GroupSpec {
        GroupSpec {
            name: name.into(),
            degree,
            generators: gens.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn closure_sizes() {
        let s3 = enumerate(&spec("S3", 3, &["(1 2)", "(1 2 3)"]), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.exponent(), 6);
        assert!(s3.element(0).is_identity());
        let trivial = enumerate(&spec("1", 2, &["()"]), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(trivial.order(), 1);
        let q8 = enumerate(
            &spec("Q8", 8, &["(1 2 5 6)(3 8 7 4)", "(1 3 5 7)(2 4 6 8)"]),
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        assert_eq!(q8.order(), 8);
        // a unique involution distinguishes Q8 from D8
        assert_eq!((0..8).filter(|&i| q8.element_order(i) == 2).count(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let s5 = spec("S5", 5, &["(1 2 3 4 5)", "(1 2)"]);
        assert_eq!(enumerate(&s5, 100).unwrap_err(), GroupError::CapExceeded { cap: 100 });
        assert_eq!(enumerate(&s5, 120).unwrap().order(), 120);
    }

    #[test]
    fn enumeration_is_deterministic_and_generator_order_free() {
        let a = enumerate(&spec("S4", 4, &["(1 2 3 4)", "(1 2)"]), 2000).unwrap();
        let b = enumerate(&spec("S4", 4, &["(1 2)", "(1 2 3 4)"]), 2000).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn table_is_a_group_law() {
        let g = enumerate(&spec("A4", 4, &["(1 2 3)", "(1 2)(3 4)"]), 2000).unwrap();
        let n = g.len();
        for a in 0..n {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(0, a), a);
            for b in 0..n {
                for c in [0, 1, n - 1] {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
            assert_eq!(g.pow(a, g.element_order(a)), 0);
        }
    }

    #[test]
    fn bundled_catalog_orders() {
        let expected = [
            ("trivial", 1),
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("C5", 5),
            ("C6", 6),
            ("S3", 6),
            ("D8", 8),
            ("Q8", 8),
            ("D12", 12),
            ("A4", 12),
            ("S4", 24),
            ("A5", 60),
            ("S5", 120),
        ];
        let cat = Catalog::bundled();
        assert_eq!(cat.specs().len(), expected.len());
        for (name, order) in expected {
            let g = enumerate(cat.get(name).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
        assert!(cat.get("s3").is_ok());
        assert_eq!(
            cat.get("M11").unwrap_err(),
            GroupError::UnknownGroup("M11".into())
        );
    }

    #[test]
    fn spec_json_errors() {
        assert!(GroupSpec::from_json("{\"name\": 3}").is_err());
        let bad = GroupSpec::from_json(r#"{"name":"x","degree":3,"generators":["(1 2)(2 3)"]}"#)
            .unwrap();
        assert_eq!(bad.parse_generators(), Err(GroupError::RepeatedPoint(2)));
    }
}
