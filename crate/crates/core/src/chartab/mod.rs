//! Irreducible character tables: exact computation, storage, and validation.

mod dixon;
mod io;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{rational_from_int, ArithError, Cyclotomic, Rational};
use crate::group::{ClassStructure, GroupError, HasClasses};

pub use dixon::{compute_table, compute_table_with_prime, dixon_prime, dixon_prime_after};
pub use io::{load_table, save_table, table_from_json, table_to_json, TableFile};

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{q} is not an admissible Dixon prime for exponent {e} and order {order}")]
    InadmissiblePrime { q: u64, e: u64, order: u64 },
    #[error("eigenspace splitting failed: {0}")]
    SplittingFailed(String),
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("orthogonality violated: {0}")]
    Orthogonality(OrthogonalityReport),
    #[error("degree squares sum to {sum}, expected {order}")]
    DegreeSum { sum: BigInt, order: u64 },
    #[error("table belongs to a different class layout: {0}")]
    ClassMismatch(String),
    #[error("table file: {0}")]
    Schema(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// One irreducible character: a value per conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// χ(1). Panics if the identity value is not a positive integer, which a
    /// validated table rules out.
    pub fn degree(&self) -> u64 {
        self.values[0]
            .as_rational_integer()
            .ok()
            .and_then(|d| d.to_u64())
            .expect("character degree is a positive integer")
    }

    pub fn is_trivial(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.as_rational().is_some_and(|r| *r == rational_from_int(1)))
    }
}

/// Where a table came from, carried into reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableSource {
    Computed { prime: u64 },
    File { path: String, sha256: String },
}

impl fmt::Display for TableSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableSource::Computed { prime } => write!(f, "computed (Dixon prime {prime})"),
            TableSource::File { path, sha256 } => write!(f, "file {path} (sha256 {sha256})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: String,
    classes: Arc<ClassStructure>,
    rows: Vec<Character>,
    source: TableSource,
}

impl HasClasses for CharacterTable {
    fn classes(&self) -> &Arc<ClassStructure> {
        &self.classes
    }
}

/// Tables compare by content; provenance is ignored.
impl PartialEq for CharacterTable {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.classes == other.classes && self.rows == other.rows
    }
}

impl CharacterTable {
    /// Validating constructor; see [`validate`](Self::validate).
    pub fn new(
        group: impl Into<String>,
        classes: Arc<ClassStructure>,
        rows: Vec<Character>,
        source: TableSource,
    ) -> Result<Self, TableError> {
        let table = CharacterTable {
            group: group.into(),
            classes,
            rows,
            source,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn group_name(&self) -> &str {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.classes.order
    }

    pub fn exponent(&self) -> u64 {
        self.classes.exponent
    }

    pub fn class_count(&self) -> usize {
        self.classes.class_count()
    }

    pub fn rows(&self) -> &[Character] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Character {
        &self.rows[i]
    }

    pub fn source(&self) -> &TableSource {
        &self.source
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows.iter().map(Character::degree).collect()
    }

    /// Errors unless `other` describes the same class layout as this table.
    pub fn check_classes(&self, other: &ClassStructure) -> Result<(), TableError> {
        if *self.classes == *other {
            Ok(())
        } else {
            Err(TableError::ClassMismatch(format!(
                "table for {} has class sizes {:?}, group has {:?}",
                self.group, self.classes.sizes, other.sizes
            )))
        }
    }

    /// Checks shape, integrality, the trivial first row, degrees, inverse-class
    /// conjugacy, both orthogonality relations and Σχ(1)² = |G|.
    pub fn validate(&self) -> Result<(), TableError> {
        let k = self.class_count();
        let e = self.exponent();
        if self.rows.len() != k {
            return Err(TableError::Shape(format!("{} rows for {k} classes", self.rows.len())));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.values.len() != k {
                return Err(TableError::Shape(format!("row {r} has {} values", row.values.len())));
            }
            for v in &row.values {
                if v.order() != e {
                    return Err(ArithError::OrderMismatch { left: v.order(), right: e }.into());
                }
                if !v.is_integral() {
                    return Err(TableError::Shape(format!("row {r} has non-integral value {v}")));
                }
            }
            let deg = row.values[0].as_rational_integer()?;
            if deg <= BigInt::zero() || !(BigInt::from(self.order()) % &deg).is_zero() {
                return Err(TableError::Shape(format!("row {r} has invalid degree {deg}")));
            }
            for i in 0..k {
                if row.values[self.classes.inverse_class[i]] != row.values[i].conjugate() {
                    return Err(TableError::Shape(format!(
                        "row {r}: value at the inverse of class {i} is not the conjugate"
                    )));
                }
            }
        }
        if !self.rows[0].is_trivial() {
            return Err(TableError::Shape("row 0 is not the trivial character".into()));
        }
        let report = orthogonality_violations(&self.classes, &self.rows);
        if !report.is_ok() {
            return Err(TableError::Orthogonality(report));
        }
        let sum: BigInt = self.rows.iter().map(|r| BigInt::from(r.degree()).pow(2)).sum();
        if sum != BigInt::from(self.order()) {
            return Err(TableError::DegreeSum {
                sum,
                order: self.order(),
            });
        }
        Ok(())
    }
}

/// Pairs at which an orthogonality relation fails.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// `(χ, χ′)` with `[χ, χ′] ≠ δ`.
    pub row_violations: Vec<(usize, usize)>,
    /// `(i, j)` with `Σ_χ χ(g_i)·conj(χ(g_j)) ≠ δ·|C(g_i)|`.
    pub column_violations: Vec<(usize, usize)>,
}

impl OrthogonalityReport {
    pub fn is_ok(&self) -> bool {
        self.row_violations.is_empty() && self.column_violations.is_empty()
    }
}

impl fmt::Display for OrthogonalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row pairs {:?}, column pairs {:?}",
            self.row_violations, self.column_violations
        )
    }
}

/// Exact row and column orthogonality for a candidate list of characters.
pub fn orthogonality_violations(classes: &ClassStructure, rows: &[Character]) -> OrthogonalityReport {
    let e = classes.exponent;
    let k = classes.class_count();
    let conj: Vec<Vec<Cyclotomic>> = rows
        .iter()
        .map(|r| r.values.iter().map(Cyclotomic::conjugate).collect())
        .collect();
    let mut report = OrthogonalityReport::default();
    let inv_order = Rational::new(1.into(), classes.order.into());
    for a in 0..rows.len() {
        for b in 0..rows.len() {
            let mut acc = Cyclotomic::zero(e);
            for i in 0..k {
                let term = &rows[a].values[i] * &conj[b][i];
                acc = &acc + &term.scale(&rational_from_int(classes.sizes[i]));
            }
            let expected = Cyclotomic::from_integer(e, i64::from(a == b));
            if acc.scale(&inv_order) != expected {
                report.row_violations.push((a, b));
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            let acc = (0..rows.len()).fold(Cyclotomic::zero(e), |acc, r| {
                &acc + &(&rows[r].values[i] * &conj[r][j])
            });
            let expected = if i == j { classes.centralizer_orders[i] } else { 0 };
            if acc != Cyclotomic::from_integer(e, expected) {
                report.column_violations.push((i, j));
            }
        }
    }
    report
}

pub fn verify_orthogonality(table: &CharacterTable) -> OrthogonalityReport {
    orthogonality_violations(&table.classes, &table.rows)
}

/// Row order used for computed tables: degree, then the trivial character,
/// then lexicographic on canonical values.
pub fn row_order(a: &Character, b: &Character) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.is_trivial().cmp(&a.is_trivial()))
        .then_with(|| a.values.cmp(&b.values))
}

/// Frobenius' count `|G|^{2n−1} Σ_χ χ(g)/χ(1)^{2n−1}` of solutions to
/// `[a1,b1]⋯[an,bn] = g` for `g` in the given class.
pub fn frobenius_commutator_count(
    table: &CharacterTable,
    class: usize,
    n: u32,
) -> Result<BigInt, ArithError> {
    let e = table.exponent();
    let power = 2 * n - 1;
    let mut acc = Cyclotomic::zero(e);
    for row in table.rows() {
        let d = rational_from_int(row.degree()).pow(power as i32);
        acc = &acc + &row.value(class).scale(&d.recip());
    }
    let scale = rational_from_int(table.order()).pow(power as i32);
    acc.scale(&scale).as_rational_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate, Catalog, ConjugacyData, Group, DEFAULT_ELEMENT_CAP};

    pub(crate) fn computed(name: &str) -> (Group, ConjugacyData, CharacterTable) {
        let g = enumerate(Catalog::bundled().get(name).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        let cd = ConjugacyData::new(&g);
        let t = compute_table(&g, &cd).unwrap();
        (g, cd, t)
    }

    #[test]
    fn orthogonality_of_small_tables() {
        for name in ["S3", "C4"] {
            let (_, _, t) = computed(name);
            assert!(verify_orthogonality(&t).is_ok(), "{name}");
        }
    }

    #[test]
    fn scaled_row_is_reported() {
        let (_, _, t) = computed("S3");
        let mut rows = t.rows().to_vec();
        rows[1] = Character::new(
            rows[1].values().iter().map(|v| v.scale(&rational_from_int(2))).collect(),
        );
        let report = orthogonality_violations(t.classes(), &rows);
        assert!(report.row_violations.contains(&(1, 1)));
        assert!(!report.column_violations.is_empty());
        let err = CharacterTable::new("S3", t.classes().clone(), rows, t.source().clone());
        assert!(err.is_err());
    }

    #[test]
    fn frobenius_matches_s3_counts() {
        let (_, _, t) = computed("S3");
        assert_eq!(frobenius_commutator_count(&t, 0, 1).unwrap(), BigInt::from(18));
        assert_eq!(frobenius_commutator_count(&t, 1, 1).unwrap(), BigInt::from(9));
        assert_eq!(frobenius_commutator_count(&t, 2, 1).unwrap(), BigInt::from(0));
    }

    #[test]
    fn class_mismatch_detected() {
        let (_, _, s3) = computed("S3");
        let (_, c6, _) = computed("C6");
        assert!(s3.check_classes(c6.classes()).is_err());
    }
}
