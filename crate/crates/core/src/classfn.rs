//! Class functions and the multiplicities of irreducibles in powers of
//! π = Σ χ·conj(χ) (the conjugation permutation character, π(g) = |C_G(g)|) and
//! ψ = Σ χ² (equal to |C_G(g)| on real classes and 0 elsewhere).

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{rational_from_int, ArithError, Cyclotomic, Rational};
use crate::chartab::{Character, CharacterTable};
use crate::group::{ClassStructure, HasClasses};

#[derive(Debug, Error)]
pub enum ClassFnError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("class functions live on different class layouts")]
    ClassMismatch,
    #[error("sum of squares disagrees with the real-class split at class {class}: got {value}")]
    PsiCaseSplit { class: usize, value: String },
    #[error("{what}: inner product gives {inner}, weighted row sum gives {row_sum}")]
    DualPathMismatch {
        what: &'static str,
        inner: String,
        row_sum: String,
    },
    #[error("multiplicities require n >= 1")]
    ZeroPower,
}

#[derive(Debug, Clone)]
pub struct ClassFunction {
    classes: Arc<ClassStructure>,
    values: Vec<Cyclotomic>,
}

impl HasClasses for ClassFunction {
    fn classes(&self) -> &Arc<ClassStructure> {
        &self.classes
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_layout(&self.classes, &other.classes) && self.values == other.values
    }
}

fn same_layout(a: &Arc<ClassStructure>, b: &Arc<ClassStructure>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ClassFunction {
    pub fn new(classes: Arc<ClassStructure>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), classes.class_count(), "one value per class");
        ClassFunction { classes, values }
    }

    pub fn from_integers(classes: Arc<ClassStructure>, values: &[u64]) -> Self {
        let e = classes.exponent;
        let values = values.iter().map(|&v| Cyclotomic::from_integer(e, v)).collect();
        Self::new(classes, values)
    }

    pub fn trivial(classes: &impl HasClasses) -> Self {
        let c = classes.classes().clone();
        let ones = vec![1; c.class_count()];
        Self::from_integers(c, &ones)
    }

    pub fn from_character(table: &CharacterTable, chi: &Character) -> Self {
        Self::new(table.classes().clone(), chi.values().to_vec())
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    fn check(&self, other: &Self) -> Result<(), ClassFnError> {
        if same_layout(&self.classes, &other.classes) {
            Ok(())
        } else {
            Err(ClassFnError::ClassMismatch)
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<Self, ClassFnError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect();
        Ok(ClassFunction {
            classes: self.classes.clone(),
            values,
        })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self, ClassFnError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ClassFnError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn conjugate(&self) -> Self {
        ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().map(Cyclotomic::conjugate).collect(),
        }
    }

    /// Pointwise n-th power; `power(0)` is the all-ones function.
    pub fn power(&self, n: u32) -> Self {
        ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v.pow(n)).collect(),
        }
    }
}

/// π(g_i) = |C_G(g_i)|.
pub fn pi_character(classes: &impl HasClasses) -> ClassFunction {
    let c = classes.classes().clone();
    let values = c.centralizer_orders.clone();
    ClassFunction::from_integers(c, &values)
}

/// ψ = Σ_χ χ², checked against |C_G(g)| on real classes and 0 on the rest.
pub fn psi_character(table: &CharacterTable) -> Result<ClassFunction, ClassFnError> {
    let c = table.classes().clone();
    let e = c.exponent;
    let mut values = Vec::with_capacity(c.class_count());
    for i in 0..c.class_count() {
        let v = table
            .rows()
            .iter()
            .fold(Cyclotomic::zero(e), |acc, chi| &acc + &(chi.value(i) * chi.value(i)));
        let expected = if c.real[i] { c.centralizer_orders[i] } else { 0 };
        if v != Cyclotomic::from_integer(e, expected) {
            return Err(ClassFnError::PsiCaseSplit {
                class: i,
                value: v.to_string(),
            });
        }
        values.push(v);
    }
    Ok(ClassFunction::new(c, values))
}

/// Σ_χ χ·conj(χ), built from the table (used to check π against the class data).
pub fn pi_from_table(table: &CharacterTable) -> ClassFunction {
    let c = table.classes().clone();
    let e = c.exponent;
    let values = (0..c.class_count())
        .map(|i| {
            table.rows().iter().fold(Cyclotomic::zero(e), |acc, chi| {
                &acc + &(chi.value(i) * &chi.value(i).conjugate())
            })
        })
        .collect();
    ClassFunction::new(c, values)
}

/// `[φ, θ] = (1/|G|) Σ_K |K| φ(g_K) conj(θ(g_K))`.
pub fn inner(phi: &ClassFunction, theta: &ClassFunction) -> Result<Cyclotomic, ClassFnError> {
    phi.check(theta)?;
    let c = &phi.classes;
    let mut acc = Cyclotomic::zero(c.exponent);
    for i in 0..c.class_count() {
        let term = &phi.values[i] * &theta.values[i].conjugate();
        acc = &acc + &term.scale(&rational_from_int(c.sizes[i]));
    }
    Ok(acc.scale(&Rational::new(1.into(), c.order.into())))
}

/// Multiplicities `[χ, θ]` for every irreducible χ, in table row order.
pub fn decompose(table: &CharacterTable, theta: &ClassFunction) -> Result<Vec<Cyclotomic>, ClassFnError> {
    table
        .rows()
        .iter()
        .map(|chi| inner(&ClassFunction::from_character(table, chi), theta))
        .collect()
}

/// Σ_{i in `classes`} (|G|/|K_i|)^{n−1} φ(g_i).
fn weighted_row_sum(
    phi: &Character,
    layout: &ClassStructure,
    n: u32,
    classes: impl Iterator<Item = usize>,
) -> Cyclotomic {
    classes.fold(Cyclotomic::zero(layout.exponent), |acc, i| {
        let w = rational_from_int(layout.centralizer_orders[i]).pow(n as i32 - 1);
        &acc + &phi.value(i).scale(&w)
    })
}

fn dual_path(
    what: &'static str,
    inner_value: Cyclotomic,
    row_sum: Cyclotomic,
) -> Result<BigInt, ClassFnError> {
    if inner_value != row_sum {
        return Err(ClassFnError::DualPathMismatch {
            what,
            inner: inner_value.to_string(),
            row_sum: row_sum.to_string(),
        });
    }
    Ok(inner_value.as_rational_integer()?)
}

/// γ_n(φ) = [φ, πⁿ], also evaluated as Σ_K (|G|/|K|)^{n−1} φ(g_K); the two must agree.
pub fn gamma(n: u32, phi: &Character, table: &CharacterTable) -> Result<BigInt, ClassFnError> {
    if n == 0 {
        return Err(ClassFnError::ZeroPower);
    }
    let layout = table.classes();
    let via_inner = inner(
        &ClassFunction::from_character(table, phi),
        &pi_character(table).power(n),
    )?;
    let via_rows = weighted_row_sum(phi, layout, n, 0..layout.class_count());
    dual_path("gamma", via_inner, via_rows)
}

/// δ_n(φ) = [φ, ψⁿ], also evaluated as the weighted row sum over real classes.
pub fn delta(n: u32, phi: &Character, table: &CharacterTable) -> Result<BigInt, ClassFnError> {
    if n == 0 {
        return Err(ClassFnError::ZeroPower);
    }
    let layout = table.classes();
    let via_inner = inner(
        &ClassFunction::from_character(table, phi),
        &psi_character(table)?.power(n),
    )?;
    let via_rows = weighted_row_sum(phi, layout, n, layout.real_classes().into_iter());
    dual_path("delta", via_inner, via_rows)
}

/// (Σ_K φ(g_K), Σ_{K real} φ(g_K)), checked against [φ, π] and [φ, ψ].
pub fn row_sums(phi: &Character, table: &CharacterTable) -> Result<(BigInt, BigInt), ClassFnError> {
    let layout = table.classes();
    let e = layout.exponent;
    let full = phi.values().iter().fold(Cyclotomic::zero(e), |a, v| &a + v);
    let real = layout
        .real_classes()
        .into_iter()
        .fold(Cyclotomic::zero(e), |a, i| &a + phi.value(i));
    let as_fn = ClassFunction::from_character(table, phi);
    let full = dual_path("row sum", inner(&as_fn, &pi_character(table))?, full)?;
    let real = dual_path("real row sum", inner(&as_fn, &psi_character(table)?)?, real)?;
    Ok((full, real))
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

    fn ints(f: &ClassFunction) -> Vec<BigInt> {
        f.values().iter().map(|v| v.as_rational_integer().unwrap()).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pi_examples() {
        assert_eq!(ints(&pi_character(&table("S3"))), big(&[6, 3, 2]));
        assert_eq!(ints(&pi_character(&table("trivial"))), big(&[1]));
        assert_eq!(ints(&pi_character(&table("C4"))), big(&[4, 4, 4, 4]));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(ints(&psi_character(&table("S3")).unwrap()), big(&[6, 3, 2]));
        assert_eq!(ints(&psi_character(&table("C3")).unwrap()), big(&[3, 0, 0]));
        assert_eq!(ints(&psi_character(&table("trivial")).unwrap()), big(&[1]));
    }

    #[test]
    fn power_examples() {
        let t = table("S3");
        let pi = pi_character(&t);
        assert_eq!(pi.power(0), ClassFunction::trivial(&t));
        assert_eq!(ints(&pi.power(3)), big(&[216, 27, 8]));
        let psi = psi_character(&t).unwrap();
        assert_eq!(pi.mul(&psi).unwrap(), psi.power(2));
    }

    #[test]
    fn inner_examples() {
        let t = table("S3");
        let one = ClassFunction::trivial(&t);
        let pi = pi_character(&t);
        let int = |z: Cyclotomic| z.as_rational_integer().unwrap();
        assert_eq!(int(inner(&one, &one).unwrap()), BigInt::from(1));
        assert_eq!(int(inner(&one, &pi.power(2)).unwrap()), BigInt::from(11));
        assert_eq!(int(inner(&one, &pi.power(3)).unwrap()), BigInt::from(49));
    }

    #[test]
    fn gamma_delta_examples() {
        let s3 = table("S3");
        let triv = s3.row(0);
        let sign = s3.row(1);
        assert_eq!(gamma(1, triv, &s3).unwrap(), BigInt::from(3));
        assert_eq!(gamma(2, triv, &s3).unwrap(), BigInt::from(11));
        assert_eq!(gamma(2, sign, &s3).unwrap(), BigInt::from(7));
        for n in 1..=4 {
            assert_eq!(delta(n, triv, &s3).unwrap(), gamma(n, triv, &s3).unwrap());
        }
        let c3 = table("C3");
        assert_eq!(delta(2, c3.row(0), &c3).unwrap(), BigInt::from(3));
        let triv_group = table("trivial");
        for n in 1..=5 {
            assert_eq!(delta(n, triv_group.row(0), &triv_group).unwrap(), BigInt::from(1));
        }
        assert!(matches!(gamma(0, triv, &s3), Err(ClassFnError::ZeroPower)));
    }

    #[test]
    fn row_sum_examples() {
        let s3 = table("S3");
        assert_eq!(row_sums(s3.row(0), &s3).unwrap(), (BigInt::from(3), BigInt::from(3)));
        assert_eq!(row_sums(s3.row(2), &s3).unwrap(), (BigInt::from(1), BigInt::from(1)));
        let c3 = table("C3");
        for chi in &c3.rows()[1..] {
            assert_eq!(row_sums(chi, &c3).unwrap(), (BigInt::from(0), BigInt::from(1)));
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = pi_character(&table("S3"));
        let b = pi_character(&table("C6"));
        assert!(matches!(a.mul(&b), Err(ClassFnError::ClassMismatch)));
        assert!(matches!(inner(&a, &b), Err(ClassFnError::ClassMismatch)));
    }

    #[test]
    fn decomposition_recomposes_pi_powers() {
        for name in ["S3", "Q8", "A4", "C5"] {
            let t = table(name);
            let pi = pi_character(&t);
            for n in 1..=3 {
                let target = pi.power(n);
                let mult = decompose(&t, &target).unwrap();
                let mut acc = ClassFunction::trivial(&t).scale(&Rational::from_integer(0.into()));
                for (m, chi) in mult.iter().zip(t.rows()) {
                    let r = m.as_rational().unwrap().clone();
                    acc = acc.add(&ClassFunction::from_character(&t, chi).scale(&r)).unwrap();
                }
                assert_eq!(acc, target, "{name} n={n}");
            }
        }
    }
}
