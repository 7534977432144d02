//! The invariant suite run over a group catalog. Every check records a pass/fail
//! line; errors inside a check count as failures rather than aborting the run.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::numtheory::{p_free_part, prime_factors};
use crate::blocks::{self, build_reduction, ReductionMap};
use crate::chartab::{
    compute_table, compute_table_with_prime, dixon_prime_after, frobenius_commutator_count, verify_orthogonality,
    CharacterTable, TableError, TableSource,
};
use crate::classfn::{pi_character, pi_from_table, psi_character, row_sums, ClassFunction};
use crate::duality::{
    class_size_spectrum, defect_zero_by_characters, delta_sequence, gamma_sequence, multiplicity_residues,
    real_class_size_spectrum, recover_class_sizes, recover_real_class_sizes, required_terms,
};
use crate::group::{
    count_commutator_solutions, enumerate, Catalog, ConjugacyData, Group, GroupError, GroupSpec, HasClasses,
    COMMUTATOR_CAP_TWO,
};

/// Largest p-free part of the exponent for which every reduction root is tried.
pub const CHOICE_INDEPENDENCE_LIMIT: u64 = 12;

/// A group together with its classes and computed character table.
pub struct Subject {
    pub group: Group,
    pub conj: ConjugacyData,
    pub table: CharacterTable,
}

#[derive(Debug, thiserror::Error)]
pub enum SubjectError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
}

impl Subject {
    pub fn build(spec: &GroupSpec, cap: usize) -> Result<Self, SubjectError> {
        let group = enumerate(spec, cap)?;
        let conj = ConjugacyData::new(&group);
        let table = compute_table(&group, &conj)?;
        Ok(Subject { group, conj, table })
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn primes(&self) -> Vec<u64> {
        prime_factors(self.order())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Area {
    Table,
    Identities,
    Recovery,
    Defect,
    Oracles,
    Blocks,
}

impl fmt::Display for Area {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Area::Table => "table",
            Area::Identities => "identities",
            Area::Recovery => "recovery",
            Area::Defect => "defect",
            Area::Oracles => "oracles",
            Area::Blocks => "blocks",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub group: String,
    pub area: Area,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {:<8} {:<10} {}", self.group, self.area, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

struct Recorder<'a> {
    group: &'a str,
    area: Area,
    out: Vec<Check>,
}

impl<'a> Recorder<'a> {
    fn new(group: &'a str, area: Area) -> Self {
        Recorder {
            group,
            area,
            out: Vec::new(),
        }
    }

    /// `Ok(detail)` passes, `Err(detail)` fails.
    fn record(&mut self, name: impl Into<String>, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.out.push(Check {
            group: self.group.to_string(),
            area: self.area,
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(String::new())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn errs<T, E: fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Orthogonality, degree sum, integral values and independence of the Dixon prime.
pub fn table_checks(s: &Subject) -> Vec<Check> {
    let t = &s.table;
    let mut r = Recorder::new(s.name(), Area::Table);
    let orth = verify_orthogonality(t);
    r.record(
        "row and column orthogonality",
        if orth.is_ok() { Ok(String::new()) } else { Err(orth.to_string()) },
    );
    let degree_sum: u64 = t.degrees().iter().map(|d| d * d).sum();
    r.record("sum of squared degrees", expect_eq(degree_sum, s.order()));
    let integral = t.rows().iter().all(|row| row.values().iter().all(|v| v.is_integral()));
    r.record(
        "integral values",
        if integral { Ok(String::new()) } else { Err("non-integral entry".into()) },
    );
    let TableSource::Computed { prime } = *t.source() else {
        unreachable!("suite tables are computed")
    };
    let next = dixon_prime_after(t.exponent(), s.order(), prime);
    r.record(
        format!("prime independence ({prime} vs {next})"),
        errs(compute_table_with_prime(&s.group, &s.conj, next)).and_then(|other| {
            if &other == t {
                Ok(String::new())
            } else {
                Err("tables differ".into())
            }
        }),
    );
    r.out
}

/// π and ψ from the table, row sums, πⁿψᵐ = ψⁿ⁺ᵐ and the γ/δ dual paths.
pub fn identity_checks(s: &Subject) -> Vec<Check> {
    let t = &s.table;
    let mut r = Recorder::new(s.name(), Area::Identities);
    let pi = pi_character(t);
    r.record("pi = sum chi*conj(chi)", expect_eq(&pi_from_table(t), &pi));
    let psi = psi_character(t);
    r.record("psi case split", errs(psi.as_ref()).map(|_| String::new()));
    r.record(
        "row sums",
        errs(t.rows().iter().map(|phi| row_sums(phi, t)).collect::<Result<Vec<_>, _>>()).map(|_| String::new()),
    );
    if let Ok(psi) = &psi {
        let mut bad = Vec::new();
        for n in 0..=3 {
            for m in 1..=3 {
                let lhs: ClassFunction = pi.power(n).mul(&psi.power(m)).expect("same layout");
                if lhs != psi.power(n + m) {
                    bad.push(format!("n={n} m={m}"));
                }
            }
        }
        r.record(
            "pi^n psi^m = psi^(n+m), n <= 3, 1 <= m <= 3",
            if bad.is_empty() { Ok(String::new()) } else { Err(bad.join(", ")) },
        );
    }
    let dual = (1..=3)
        .try_for_each(|n| {
            gamma_sequence(t, n)?;
            delta_sequence(t, n).map(|_| ())
        })
        .and_then(|_| {
            t.rows().iter().try_for_each(|phi| {
                crate::classfn::gamma(3, phi, t)?;
                crate::classfn::delta(3, phi, t).map(|_| ())
            })
        });
    r.record("gamma/delta dual paths, n <= 3", errs(dual).map(|_| String::new()));
    r.out
}

/// Class sizes recovered from γ(1_G) and δ(1_G) against the enumerated classes.
pub fn recovery_checks(s: &Subject) -> Vec<Check> {
    let t = &s.table;
    let mut r = Recorder::new(s.name(), Area::Recovery);
    let len = required_terms(s.order()) as u32;
    let want = class_size_spectrum(s.conj.classes());
    let got = errs(gamma_sequence(t, len)).and_then(|seq| errs(recover_class_sizes(&seq, s.order())));
    r.record("class sizes from gamma", got.and_then(|g| expect_eq(g, want)));
    let want = real_class_size_spectrum(s.conj.classes());
    let got = errs(delta_sequence(t, len)).and_then(|seq| errs(recover_real_class_sizes(&seq, s.order())));
    r.record("real class sizes from delta", got.and_then(|g| expect_eq(g, want)));
    r.out
}

/// Character-side and direct-side defect-zero verdicts for every p | |G|, n ∈ {2, 3}.
pub fn defect_checks(s: &Subject) -> Vec<Check> {
    let mut r = Recorder::new(s.name(), Area::Defect);
    for p in s.primes() {
        for n in [2, 3] {
            for real in [false, true] {
                let name = format!("p={p} n={n}{}", if real { " real" } else { "" });
                let res = errs(defect_zero_by_characters(&s.table, p, n, real)).and_then(|rep| {
                    let detail = format!("character {}, direct {}", rep.character_side, rep.direct_side);
                    if rep.verdicts_agree() {
                        Ok(detail)
                    } else {
                        Err(detail)
                    }
                });
                r.record(name, res);
            }
        }
        // n = 1 is outside the hypothesis: residues are computed, nothing is claimed
        let probe = errs(multiplicity_residues(&s.table, p, 1, false))
            .map(|v| format!("residues {:?}", v.iter().map(|(_, r)| *r).collect::<Vec<_>>()));
        r.record(format!("p={p} n=1 probe"), probe);
    }
    r.out
}

/// Frobenius counts against brute force (small groups) and the p-element
/// congruence against element orders.
pub fn oracle_checks(s: &Subject) -> Vec<Check> {
    let t = &s.table;
    let mut r = Recorder::new(s.name(), Area::Oracles);
    if s.order() <= COMMUTATOR_CAP_TWO {
        for n in [1, 2] {
            let res = (0..t.class_count()).try_for_each(|k| {
                let rep = s.conj.representatives()[k];
                let brute = errs(count_commutator_solutions(&s.group, rep, n))?;
                let formula = errs(frobenius_commutator_count(t, k, n))?;
                if BigInt::from(brute) == formula {
                    Ok(())
                } else {
                    Err(format!("class {k}: brute force {brute}, formula {formula}"))
                }
            });
            r.record(format!("frobenius commutator count n={n}"), res.map(|_| String::new()));
        }
    }
    for p in s.primes() {
        let res = errs(build_reduction(t.exponent(), p))
            .and_then(|map| errs(blocks::p_element_table(t, &map)))
            .and_then(|rows| {
                let bad: Vec<usize> = rows.iter().filter(|x| x.congruence != x.direct).map(|x| x.class).collect();
                if bad.is_empty() {
                    Ok(String::new())
                } else {
                    Err(format!("classes {bad:?}"))
                }
            });
        r.record(format!("p-element congruence p={p}"), res);
    }
    r.out
}

/// Principal block contains 1_G, and membership does not depend on the reduction root.
pub fn block_checks(s: &Subject) -> Vec<Check> {
    let t = &s.table;
    let e = t.exponent();
    let mut r = Recorder::new(s.name(), Area::Blocks);
    for p in s.primes() {
        let base = errs(build_reduction(e, p)).and_then(|m| errs(blocks::principal_block_members(t, &m)));
        let base = match base {
            Ok(b) => b,
            Err(d) => {
                r.record(format!("principal block p={p}"), Err(d));
                continue;
            }
        };
        r.record(
            format!("principal block p={p} contains trivial"),
            if base.members.first() == Some(&true) {
                Ok(format!("members {:?}", base.member_indices()))
            } else {
                Err("trivial character missing".into())
            },
        );
        if p_free_part(e, p) > CHOICE_INDEPENDENCE_LIMIT {
            continue;
        }
        let res = errs(ReductionMap::candidate_roots(e, p)).and_then(|roots| {
            let count = roots.len();
            for root in roots {
                let m = errs(ReductionMap::with_root(e, p, root))?;
                let other = errs(blocks::principal_block_members(t, &m))?;
                if other.members != base.members {
                    return Err(format!("root {} gives {:?}", m.root(), other.member_indices()));
                }
            }
            Ok(format!("{count} roots"))
        });
        r.record(format!("root choice independence p={p}"), res);
    }
    r.out
}

pub fn subject_checks(s: &Subject) -> Vec<Check> {
    let mut out = table_checks(s);
    out.extend(identity_checks(s));
    out.extend(recovery_checks(s));
    out.extend(defect_checks(s));
    out.extend(oracle_checks(s));
    out.extend(block_checks(s));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Every check for every catalog group, in catalog order.
pub fn run_suite(catalog: &Catalog, cap: usize) -> SuiteReport {
    let mut checks = Vec::new();
    for spec in catalog.specs() {
        match Subject::build(spec, cap) {
            Ok(s) => checks.extend(subject_checks(&s)),
            Err(e) => checks.push(Check {
                group: spec.name.clone(),
                area: Area::Table,
                name: "build".into(),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    SuiteReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    #[test]
    fn s3_suite_passes() {
        let s = Subject::build(Catalog::bundled().get("S3").unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        let checks = subject_checks(&s);
        for c in &checks {
            assert!(c.passed, "{c}");
        }
        assert!(checks.iter().any(|c| c.area == Area::Oracles && c.name.contains("n=2")));
    }

    #[test]
    fn build_failure_is_recorded() {
        let catalog = Catalog::from_json(r#"[{"name": "big", "degree": 5, "generators": ["(1 2 3 4 5)", "(1 2)"]}]"#)
            .unwrap();
        let report = run_suite(&catalog, 10);
        assert!(!report.passed());
        assert_eq!(report.checks[0].name, "build");
    }
}
