//! Class sizes and degrees of the catalog groups against textbook values.

use classdual::arith::Cyclotomic;
use classdual::chartab::{frobenius_commutator_count, load_table, save_table};
use classdual::group::{Catalog, HasClasses, DEFAULT_ELEMENT_CAP};
use classdual::suite::Subject;
use num_bigint::BigInt;

fn subject(name: &str) -> Subject {
    Subject::build(Catalog::bundled().get(name).unwrap(), DEFAULT_ELEMENT_CAP).unwrap()
}

#[test]
fn sizes_and_degrees() {
    let cases: &[(&str, &[u64], &[u64])] = &[
        ("trivial", &[1], &[1]),
        ("C4", &[1, 1, 1, 1], &[1, 1, 1, 1]),
        ("S3", &[1, 2, 3], &[1, 1, 2]),
        ("D8", &[1, 1, 2, 2, 2], &[1, 1, 1, 1, 2]),
        ("Q8", &[1, 1, 2, 2, 2], &[1, 1, 1, 1, 2]),
        ("D12", &[1, 1, 2, 2, 3, 3], &[1, 1, 1, 1, 2, 2]),
        ("A4", &[1, 3, 4, 4], &[1, 1, 1, 3]),
        ("S4", &[1, 3, 6, 6, 8], &[1, 1, 2, 3, 3]),
        ("A5", &[1, 12, 12, 15, 20], &[1, 3, 3, 4, 5]),
        ("S5", &[1, 10, 15, 20, 20, 24, 30], &[1, 1, 4, 4, 5, 5, 6]),
    ];
    for (name, sizes, degrees) in cases {
        let s = subject(name);
        assert_eq!(s.table.classes().sizes, *sizes, "{name}");
        assert_eq!(s.table.degrees(), *degrees, "{name}");
    }
}

#[test]
fn d8_and_q8_tables_coincide_up_to_class_labels() {
    let d8 = subject("D8").table;
    let q8 = subject("Q8").table;
    let rows = |t: &classdual::chartab::CharacterTable| {
        let mut r: Vec<Vec<Cyclotomic>> = t.rows().iter().map(|c| c.values().to_vec()).collect();
        r.sort();
        r
    };
    // both are rational with the same class sizes; only the power maps differ
    assert_eq!(d8.classes().sizes, q8.classes().sizes);
    assert_ne!(d8.classes().rep_orders, q8.classes().rep_orders);
    assert_eq!(rows(&d8), rows(&q8));
}

#[test]
fn a5_irrationalities_are_golden() {
    let t = subject("A5").table;
    let e = t.exponent();
    let one = Cyclotomic::one(e);
    for row in t.rows().iter().filter(|r| r.degree() == 3) {
        for k in 0..t.class_count() {
            if t.classes().rep_orders[k] == 5 {
                let v = row.value(k);
                assert!(!v.is_rational());
                assert_eq!(v * v, v + &one);
            }
        }
    }
}

#[test]
fn commuting_pairs_equal_order_times_class_count() {
    for name in ["S3", "A5", "S5", "D12"] {
        let t = subject(name).table;
        let pairs = frobenius_commutator_count(&t, 0, 1).unwrap();
        assert_eq!(pairs, BigInt::from(t.order() * t.class_count() as u64), "{name}");
    }
}

#[test]
fn table_file_round_trip_for_catalog() {
    let dir = tempfile::tempdir().unwrap();
    for spec in Catalog::bundled().specs() {
        let t = subject(&spec.name).table;
        let path = dir.path().join(format!("{}.json", spec.name));
        save_table(&t, &path).unwrap();
        assert_eq!(load_table(&path).unwrap(), t, "{}", spec.name);
    }
}
