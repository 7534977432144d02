use classdual::group::{Catalog, DEFAULT_ELEMENT_CAP};
use classdual::suite::run_suite;

#[test]
fn catalog_suite_passes() {
    let report = run_suite(&Catalog::bundled(), DEFAULT_ELEMENT_CAP);
    let failures: Vec<String> = report.failures().map(|c| c.to_string()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(report.checks.len() > 100);
}
