//! The catalog can be redirected to an external data directory; a corrupted
//! relation file there must be caught and named by the verification report.
//!
//! This file holds a single test because the redirect works through a
//! process-wide environment variable.

use std::fs;

use holed_torus::catalog::{self, CheckStatus, DATA_DIR_ENV};

#[test]
fn corrupted_relation_file_is_named_by_the_report() {
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }

    // Swap two adjacent non-commuting factors; the product changes, so the
    // twelve twists no longer compose to the boundary multi-twist.
    let fact = dir.path().join("fact_n9.txt");
    let text = fs::read_to_string(&fact).unwrap();
    let swapped = text.replace(
        "factor base=a1\nfactor base=b1\n",
        "factor base=b1\nfactor base=a1\n",
    );
    assert_ne!(swapped, text);
    fs::write(&fact, swapped).unwrap();

    std::env::set_var(DATA_DIR_ENV, dir.path());
    let report = catalog::verify_all();
    std::env::remove_var(DATA_DIR_ENV);

    let status = |name: &str| {
        report
            .iter()
            .find(|l| l.name == name)
            .unwrap_or_else(|| panic!("missing check `{name}`"))
            .status
            .clone()
    };
    assert_eq!(status("relation.N9"), CheckStatus::Fail);
    assert_eq!(status("relation.N8"), CheckStatus::Pass);
    assert_eq!(status("atlas.k9.model"), CheckStatus::Pass);
}
