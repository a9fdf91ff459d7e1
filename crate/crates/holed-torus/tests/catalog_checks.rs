//! End-to-end checks of the shipped catalog: the full verification report,
//! name resolution, and the relabeling and capping tables.

use holed_torus::catalog::{
    self, cap_dictionary, find_window_certificate, shift_relabel, standard_atlas, CatalogEntry,
    CheckStatus,
};
use holed_torus::hurwitz::{self, factorwise_equal, replay, Factorization, TwistFactor};
use holed_torus::surface_model::SurfaceSig;

#[test]
fn full_verification_report_passes_with_one_declared_skip() {
    let report = catalog::verify_all();
    let failures: Vec<String> = report
        .iter()
        .filter(|l| l.status == CheckStatus::Fail)
        .map(|l| l.to_string())
        .collect();
    assert!(failures.is_empty(), "failing checks:\n{}", failures.join("\n"));
    let skips: Vec<&str> = report
        .iter()
        .filter(|l| l.status == CheckStatus::Skip)
        .map(|l| l.name.as_str())
        .collect();
    assert_eq!(skips, ["auxiliary.curve_datasets"]);
}

#[test]
fn every_catalog_name_resolves_and_unknown_names_do_not() {
    for name in catalog::names() {
        let entry = catalog::get(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        match entry {
            CatalogEntry::Relation { factorization, .. } => {
                assert_eq!(factorization.len(), 12, "{name} should have 12 factors");
            }
            CatalogEntry::Script { source, target, .. } => {
                assert!(catalog::get(&source).is_ok());
                assert!(catalog::get(&target).is_ok());
            }
        }
    }
    assert!(catalog::get("N10").is_err());
    assert!(catalog::get("").is_err());
}

#[test]
fn relation_rows_live_on_their_advertised_surfaces() {
    let holes = [
        ("N1", 1),
        ("N2", 2),
        ("N3", 3),
        ("N4", 4),
        ("N5", 5),
        ("N6", 6),
        ("N7", 7),
        ("N8", 8),
        ("N9", 9),
        ("S8", 8),
        ("KO9", 9),
        ("T8", 8),
        ("N4.alt", 4),
        ("N3.star", 3),
    ];
    for (name, k) in holes {
        let CatalogEntry::Relation { factorization, .. } = catalog::get(name).unwrap() else {
            panic!("{name} is not a relation");
        };
        assert_eq!(factorization.sig.holes, k, "{name}");
    }
}

#[test]
fn shift_relabels_compose_to_the_identity() {
    for k in 2..=9u16 {
        for m in 1..k {
            let fwd = shift_relabel(k, m);
            let back = shift_relabel(k, k - m);
            for (from, mid) in &fwd.map {
                let home = back.map.get(mid).unwrap();
                assert_eq!(home, from, "k={k} m={m} {from}");
            }
        }
    }
}

#[test]
fn cap_dictionaries_are_total_and_kill_only_the_capped_hole() {
    for k in 2..=9u16 {
        for j in 1..=k {
            let dict = cap_dictionary(k, j);
            assert_eq!(dict.hole, j);
            for i in 1..=k {
                assert!(dict.map.contains_key(&format!("a{i}")));
                assert!(dict.map.contains_key(&format!("b{i}")));
                let d = dict.map.get(&format!("d{i}")).unwrap();
                assert_eq!(d.is_none(), i == j, "k={k} j={j} d{i}");
            }
            assert_eq!(dict.map.get(&format!("b{j}")).unwrap().as_deref(), Some("b"));
            let survivors: std::collections::BTreeSet<&str> = dict
                .map
                .values()
                .flatten()
                .map(String::as_str)
                .filter(|n| n.starts_with('d'))
                .collect();
            assert_eq!(survivors.len(), (k - 1) as usize, "k={k} j={j}");
        }
    }
}

#[test]
fn sample_window_exchange_has_a_replayable_certificate() {
    let atlas = standard_atlas(3).unwrap();
    let sig = SurfaceSig::torus_with_holes(3);
    let word = |names: [&str; 3]| Factorization {
        sig,
        factors: names.into_iter().map(TwistFactor::plain).collect(),
    };
    let from = word(["b", "a1", "b1"]);
    let to = word(["a1", "b1", "a2"]);
    let script = find_window_certificate(&atlas, &from, &to)
        .unwrap()
        .expect("certificate exists");
    assert!(script.steps.len() <= 3);
    let trace = replay(&catalog::Catalog, &atlas, &from, &script);
    // A three-factor window is not itself a boundary relation, so the
    // relation-preserving replay must reject it; the raw moves still apply.
    assert!(trace.is_err());
    let mut state = from;
    for step in &script.steps {
        state = match step {
            hurwitz::Step::L(i) => {
                hurwitz::hurwitz_move(&atlas, &state, *i, hurwitz::MoveDir::Left).unwrap()
            }
            hurwitz::Step::R(i) => {
                hurwitz::hurwitz_move(&atlas, &state, *i, hurwitz::MoveDir::Right).unwrap()
            }
            hurwitz::Step::Rot(j) => state.rotated(*j),
            other => panic!("unexpected step {other:?}"),
        };
    }
    assert!(factorwise_equal(&atlas, &state, &to).unwrap());
}

#[test]
fn capping_a_catalog_row_matches_the_shipped_script_endpoint() {
    let CatalogEntry::Relation {
        factorization: n2, ..
    } = catalog::get("N2").unwrap()
    else {
        panic!()
    };
    let CatalogEntry::Relation {
        factorization: n1, ..
    } = catalog::get("N1").unwrap()
    else {
        panic!()
    };
    let CatalogEntry::Script { script, .. } = catalog::get("N2.cap2").unwrap() else {
        panic!()
    };
    let atlas = standard_atlas(2).unwrap();
    let trace = replay(&catalog::Catalog, &atlas, &n2, &script).unwrap();
    let end_atlas = standard_atlas(1).unwrap();
    assert!(factorwise_equal(&end_atlas, trace.final_state(), &n1).unwrap());
}
