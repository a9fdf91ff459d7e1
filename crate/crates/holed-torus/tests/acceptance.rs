//! The release gate for this workspace. Each `gate_*` test is one acceptance
//! line; all of them must pass for the catalog and engine to be considered
//! verified. The heavier evidence (full report, randomized laws) is shared
//! or seeded so the whole gate stays deterministic.

use std::sync::Arc;
use std::time::Instant;

use holed_torus::braid::{
    self, apply_braid, arcs_equal, braid_equals, cover_invariants, nine_sheeted_cover,
    regenerate_six_point, ArcRef, BraidWord,
};
use holed_torus::catalog::{self, standard_atlas, CatalogEntry, CheckLine, CheckStatus};
use holed_torus::hurwitz::{
    self, factorwise_equal, global_conjugate, hurwitz_move, is_relation, replay,
    search_equivalence, Factorization, MoveDir, TwistFactor,
};
use holed_torus::mcg::validate_model;
use holed_torus::surface_model::{parse_atlas, SurfaceSig, TwistRef};
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static REPORT: Lazy<Vec<CheckLine>> = Lazy::new(catalog::verify_all);

fn lines_with_prefix(prefix: &str) -> Vec<&'static CheckLine> {
    REPORT.iter().filter(|l| l.name.starts_with(prefix)).collect()
}

fn assert_all_pass(lines: &[&CheckLine], what: &str) {
    assert!(!lines.is_empty(), "no checks found for {what}");
    let failures: Vec<String> = lines
        .iter()
        .filter(|l| l.status != CheckStatus::Pass)
        .map(|l| l.to_string())
        .collect();
    assert!(failures.is_empty(), "{what} failures:\n{}", failures.join("\n"));
}

fn relation(name: &str) -> Factorization {
    match catalog::get(name).unwrap() {
        CatalogEntry::Relation { factorization, .. } => factorization,
        _ => panic!("{name} is not a relation"),
    }
}

#[test]
fn gate_1_all_table_rows_verify_in_under_five_seconds() {
    let started = Instant::now();
    let rows = ["N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "S8"];
    for name in rows {
        let fact = relation(name);
        let atlas = standard_atlas(fact.sig.holes).unwrap();
        assert!(
            is_relation(&atlas, &fact).unwrap(),
            "{name} is not a boundary relation"
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "table verification took {elapsed:?}, budget is 5s"
    );
    println!("[gate 1] PASS — 10 table rows verified in {elapsed:?}");
}

#[test]
fn gate_2_lemma_families_hold_for_three_through_nine_holes() {
    let mut lines = Vec::new();
    for k in 3..=9 {
        lines.extend(lines_with_prefix(&format!("lemma.commute.k{k}")));
        lines.extend(lines_with_prefix(&format!("lemma.braid.k{k}")));
        lines.extend(lines_with_prefix(&format!("lemma.exchange.k{k}")));
    }
    assert_eq!(lines.len(), 21, "7 hole counts x 3 families");
    assert_all_pass(&lines, "lemma families");
    println!("[gate 2] PASS — commutation, braid, and exchange families for k=3..9");
}

#[test]
fn gate_3_every_capping_case_replays_to_the_smaller_row() {
    // Each `script.*.cap*` line replays the shipped script; the replay engine
    // re-checks after every step that the state still factors the boundary
    // multi-twist, and the line only passes if the endpoint is factorwise the
    // target row.
    let lines: Vec<&CheckLine> = REPORT
        .iter()
        .filter(|l| l.name.starts_with("script.") && l.name.contains(".cap"))
        .collect();
    assert_eq!(lines.len(), 52, "9+8+8+7+6+5+4+3+2 capping cases");
    assert_all_pass(&lines, "capping cases");
    println!("[gate 3] PASS — 52 capping cases replayed with per-step checks");
}

#[test]
fn gate_4_sporadic_scripts_and_alternate_forms_certify() {
    let theorem_lines: Vec<&CheckLine> = [
        "script.KO9.to_N9",
        "script.T8.to_S8",
        "script.N4.to_alt",
        "script.N3.to_star",
        "relation.KO9",
        "relation.T8",
        "relation.N4.alt",
        "relation.N3.star",
        "alternate.N2.chain3",
        "alternate.N1.chain2",
        "curves.ko9.beta",
        "curves.t8.beta",
    ]
    .iter()
    .map(|n| {
        REPORT
            .iter()
            .find(|l| &l.name == n)
            .unwrap_or_else(|| panic!("missing check `{n}`"))
    })
    .collect();
    assert_all_pass(&theorem_lines, "sporadic scripts and alternates");
    println!("[gate 4] PASS — sporadic certificates and all four alternate forms");
}

#[test]
fn gate_5_model_validation_passes_and_catches_corruption() {
    let mut lines = lines_with_prefix("atlas.");
    lines.retain(|l| l.name.ends_with(".model"));
    assert_eq!(lines.len(), 11, "9 standard atlases plus 2 sporadic ones");
    assert_all_pass(&lines, "atlas models");

    // The validator must not be vacuous: a flipped crossing sign and a
    // doubled curve word must each trip their own check family.
    let k1 = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/atlas_k1.txt"));
    let cases = [
        (
            "curve a1 word=alpha crossings=beta:+0~beta",
            "curve a1 word=alpha crossings=beta:-0~beta",
            "braid a1,b",
        ),
        (
            "curve a1 word=alpha crossings=beta:+0~beta",
            "curve a1 word=alpha,alpha crossings=beta:+0~beta",
            "homology a1",
        ),
    ];
    for (from, to, check) in cases {
        let corrupted = k1.replace(from, to);
        assert_ne!(corrupted, k1);
        let atlas = Arc::new(parse_atlas(&corrupted).unwrap());
        let report = validate_model(&atlas);
        let hit = report.checks.iter().find(|c| c.name == check).unwrap();
        assert!(!hit.passed, "corruption must trip `{check}`");
    }
    println!("[gate 5] PASS — 11 atlases validated; corruptions are caught");
}

#[test]
fn gate_6_randomized_laws_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6810_5ee4);
    let atlas3 = standard_atlas(3).unwrap();
    let names = ["a1", "a2", "a3", "b", "b1", "b2", "b3", "d1", "d2", "d3"];
    let sig3 = SurfaceSig::torus_with_holes(3);

    // Ten thousand move/inverse-move round-trips on random factorizations.
    for trip in 0..10_000 {
        let len = rng.gen_range(3..=6);
        let factors: Vec<TwistFactor> = (0..len)
            .map(|_| {
                let base = names[rng.gen_range(0..names.len())];
                let conj = if rng.gen_bool(0.3) {
                    vec![TwistRef::new(
                        names[rng.gen_range(0..names.len())],
                        if rng.gen_bool(0.5) { 1 } else { -1 },
                    )]
                } else {
                    Vec::new()
                };
                TwistFactor::new(base, conj)
            })
            .collect();
        let fact = Factorization { sig: sig3, factors };
        let pos = rng.gen_range(1..fact.len());
        let (first, second) = if rng.gen_bool(0.5) {
            (MoveDir::Left, MoveDir::Right)
        } else {
            (MoveDir::Right, MoveDir::Left)
        };
        let there = hurwitz_move(&atlas3, &fact, pos, first).unwrap();
        let back = hurwitz_move(&atlas3, &there, pos, second).unwrap();
        assert!(
            factorwise_equal(&atlas3, &back, &fact).unwrap(),
            "round-trip {trip} failed at position {pos}"
        );
    }

    // One thousand random global conjugations of catalog rows stay relations.
    let pool = ["N1", "N2", "N3", "N4"];
    let mut checked = 0;
    while checked < 1_000 {
        let name = pool[rng.gen_range(0..pool.len())];
        let fact = relation(name);
        let atlas = standard_atlas(fact.sig.holes).unwrap();
        let k = fact.sig.holes;
        let conj_len = rng.gen_range(1..=2);
        let conj: Vec<TwistRef> = (0..conj_len)
            .map(|_| {
                let idx = rng.gen_range(1..=k);
                let name = match rng.gen_range(0..3) {
                    0 => format!("a{idx}"),
                    1 => "b".to_string(),
                    _ => format!("b{idx}"),
                };
                TwistRef::new(name, if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect();
        let moved = global_conjugate(&atlas, &fact, &conj).unwrap();
        assert!(
            is_relation(&atlas, &moved).unwrap(),
            "conjugation {checked} of {name} by {conj:?} broke the relation"
        );
        checked += 1;
    }

    // Search certificates always replay: rotations of a row and random
    // scrambles must both be found and their scripts must replay cleanly.
    let n6 = relation("N6");
    let atlas6 = standard_atlas(6).unwrap();
    let rotated = n6.rotated(2);
    let script = search_equivalence(&atlas6, &n6, &rotated, 10_000).unwrap();
    let trace = replay(&catalog::Catalog, &atlas6, &n6, &script).unwrap();
    assert!(factorwise_equal(&atlas6, trace.final_state(), &rotated).unwrap());

    let n3 = relation("N3");
    for _ in 0..20 {
        let mut scrambled = n3.clone();
        for _ in 0..2 {
            let pos = rng.gen_range(1..scrambled.len());
            let dir = if rng.gen_bool(0.5) {
                MoveDir::Left
            } else {
                MoveDir::Right
            };
            scrambled = hurwitz_move(&atlas3, &scrambled, pos, dir).unwrap();
        }
        let script = search_equivalence(&atlas3, &n3, &scrambled, 50_000).unwrap();
        let trace = replay(&catalog::Catalog, &atlas3, &n3, &script).unwrap();
        assert!(factorwise_equal(&atlas3, trace.final_state(), &scrambled).unwrap());
    }
    println!("[gate 6] PASS — 10^4 round-trips, 10^3 conjugations, search certificates replay");
}

#[test]
fn gate_7_braid_module_identities_hold() {
    // Artin relations decided through the action on the free group.
    for strands in 3..=6 {
        for i in 1..strands - 1 {
            let i = i as i32;
            let lhs = BraidWord::new(strands, vec![i, i + 1, i]).unwrap();
            let rhs = BraidWord::new(strands, vec![i + 1, i, i + 1]).unwrap();
            assert!(braid_equals(&lhs, &rhs).unwrap());
        }
    }
    let far_l = BraidWord::new(5, vec![1, 3]).unwrap();
    let far_r = BraidWord::new(5, vec![3, 1]).unwrap();
    assert!(braid_equals(&far_l, &far_r).unwrap());
    let twisted = BraidWord::new(4, vec![1, 2, 2, 1]).unwrap();
    let plain = BraidWord::new(4, vec![2, 1, 1, 2]).unwrap();
    assert!(braid_equals(&twisted, &plain).unwrap());

    // The nine-sheeted monodromy datum: simple, connected, torus cover.
    let rep = nine_sheeted_cover();
    assert_eq!(rep.degree(), 9);
    assert_eq!(rep.transpositions().len(), 18);
    let inv = cover_invariants(&rep);
    assert!(inv.connected);
    assert_eq!(inv.euler_characteristic, 0);
    assert_eq!(inv.genus, 1);

    // Six-point regeneration composes consistently with the half-twist
    // conjugation law.
    let strands = 8;
    let beta = apply_braid(
        &BraidWord::new(strands, vec![4, -5]).unwrap(),
        &ArcRef::standard(strands, 4).unwrap(),
    )
    .unwrap();
    let gammas = [
        ArcRef::standard(strands, 1).unwrap(),
        ArcRef::standard(strands, 3).unwrap(),
        ArcRef::standard(strands, 5).unwrap(),
        ArcRef::standard(strands, 7).unwrap(),
    ];
    let beta1 = ArcRef::standard(strands, 2).unwrap();
    let beta6 = ArcRef::standard(strands, 6).unwrap();
    let out = regenerate_six_point(&beta, &gammas, beta1, beta6).unwrap();
    assert_eq!(out.len(), 6);
    assert!(arcs_equal(&out[1], &beta).unwrap());
    // The last computed arc is reachable along either pair of inverse half
    // twists; both routes must agree.
    let pull = |g: &ArcRef, arc: &ArcRef| {
        apply_braid(&braid::half_twist(g).inverse(), arc).unwrap()
    };
    let via_b3 = pull(&gammas[0], &pull(&gammas[1], &out[2]));
    let via_b4 = pull(&gammas[2], &pull(&gammas[3], &out[3]));
    assert!(arcs_equal(&out[4], &via_b3).unwrap());
    assert!(arcs_equal(&out[4], &via_b4).unwrap());
    println!("[gate 7] PASS — Artin relations, torus cover invariants, regeneration consistency");
}

#[test]
fn gate_8_absent_optional_datasets_are_skipped_not_passed() {
    let line = REPORT
        .iter()
        .find(|l| l.name == "auxiliary.curve_datasets")
        .expect("report must mention the optional datasets");
    assert_eq!(line.status, CheckStatus::Skip);
    assert_ne!(line.status, CheckStatus::Pass);
    println!("[gate 8] SKIPPED (reported) — {}", line.detail);
}
