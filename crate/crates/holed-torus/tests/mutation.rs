//! Deliberate single-datum corruptions of shipped atlases. Each structural
//! check family must catch its corresponding corruption; a validator that
//! stays green on these would be vacuous.

use std::sync::Arc;

use holed_torus::mcg::validate_model;
use holed_torus::surface_model::parse_atlas;

const ATLAS_K1: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/data/atlas_k1.txt"
));
const ATLAS_K2: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/data/atlas_k2.txt"
));

/// Applies a one-line corruption and asserts that the atlas still parses but
/// the named model check now fails.
fn assert_corruption_is_caught(base: &str, from: &str, to: &str, check_name: &str) {
    assert!(base.contains(from), "corruption target `{from}` not found");
    let corrupted = base.replace(from, to);
    let atlas = Arc::new(parse_atlas(&corrupted).expect("corrupted atlas should still parse"));
    let report = validate_model(&atlas);
    let hit = report
        .checks
        .iter()
        .find(|c| c.name == check_name)
        .unwrap_or_else(|| panic!("no check named `{check_name}`"));
    assert!(
        !hit.passed,
        "check `{check_name}` should fail on the corrupted atlas"
    );
}

#[test]
fn flipped_crossing_sign_breaks_the_braid_check() {
    assert_corruption_is_caught(
        ATLAS_K1,
        "curve a1 word=alpha crossings=beta:+0~beta",
        "curve a1 word=alpha crossings=beta:-0~beta",
        "braid a1,b",
    );
}

#[test]
fn doubled_crossing_breaks_the_commutation_check() {
    assert_corruption_is_caught(
        ATLAS_K1,
        "curve b1 word=beta crossings=alpha:+0,-0,-0~alpha;beta:+0,-0",
        "curve b1 word=beta crossings=alpha:+0,-0,-0~alpha;beta:+0,+0",
        "commute b,b1",
    );
}

#[test]
fn tampered_boundary_crossing_breaks_centrality() {
    assert_corruption_is_caught(
        ATLAS_K2,
        "curve d2 word=~h2,e2,h2 crossings=beta:-0,+0;h2:-0",
        "curve d2 word=~h2,e2,h2 crossings=beta:-0,-0;h2:-0",
        "commute d2,b",
    );
}

#[test]
fn tampered_boundary_crossing_breaks_the_abelian_check() {
    assert_corruption_is_caught(
        ATLAS_K2,
        "curve d2 word=~h2,e2,h2 crossings=beta:-0,+0;h2:-0",
        "curve d2 word=~h2,e2,h2 crossings=beta:+0,-0;h2:-0",
        "boundary twists free-abelian",
    );
}

#[test]
fn doubled_curve_word_breaks_the_homology_oracle() {
    assert_corruption_is_caught(
        ATLAS_K1,
        "curve a1 word=alpha crossings=beta:+0~beta",
        "curve a1 word=alpha,alpha crossings=beta:+0~beta",
        "homology a1",
    );
}

#[test]
fn dropped_reroute_breaks_the_one_hole_chain_check() {
    assert_corruption_is_caught(
        ATLAS_K1,
        "curve b word=beta crossings=alpha:-0~alpha",
        "curve b word=beta crossings=alpha:-0",
        "chain relation (ta.tb)^6 = td1",
    );
}

#[test]
fn net_boundary_crossing_is_rejected_at_parse_time() {
    let corrupted = ATLAS_K1.replace(
        "curve d1 word=e1 crossings=alpha:+0,-0~alpha;beta:+0,-0~beta",
        "curve d1 word=e1 crossings=alpha:+0,+0~alpha;beta:+0,-0~beta",
    );
    assert_ne!(corrupted, ATLAS_K1);
    let err = parse_atlas(&corrupted).expect_err("net crossing must be rejected");
    let msg = err.to_string();
    assert!(
        msg.contains("d1") || msg.contains("crossing") || msg.contains("net"),
        "error should name the violated invariant, got: {msg}"
    );
}

#[test]
fn intact_atlases_pass_every_check() {
    for text in [ATLAS_K1, ATLAS_K2] {
        let atlas = Arc::new(parse_atlas(text).unwrap());
        let report = validate_model(&atlas);
        assert!(
            report.passed(),
            "unexpected failure: {:?}",
            report.first_failure()
        );
    }
}
