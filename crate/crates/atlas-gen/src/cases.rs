//! Emits the shipped relation files and move scripts, verifying everything
//! as it goes.
//!
//! Each script is rebuilt from a case table rather than copied in verbatim:
//! the table fixes the capping/relabeling steps and a chain of plain
//! waypoint words, and the elementary moves between consecutive words are
//! found mechanically. A hop is either a single adjacent move (a
//! commutation) or a rewrite of a three-factor window taken from a small
//! list of exchange patterns, each certified once by exhaustive search on an
//! isolated three-factor word and then lifted to the full word by position.
//! Every finished script is replayed from its source before being written,
//! so a generated file can only exist if the full derivation checks out.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use holed_torus::catalog::{cap_dictionary, find_window_certificate, shift_relabel};
use holed_torus::hurwitz::{
    factorwise_equal, hurwitz_move, is_relation, replay, serialize_factorization, serialize_script,
    AtlasProvider, CapDict, Factorization, MoveDir, MoveScript, RelabelMap, Step, TwistFactor,
};
use holed_torus::mcg::validate_model;
use holed_torus::surface_model::{
    parse_atlas, serialize_atlas, CanonicalCurve, CurveAtlas, SurfaceSig,
};

type Word = [&'static str; 12];

// ---------------------------------------------------------------------------
// Relation words. Factors act right to left; every product equals the
// boundary multi-twist of the surface with the stated number of holes.
// ---------------------------------------------------------------------------

const N1: Word = ["a1", "b", "a1", "b", "a1", "b", "a1", "b", "a1", "b", "a1", "b"];
const N2: Word = ["a1", "b", "a2", "a1", "b", "a2", "a1", "b", "a2", "a1", "b", "a2"];
const N3: Word = ["a1", "a1", "a1", "b1", "a2", "a2", "a2", "b2", "a3", "a3", "a3", "b3"];
const N4: Word = ["a1", "a1", "b1", "a2", "a2", "b2", "a3", "a3", "b3", "a4", "a4", "b4"];
const N5: Word = ["a1", "a1", "b1", "a2", "a2", "b2", "a3", "b3", "a4", "b4", "a5", "b5"];
const N6: Word = ["a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4", "a5", "b5", "a6", "b6"];
const N7: Word = ["a1", "b1", "a2", "b2", "a3", "b3", "b4", "a5", "b5", "b6", "a7", "b7"];
const N8: Word = ["a1", "b1", "a2", "b2", "b3", "a4", "b4", "b5", "b6", "a7", "b7", "b8"];
const N9: Word = ["a1", "b1", "b2", "b3", "a4", "b4", "b5", "b6", "a7", "b7", "b8", "b9"];
const S8: Word = ["a1", "b1", "b2", "a3", "b3", "b4", "a5", "b5", "b6", "a7", "b7", "b8"];
const N4_ALT: Word = ["a1", "a3", "b", "a2", "a4", "b", "a1", "a3", "b", "a2", "a4", "b"];
const N3_STAR: Word = ["a1", "a2", "a3", "b", "a1", "a2", "a3", "b", "a1", "a2", "a3", "b"];

const KO9: Word = [
    "KObeta4", "KOsigma3", "KOsigma6", "a1", "KObeta1", "KOsigma4", "KOsigma7", "a4", "KObeta7",
    "KOsigma5", "KOsigma8", "a7",
];
const T8: Word = [
    "a1", "a7", "Tbeta6bar", "Tbeta2", "Tsigma2", "Tsigma1", "a5", "a3", "Tbeta2bar", "Tbeta6",
    "Tsigma4", "Tsigma7",
];

/// Derived curves added to the standard nine-hole atlas for the sporadic
/// nine-hole word: `(name, base curve, conjugating twist word)`.
const KO9_DERIVED: &[(&str, &str, &str)] = &[
    ("KObeta4", "b1", "a1"),
    ("KObeta1", "b4", "a4"),
    ("KObeta7", "b7", "a7"),
    ("KOsigma3", "b8", "~KObeta4"),
    ("KOsigma6", "b9", "~KObeta4"),
    ("KOsigma4", "b2", "~KObeta1"),
    ("KOsigma7", "b3", "~KObeta1"),
    ("KOsigma5", "b5", "~KObeta7"),
    ("KOsigma8", "b6", "~KObeta7"),
];

/// Derived curves for the sporadic eight-hole word.
const T8_DERIVED: &[(&str, &str, &str)] = &[
    ("Tbeta2", "b3", "a3"),
    ("Tbeta6", "b7", "a7"),
    ("Tbeta2bar", "b4", "~a5"),
    ("Tbeta6bar", "b8", "~a1"),
    ("Tsigma2", "b1", "~Tbeta2"),
    ("Tsigma1", "b2", "~Tbeta2"),
    ("Tsigma4", "b5", "~Tbeta6"),
    ("Tsigma7", "b6", "~Tbeta6"),
];

// ---------------------------------------------------------------------------
// Waypoint words for the capping scripts. Consecutive words in a chain
// differ by one commutation or one certified window rewrite.
// ---------------------------------------------------------------------------

// Nine holes down to eight.
const N9_I7: Word = ["a1", "b1", "b2", "b3", "a4", "b4", "b5", "b6", "a7", "b7", "b", "b8"];
const N9_W7: Word = ["a1", "b1", "b2", "b3", "a4", "b4", "b5", "b6", "a7", "b7", "b8", "b"];

// Eight holes down to seven.
const N8_WP: Word = ["a2", "b2", "a3", "b3", "b4", "a5", "b5", "b6", "b7", "a1", "b", "b1"];
const N8_WM: Word = ["a2", "b2", "a3", "b3", "b4", "a5", "b5", "b6", "b", "a7", "b7", "b1"];
const N8_I4: Word = ["a2", "b2", "a3", "b3", "b4", "a5", "b5", "b", "b6", "a7", "b7", "b1"];
const N8_WJ3: Word = ["a7", "b7", "a1", "b1", "b", "a2", "b2", "b3", "b4", "a5", "b5", "b6"];
const N8_S1: Word = ["b", "a5", "b", "b5", "b6", "a7", "b7", "b1", "b2", "a3", "b3", "b4"];
const N8_S2: Word = ["a5", "b5", "b", "b6", "a7", "b7", "b1", "b2", "a3", "b3", "b4", "b"];
const N8_S3: Word = ["a5", "b5", "b6", "b", "a7", "b7", "b1", "b2", "a3", "b3", "b4", "b"];
const N8_S4: Word = ["a5", "b5", "b6", "b", "a7", "b7", "b1", "b2", "a3", "b3", "b", "b4"];
const N8_S5: Word = ["a5", "b5", "b6", "b", "a7", "b7", "b1", "b2", "a3", "b", "b3", "b4"];
const N8_S6: Word = ["a5", "b5", "b6", "a7", "b7", "a1", "b1", "b2", "a3", "b", "b3", "b4"];

// Sporadic eight-hole family down to seven.
const S8_J8: Word = ["a1", "b1", "b2", "a3", "b3", "b4", "a5", "b5", "b6", "a7", "b7", "b"];
const S8_WD: Word = ["a3", "b3", "b4", "a5", "b5", "b6", "a7", "b7", "b", "a1", "b1", "b2"];
const S8_WE: Word = ["a5", "b5", "b6", "a7", "b7", "b", "a1", "b1", "b2", "a3", "b3", "b4"];
const S8_WF: Word = ["a7", "b7", "b", "a1", "b1", "b2", "a3", "b3", "b4", "a5", "b5", "b6"];

// Seven holes down to six.
const N7_W1: Word = ["a1", "b1", "a2", "b2", "a3", "b3", "b4", "a5", "b5", "a6", "b6", "a1"];
const N7_W2: Word = ["a1", "b1", "a2", "b2", "a3", "b3", "b4", "a5", "b5", "b", "a6", "b6"];
const N7_W2S: Word = ["a1", "b1", "a2", "b2", "a3", "b3", "b4", "a5", "b", "b5", "a6", "b6"];
const N7_J4: Word = ["a1", "b1", "a2", "b2", "a3", "b3", "b", "a4", "b4", "b5", "a6", "b6"];
const N7_V1: Word = ["a1", "b1", "b", "a2", "b", "b2", "b3", "a4", "b4", "b5", "a6", "b6"];
const N7_V1A: Word = ["a1", "b1", "b", "a2", "b2", "b", "b3", "a4", "b4", "b5", "a6", "b6"];
const N7_V1B: Word = ["a1", "b1", "b", "a2", "b2", "b3", "b", "a4", "b4", "b5", "a6", "b6"];
const N7_V2: Word = ["a1", "b1", "b", "a2", "b2", "b3", "a4", "b4", "a5", "b5", "a6", "b6"];
const N7_U1: Word = ["b", "a1", "b", "b1", "a2", "b2", "b3", "a4", "b4", "b5", "a6", "b6"];
const N7_U1A: Word = ["a1", "b1", "b", "a2", "b2", "b3", "a4", "b4", "b5", "a6", "b6", "b"];
const N7_U2: Word = ["a1", "b1", "b", "a2", "b2", "b3", "a4", "b4", "b5", "a6", "b", "b6"];
const N7_U2A: Word = ["a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4", "b5", "a6", "b", "b6"];

// Five holes down to four.
const N5_P1: Word = ["b", "a1", "b", "a1", "b1", "a2", "a2", "b2", "a3", "b3", "a4", "b4"];
const N5_P2: Word = ["a1", "b", "a1", "b1", "a2", "a2", "b2", "a3", "b3", "a4", "b", "b4"];
const N5_P3: Word = ["a1", "b", "a1", "b1", "a2", "a2", "b2", "a3", "a3", "b3", "a4", "b4"];
const N5_Q1: Word = ["a1", "a1", "b1", "a2", "b", "a2", "b", "b2", "a3", "b3", "a4", "b4"];
const N5_Q2: Word = ["a1", "a1", "b1", "a2", "b", "a2", "b2", "b", "a3", "b3", "a4", "b4"];
const N5_Q3: Word = ["a1", "a1", "b1", "a2", "b", "a2", "b2", "a3", "b3", "a4", "a4", "b4"];
const N5_R1: Word = ["a1", "b", "a1", "b", "a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4"];
const N5_R2: Word = ["a1", "b", "b", "a1", "b", "b1", "a2", "b2", "a3", "b3", "a4", "b4"];
const N5_R3: Word = ["a1", "b", "b", "a1", "b1", "b", "a2", "b2", "a3", "b3", "a4", "b4"];
const N5_R4: Word = ["a1", "b", "b", "a1", "b1", "a2", "b2", "a3", "a3", "b3", "a4", "b4"];
const N5_R5: Word = ["a1", "b", "a1", "b1", "a2", "b2", "a3", "a3", "b3", "a4", "a4", "b4"];

// Four holes down to three (one chain shared by all four holes).
const N4_G1: Word = ["a1", "b", "a1", "b", "a1", "b1", "a2", "a2", "b2", "a3", "a3", "b3"];
const N4_G2: Word = ["a1", "b", "a1", "a1", "b1", "a2", "a2", "a2", "b2", "a3", "a3", "b3"];

// Three holes down to two (one chain shared by all three holes).
const N3_L1: Word = ["a1", "a1", "b1", "a2", "b", "a2", "a2", "b2", "a1", "a1", "a1", "b"];
const N3_L1C: Word = ["a1", "a1", "b1", "a2", "b", "a2", "b2", "a1", "b", "a1", "a1", "b"];
const N3_L2: Word = ["a1", "a1", "b1", "a2", "b", "a2", "a1", "b", "a2", "a1", "a1", "b"];
const N3_L3: Word = ["b", "a1", "b1", "a2", "b", "a2", "a1", "b", "a2", "a1", "b", "a1"];
const N3_L4: Word = ["a2", "b", "a1", "a2", "b", "a2", "a1", "b", "a2", "a1", "b", "a1"];
const N3_L5: Word = ["a2", "b", "a2", "a1", "b", "a2", "a1", "b", "a2", "a1", "b", "a1"];

// Two holes down to one.
const N2_M1: Word = ["a1", "b", "a1", "b", "a1", "b", "a1", "b", "a1", "a1", "b", "a1"];

// Four-hole alternate word.
const ALT_W1: Word = ["b", "a1", "b1", "a2", "b2", "a3", "a3", "b3", "a4", "a4", "b4", "a1"];
const ALT_W2: Word = ["b", "a1", "b1", "b", "a2", "b2", "a3", "b3", "a4", "a4", "b4", "a1"];
const ALT_W3: Word = ["b", "a1", "b1", "b", "a2", "b2", "b", "a3", "b3", "a4", "b4", "a1"];
const ALT_W4: Word = ["b", "a1", "b1", "b", "a2", "b2", "b", "a3", "b3", "b", "a4", "b4"];
const ALT_W5: Word = ["a2", "b", "a1", "b", "a2", "b2", "b", "a3", "b3", "b", "a4", "b4"];
const ALT_W6: Word = ["a2", "b", "a1", "a3", "b", "a2", "b", "a3", "b3", "b", "a4", "b4"];
const ALT_W7: Word = ["a2", "b", "a1", "a3", "b", "a2", "a4", "b", "a3", "b", "a4", "b4"];
const ALT_W8: Word = ["a2", "b", "a1", "a3", "b", "a2", "a4", "b", "a3", "a1", "b", "a4"];
const ALT_W9: Word = ["a1", "a3", "b", "a2", "a4", "b", "a1", "a3", "b", "a4", "a2", "b"];

// Three-hole alternate word.
const STAR_P1: Word = ["a1", "a1", "b1", "a2", "b", "a2", "a2", "b2", "a3", "a3", "a3", "b3"];
const STAR_V1: Word = ["a1", "a2", "b", "a1", "a2", "a2", "b2", "a3", "a3", "a3", "b3", "a1"];
const STAR_P2: Word = ["a1", "a2", "b", "a1", "a2", "b2", "a3", "b", "a3", "a3", "b3", "a1"];
const STAR_V2: Word = ["a1", "a2", "b", "a1", "a2", "a3", "b", "a2", "a3", "a3", "b3", "a1"];
const STAR_P3: Word = ["a1", "a2", "b", "a1", "a2", "a3", "b", "a2", "a3", "b3", "a1", "b"];
const STAR_V3: Word = ["a1", "a2", "b", "a1", "a2", "a3", "b", "a2", "a3", "a1", "b", "a3"];
const STAR_Y0: Word = ["b", "a1", "a2", "a3", "b", "a2", "a1", "a3", "b", "a3", "a1", "a2"];
const STAR_Y1: Word = ["b", "a1", "a2", "a3", "b", "a1", "a2", "a3", "b", "a3", "a1", "a2"];
const STAR_Y2: Word = ["b", "a1", "a2", "a3", "b", "a1", "a2", "a3", "b", "a1", "a3", "a2"];

/// One capping script: cap hole `j` of `source`, relabel by `shift`, then
/// walk the waypoints to the target word of the smaller surface.
struct CapCase {
    source: &'static str,
    target: &'static str,
    target_word: Word,
    j: u16,
    shift: u16,
    waypoints: &'static [Word],
}

fn cap_cases() -> Vec<CapCase> {
    let mut cases = Vec::new();
    let mut add = |source: &'static str,
                   target: &'static str,
                   target_word: Word,
                   specs: &[(u16, u16, &'static [Word])]| {
        for &(j, shift, waypoints) in specs {
            cases.push(CapCase {
                source,
                target,
                target_word,
                j,
                shift,
                waypoints,
            });
        }
    };

    add(
        "N9",
        "N8",
        N8,
        &[
            (9, 0, &[]),
            (8, 0, &[N9_W7]),
            (7, 0, &[N9_I7, N9_W7]),
            (6, 3, &[]),
            (5, 3, &[N9_W7]),
            (4, 3, &[N9_I7, N9_W7]),
            (3, 6, &[]),
            (2, 6, &[N9_W7]),
            (1, 6, &[N9_I7, N9_W7]),
        ],
    );
    add(
        "N8",
        "N7",
        N7,
        &[
            (8, 1, &[N8_WP]),
            (7, 1, &[]),
            (6, 1, &[]),
            (5, 1, &[N8_WM]),
            (4, 1, &[N8_I4, N8_WM]),
            (3, 6, &[]),
            (2, 6, &[N8_WJ3]),
            (1, 4, &[N8_S1, N8_S2, N8_S3, N8_S4, N8_S5, N8_S6]),
        ],
    );
    add(
        "S8",
        "N7",
        N7,
        &[
            (8, 0, &[]),
            (7, 0, &[S8_J8]),
            (6, 2, &[]),
            (5, 2, &[S8_WD]),
            (4, 4, &[]),
            (3, 4, &[S8_WE]),
            (2, 6, &[]),
            (1, 6, &[S8_WF]),
        ],
    );
    add(
        "N7",
        "N6",
        N6,
        &[
            (7, 0, &[N7_W1, N7_W2, N7_W2S]),
            (6, 0, &[N7_W2S]),
            (5, 0, &[]),
            (4, 0, &[]),
            (3, 0, &[N7_J4]),
            (2, 0, &[N7_V1, N7_V1A, N7_V1B, N7_V2]),
            (1, 0, &[N7_U1, N7_U1A, N7_U2, N7_U2A]),
        ],
    );
    add(
        "N6",
        "N5",
        N5,
        &[
            (6, 0, &[]),
            (5, 1, &[]),
            (4, 2, &[]),
            (3, 3, &[]),
            (2, 4, &[]),
            (1, 0, &[]),
        ],
    );
    add(
        "N5",
        "N4",
        N4,
        &[
            (5, 0, &[N5_P1, N5_P2, N5_P3]),
            (4, 0, &[]),
            (3, 0, &[]),
            (2, 0, &[N5_Q1, N5_Q2, N5_Q3]),
            (1, 0, &[N5_R1, N5_R2, N5_R3, N5_R4, N5_R5]),
        ],
    );
    const G: &[Word] = &[N4_G1, N4_G2];
    add(
        "N4",
        "N3",
        N3,
        &[(4, 0, G), (3, 1, G), (2, 2, G), (1, 0, G)],
    );
    const L: &[Word] = &[N3_L1, N3_L1C, N3_L2, N3_L3, N3_L4, N3_L5];
    add("N3", "N2", N2, &[(3, 0, L), (2, 1, L), (1, 0, L)]);
    add("N2", "N1", N1, &[(2, 0, &[N2_M1]), (1, 0, &[N2_M1])]);
    cases
}

// ---------------------------------------------------------------------------
// Atlas provider backed by the freshly generated standard atlases.
// ---------------------------------------------------------------------------

struct GenProvider {
    standard: BTreeMap<u16, Arc<CurveAtlas>>,
}

impl AtlasProvider for GenProvider {
    fn atlas(&self, holes: u16) -> Option<Arc<CurveAtlas>> {
        self.standard.get(&holes).cloned()
    }

    fn relabel_map(&self, holes: u16, name: &str) -> Option<RelabelMap> {
        let m: u16 = name.strip_prefix("shift")?.parse().ok()?;
        (m > 0 && m < holes).then(|| shift_relabel(holes, m))
    }

    fn cap_dict(&self, holes: u16, name: &str) -> Option<CapDict> {
        let j: u16 = name.strip_prefix("cap")?.parse().ok()?;
        (holes >= 2 && j >= 1 && j <= holes).then(|| cap_dictionary(holes, j))
    }
}

// ---------------------------------------------------------------------------
// Elementary hop search.
// ---------------------------------------------------------------------------

/// The three-factor window rewrites available on one surface, with
/// certificates found lazily and cached.
struct Windows {
    atlas: Arc<CurveAtlas>,
    holes: u16,
    transitions: Vec<([String; 3], [String; 3])>,
    certs: Vec<Option<Option<Vec<Step>>>>,
}

impl Windows {
    fn new(atlas: &Arc<CurveAtlas>) -> Self {
        let k = atlas.sig().holes;
        let have = |n: &str| atlas.get(n).is_some();
        let mut transitions: Vec<([String; 3], [String; 3])> = Vec::new();
        let mut push_both = |x: [String; 3], y: [String; 3]| {
            transitions.push((x.clone(), y.clone()));
            transitions.push((y, x));
        };
        for i in 1..=k {
            let nx = i % k + 1;
            let ai = format!("a{i}");
            let bi = format!("b{i}");
            let an = format!("a{nx}");
            let base = "b".to_string();
            if have(&ai) && have(&bi) && have(&an) {
                // The four-step exchange cycle around one handle position.
                let ring = [
                    [base.clone(), ai.clone(), bi.clone()],
                    [ai.clone(), bi.clone(), an.clone()],
                    [bi.clone(), an.clone(), base.clone()],
                    [an.clone(), base.clone(), ai.clone()],
                ];
                for q in 0..4 {
                    push_both(ring[q].clone(), ring[(q + 1) % 4].clone());
                }
            }
            if have(&ai) {
                // Two crossing curves satisfy the braid exchange.
                push_both(
                    [ai.clone(), base.clone(), ai.clone()],
                    [base.clone(), ai.clone(), base.clone()],
                );
            }
        }
        let certs = vec![None; transitions.len()];
        Windows {
            atlas: Arc::clone(atlas),
            holes: k,
            transitions,
            certs,
        }
    }

    /// Certificate for transition `idx` on an isolated three-factor word.
    fn cert(&mut self, idx: usize) -> Option<Vec<Step>> {
        if self.certs[idx].is_none() {
            let (from, to) = &self.transitions[idx];
            let mk = |names: &[String; 3]| Factorization {
                sig: SurfaceSig::torus_with_holes(self.holes),
                factors: names.iter().map(TwistFactor::plain).collect(),
            };
            let found = find_window_certificate(&self.atlas, &mk(from), &mk(to))
                .expect("window certificate search failed")
                .map(|script| script.steps);
            self.certs[idx] = Some(found);
        }
        self.certs[idx].clone().unwrap()
    }
}

fn plain_fact(holes: u16, names: &[&str]) -> Factorization {
    Factorization {
        sig: SurfaceSig::torus_with_holes(holes),
        factors: names.iter().map(|n| TwistFactor::plain(*n)).collect(),
    }
}

fn curve_tuple(atlas: &Arc<CurveAtlas>, fact: &Factorization) -> Vec<CanonicalCurve> {
    fact.factors
        .iter()
        .map(|f| {
            holed_torus::hurwitz::realized_curve(atlas, f)
                .expect("factor references a known curve")
                .canonical()
        })
        .collect()
}

/// Rotation `s` with `fact.rotated(s)` factorwise equal to `goal`, if any.
fn align_rotation(
    atlas: &Arc<CurveAtlas>,
    fact: &Factorization,
    goal: &[CanonicalCurve],
) -> Option<usize> {
    let tuple = curve_tuple(atlas, fact);
    let n = tuple.len();
    if n != goal.len() {
        return None;
    }
    (0..n).find(|&s| (0..n).all(|p| tuple[(p + s) % n] == goal[p]))
}

/// Finds one elementary hop from `state` to `goal`: an optional rotation, a
/// single move or one lifted window certificate, and an aligning rotation.
fn find_macro(win: &mut Windows, state: &Factorization, goal: &Factorization) -> Option<Vec<Step>> {
    let atlas = Arc::clone(&win.atlas);
    let n = state.len();
    let goal_tuple = curve_tuple(&atlas, goal);

    // A pure rotation, in case two chain entries only differ by one.
    if let Some(s) = align_rotation(&atlas, state, &goal_tuple) {
        return Some(if s == 0 { vec![] } else { vec![Step::Rot(s)] });
    }

    fn name(f: &TwistFactor) -> Option<&str> {
        f.conj.is_empty().then_some(f.base.as_str())
    }

    // Window rewrites. Window start `s` (0-based, cyclic) is reached either
    // in place or by rotating the wrapping start to the front.
    for idx in 0..win.transitions.len() {
        let (from, _) = win.transitions[idx].clone();
        for s in 0..n {
            let matches = (0..3).all(|off| {
                name(&state.factors[(s + off) % n]).is_some_and(|nm| nm == from[off])
            });
            if !matches {
                continue;
            }
            let (rot, p0) = if s + 3 <= n { (0, s) } else { (s, 0) };
            let Some(cert) = win.cert(idx) else { break };
            let mut steps = Vec::new();
            let mut cur = if rot > 0 {
                steps.push(Step::Rot(rot));
                state.rotated(rot)
            } else {
                state.clone()
            };
            for step in &cert {
                let (i, dir) = match step {
                    Step::L(i) => (i + p0, MoveDir::Left),
                    Step::R(i) => (i + p0, MoveDir::Right),
                    other => panic!("unexpected certificate step {other}"),
                };
                cur = hurwitz_move(&atlas, &cur, i, dir).expect("certified move applies");
                steps.push(match dir {
                    MoveDir::Left => Step::L(i),
                    MoveDir::Right => Step::R(i),
                });
            }
            if let Some(s2) = align_rotation(&atlas, &cur, &goal_tuple) {
                if s2 > 0 {
                    steps.push(Step::Rot(s2));
                }
                return Some(steps);
            }
        }
    }

    // Single adjacent moves (commutations of disjoint curves and the like).
    for s in 0..n {
        let (rot, p) = if s + 1 < n { (0, s + 1) } else { (n - 1, 1) };
        for dir in [MoveDir::Left, MoveDir::Right] {
            let mut steps = Vec::new();
            let base = if rot > 0 {
                steps.push(Step::Rot(rot));
                state.rotated(rot)
            } else {
                state.clone()
            };
            let moved = hurwitz_move(&atlas, &base, p, dir).expect("move in range");
            if let Some(s2) = align_rotation(&atlas, &moved, &goal_tuple) {
                steps.push(match dir {
                    MoveDir::Left => Step::L(p),
                    MoveDir::Right => Step::R(p),
                });
                if s2 > 0 {
                    steps.push(Step::Rot(s2));
                }
                return Some(steps);
            }
        }
    }
    None
}

fn word_of(fact: &Factorization) -> String {
    fact.factors
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Walks `state` through `chain`, returning the accumulated steps. After a
/// hop is verified factorwise, the state is replaced by the plain chain word
/// (factorwise-equal words behave identically under all further moves).
fn hop_steps(
    win: &mut Windows,
    start: &Factorization,
    chain: &[Word],
    label: &str,
) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut state = start.clone();
    for word in chain {
        let goal = plain_fact(win.holes, word);
        let hop = find_macro(win, &state, &goal).unwrap_or_else(|| {
            panic!(
                "{label}: no elementary hop\n  from: {}\n  to:   {}",
                word_of(&state),
                word_of(&goal)
            )
        });
        steps.extend(hop);
        state = goal;
    }
    steps
}

/// Replays `steps` from `start` and checks the endpoint against `goal`.
fn verified_script(
    provider: &GenProvider,
    atlas: &Arc<CurveAtlas>,
    start: &Factorization,
    goal_atlas: &Arc<CurveAtlas>,
    goal: &Factorization,
    steps: Vec<Step>,
    label: &str,
) -> MoveScript {
    let script = MoveScript { steps };
    let trace = replay(provider, atlas, start, &script)
        .unwrap_or_else(|e| panic!("{label}: replay failed: {e}"));
    let end = trace.final_state();
    let ok = factorwise_equal(goal_atlas, end, goal)
        .unwrap_or_else(|e| panic!("{label}: endpoint comparison failed: {e}"));
    assert!(
        ok,
        "{label}: endpoint {} does not match {}",
        word_of(end),
        word_of(goal)
    );
    script
}

/// Appends the derived sporadic curves to a standard atlas, revalidates the
/// model, and returns the enlarged atlas together with its serialized form.
fn sporadic_atlas(
    base: &Arc<CurveAtlas>,
    derived: &[(&str, &str, &str)],
) -> (Arc<CurveAtlas>, String) {
    let mut text = serialize_atlas(base);
    for (name, from, conj) in derived {
        text.push_str(&format!("curve {name} from={from} conj={conj}\n"));
    }
    let atlas = Arc::new(parse_atlas(&text).expect("derived atlas parses"));
    let report = validate_model(&atlas);
    assert!(
        report.passed(),
        "derived atlas fails validation: {:?}",
        report.first_failure()
    );
    (Arc::new(parse_atlas(&serialize_atlas(&atlas)).expect("round trip")), serialize_atlas(&atlas))
}

fn fact_file_name(name: &str) -> String {
    format!("fact_{}.txt", name.to_lowercase().replace('.', "_"))
}

// ---------------------------------------------------------------------------
// Entry point.
// ---------------------------------------------------------------------------

pub fn generate_all(out: &Path, atlases: &[Arc<CurveAtlas>]) {
    let standard: BTreeMap<u16, Arc<CurveAtlas>> = atlases
        .iter()
        .map(|a| (a.sig().holes, Arc::clone(a)))
        .collect();
    let provider = GenProvider {
        standard: standard.clone(),
    };
    let mut written = 0usize;
    let mut write = |file: String, text: &str| {
        fs::write(out.join(&file), text).expect("write data file");
        written += 1;
    };

    // Sporadic atlases.
    let (ko9_atlas, ko9_text) = sporadic_atlas(&standard[&9], KO9_DERIVED);
    write("atlas_ko9.txt".into(), &ko9_text);
    let (t8_atlas, t8_text) = sporadic_atlas(&standard[&8], T8_DERIVED);
    write("atlas_t8.txt".into(), &t8_text);
    println!("sporadic atlases validated");

    // Relation words, each checked to multiply to the boundary multi-twist.
    let mut relations: Vec<(&str, Arc<CurveAtlas>, Factorization)> = Vec::new();
    for (name, k, word) in [
        ("N1", 1, N1),
        ("N2", 2, N2),
        ("N3", 3, N3),
        ("N4", 4, N4),
        ("N5", 5, N5),
        ("N6", 6, N6),
        ("N7", 7, N7),
        ("N8", 8, N8),
        ("N9", 9, N9),
    ] {
        relations.push((name, Arc::clone(&standard[&k]), plain_fact(k, &word)));
    }
    relations.push(("S8", Arc::clone(&standard[&8]), plain_fact(8, &S8)));
    relations.push(("N4.alt", Arc::clone(&standard[&4]), plain_fact(4, &N4_ALT)));
    relations.push(("N3.star", Arc::clone(&standard[&3]), plain_fact(3, &N3_STAR)));
    relations.push(("KO9", Arc::clone(&ko9_atlas), plain_fact(9, &KO9)));
    relations.push(("T8", Arc::clone(&t8_atlas), plain_fact(8, &T8)));

    for (name, atlas, fact) in &relations {
        let ok = is_relation(atlas, fact)
            .unwrap_or_else(|e| panic!("{name}: boundary check failed: {e}"));
        assert!(ok, "{name}: product is not the boundary multi-twist");
        write(fact_file_name(name), &serialize_factorization(fact));
        println!("fact {name}: boundary relation verified");
    }
    let fact_of = |name: &str| -> &Factorization {
        &relations.iter().find(|(n, _, _)| *n == name).unwrap().2
    };

    // Scripts carrying the sporadic words onto the standard family. The
    // endpoints are compared on the sporadic atlases, which contain every
    // curve of the standard ones.
    let ko_steps = vec![
        Step::L(1),
        Step::L(2),
        Step::R(3),
        Step::L(5),
        Step::L(6),
        Step::R(7),
        Step::L(9),
        Step::L(10),
        Step::R(11),
        Step::Rot(2),
    ];
    let script = verified_script(
        &provider,
        &ko9_atlas,
        fact_of("KO9"),
        &ko9_atlas,
        fact_of("N9"),
        ko_steps,
        "KO9.to_N9",
    );
    write("script_ko9_to_n9.txt".into(), &serialize_script(&script));
    println!("script KO9.to_N9: {} steps replayed", script.steps.len());

    let t8_steps = vec![
        Step::L(1),
        Step::L(7),
        Step::L(2),
        Step::L(8),
        Step::L(4),
        Step::L(5),
        Step::L(10),
        Step::L(11),
        Step::Rot(2),
        Step::R(4),
        Step::R(10),
    ];
    let script = verified_script(
        &provider,
        &t8_atlas,
        fact_of("T8"),
        &t8_atlas,
        fact_of("S8"),
        t8_steps,
        "T8.to_S8",
    );
    write("script_t8_to_s8.txt".into(), &serialize_script(&script));
    println!("script T8.to_S8: {} steps replayed", script.steps.len());

    let mut windows: BTreeMap<u16, Windows> = standard
        .iter()
        .map(|(k, a)| (*k, Windows::new(a)))
        .collect();

    // Alternate factorizations of the small surfaces.
    for (label, file, k, source, chain, target) in [
        (
            "N4.to_alt",
            "script_n4_to_alt.txt",
            4u16,
            "N4",
            &[
                ALT_W1, ALT_W2, ALT_W3, ALT_W4, ALT_W5, ALT_W6, ALT_W7, ALT_W8, ALT_W9, N4_ALT,
            ][..],
            "N4.alt",
        ),
        (
            "N3.to_star",
            "script_n3_to_star.txt",
            3u16,
            "N3",
            &[
                STAR_P1, STAR_V1, STAR_P2, STAR_V2, STAR_P3, STAR_V3, STAR_Y0, STAR_Y1, STAR_Y2,
                N3_STAR,
            ][..],
            "N3.star",
        ),
    ] {
        let win = windows.get_mut(&k).unwrap();
        let steps = hop_steps(win, fact_of(source), chain, label);
        let script = verified_script(
            &provider,
            &standard[&k],
            fact_of(source),
            &standard[&k],
            fact_of(target),
            steps,
            label,
        );
        write(file.into(), &serialize_script(&script));
        println!("script {label}: {} steps replayed", script.steps.len());
    }

    // Capping scripts.
    for case in cap_cases() {
        let label = format!("{}.cap{}", case.source, case.j);
        let source = fact_of(case.source).clone();
        let k = source.sig.holes;
        let atlas_k = &standard[&k];
        let small = k - 1;
        let atlas_small = &standard[&small];

        let mut steps = vec![Step::Cap(case.j, format!("cap{}", case.j))];
        let mut state = holed_torus::hurwitz::cap(&source, case.j, &cap_dictionary(k, case.j))
            .unwrap_or_else(|e| panic!("{label}: cap failed: {e}"));
        if case.shift > 0 {
            let map = shift_relabel(small, case.shift);
            steps.push(Step::Relabel(map.name.clone()));
            state = holed_torus::hurwitz::relabel(&state, &map)
                .unwrap_or_else(|e| panic!("{label}: relabel failed: {e}"));
        }

        let mut chain: Vec<Word> = case.waypoints.to_vec();
        chain.push(case.target_word);
        let win = windows.get_mut(&small).unwrap();
        steps.extend(hop_steps(win, &state, &chain, &label));

        let script = verified_script(
            &provider,
            atlas_k,
            &source,
            atlas_small,
            fact_of(case.target),
            steps,
            &label,
        );
        write(
            format!(
                "script_cap_{}_{}.txt",
                case.source.to_lowercase(),
                case.j
            ),
            &serialize_script(&script),
        );
        println!(
            "script {label} -> {}: {} steps replayed",
            case.target,
            script.steps.len()
        );
    }

    println!("wrote {written} case files");
}
