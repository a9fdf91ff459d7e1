//! Randomized laws of the twist calculus: move/inverse cancellation,
//! rotation arithmetic, composition and homology functoriality, conjugation
//! invariance of canonical curves, and text round-trips.

use std::sync::Arc;

use holed_torus::catalog::standard_atlas;
use holed_torus::hurwitz::{
    self, factorwise_equal, hurwitz_move, Factorization, MoveDir, MoveScript, Step, TwistFactor,
};
use holed_torus::mcg::{self, homology_matrix};
use holed_torus::surface_model::{
    parse_word, Basepoint, Curve, CurveAtlas, GroupoidWord, SurfaceSig, TwistRef,
};
use once_cell::sync::Lazy;
use proptest::prelude::*;

static ATLAS3: Lazy<Arc<CurveAtlas>> = Lazy::new(|| standard_atlas(3).unwrap());

const NAMES3: [&str; 10] = ["a1", "a2", "a3", "b", "b1", "b2", "b3", "d1", "d2", "d3"];

fn twist_ref() -> impl Strategy<Value = TwistRef> {
    (0..NAMES3.len(), prop_oneof![Just(-2), Just(-1), Just(1), Just(2)])
        .prop_map(|(i, p)| TwistRef::new(NAMES3[i], p))
}

fn twist_word(max: usize) -> impl Strategy<Value = Vec<TwistRef>> {
    prop::collection::vec(twist_ref(), 0..=max)
}

fn factor() -> impl Strategy<Value = TwistFactor> {
    (0..NAMES3.len(), twist_word(2)).prop_map(|(i, conj)| TwistFactor::new(NAMES3[i], conj))
}

fn factorization() -> impl Strategy<Value = Factorization> {
    prop::collection::vec(factor(), 3..=8).prop_map(|factors| Factorization {
        sig: SurfaceSig::torus_with_holes(3),
        factors,
    })
}

fn inverse_refs(word: &[TwistRef]) -> Vec<TwistRef> {
    word.iter().rev().map(|r| r.inverse()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn a_move_then_its_inverse_restores_the_factorization(
        fact in factorization(),
        pos_seed in 1usize..100,
        left_first in any::<bool>(),
    ) {
        let atlas = &*ATLAS3;
        let pos = 1 + pos_seed % (fact.len() - 1);
        let (first, second) = if left_first {
            (MoveDir::Left, MoveDir::Right)
        } else {
            (MoveDir::Right, MoveDir::Left)
        };
        let there = hurwitz_move(atlas, &fact, pos, first).unwrap();
        let back = hurwitz_move(atlas, &there, pos, second).unwrap();
        prop_assert!(factorwise_equal(atlas, &back, &fact).unwrap());
    }

    #[test]
    fn moves_preserve_the_total_product(
        fact in factorization(),
        pos_seed in 1usize..100,
        dir in any::<bool>(),
    ) {
        let atlas = &*ATLAS3;
        let pos = 1 + pos_seed % (fact.len() - 1);
        let dir = if dir { MoveDir::Left } else { MoveDir::Right };
        let moved = hurwitz_move(atlas, &fact, pos, dir).unwrap();
        let before = hurwitz::product(atlas, &fact).unwrap();
        let after = hurwitz::product(atlas, &moved).unwrap();
        let sig = fact.sig;
        for g in sig.basis() {
            prop_assert_eq!(before.image(g), after.image(g));
        }
    }

    #[test]
    fn rotations_add_modulo_the_length(
        fact in factorization(),
        r in 0usize..20,
        s in 0usize..20,
    ) {
        let n = fact.len();
        let both = fact.rotated(r % n).rotated(s % n);
        let once = fact.rotated((r + s) % n);
        prop_assert_eq!(both, once);
        prop_assert_eq!(fact.rotated(0), fact);
    }

    #[test]
    fn realized_classes_cancel_with_their_inverses(word in twist_word(4)) {
        let atlas = &*ATLAS3;
        let f = mcg::realize(atlas, &word).unwrap();
        let g = mcg::realize(atlas, &inverse_refs(&word)).unwrap();
        prop_assert!(mcg::compose(&f, &g).unwrap().is_identity());
        prop_assert!(mcg::compose(&g, &f).unwrap().is_identity());
        prop_assert!(mcg::compose(&f, &f.inverse()).unwrap().is_identity());
    }

    #[test]
    fn homology_of_a_composition_is_the_matrix_product(
        left in twist_word(3),
        right in twist_word(3),
    ) {
        let atlas = &*ATLAS3;
        let f = mcg::realize(atlas, &left).unwrap();
        let g = mcg::realize(atlas, &right).unwrap();
        let fg = mcg::compose(&f, &g).unwrap();
        prop_assert_eq!(
            homology_matrix(&fg),
            homology_matrix(&f).mul(&homology_matrix(&g))
        );
    }

    #[test]
    fn canonical_curves_ignore_basepoint_conjugation(
        name_idx in 0..NAMES3.len(),
        conj in twist_word(3),
    ) {
        let atlas = &*ATLAS3;
        let curve = mcg::resolved_curve(atlas, NAMES3[name_idx]).unwrap();
        let f = mcg::realize(atlas, &conj).unwrap();
        let sig = atlas.sig();
        let alpha = parse_word(sig, "alpha", Basepoint(1)).unwrap();
        let u = f.apply(&alpha);
        let conjugated = GroupoidWord::compose(
            &GroupoidWord::compose(&u, curve.word()).unwrap(),
            &u.inverse(),
        )
        .unwrap();
        let moved = Curve::new(conjugated).unwrap();
        prop_assert_eq!(moved.canonical(), curve.canonical());
    }

    #[test]
    fn twisted_curves_of_a_factor_match_the_conjugated_base(
        name_idx in 0..NAMES3.len(),
        conj in twist_word(3),
    ) {
        let atlas = &*ATLAS3;
        let factor = TwistFactor::new(NAMES3[name_idx], conj.clone());
        let realized = hurwitz::realized_curve(atlas, &factor).unwrap();
        let f = mcg::realize(atlas, &conj).unwrap();
        let base = mcg::resolved_curve(atlas, NAMES3[name_idx]).unwrap();
        let expected = f.apply_to_curve(&base);
        prop_assert_eq!(realized.canonical(), expected.canonical());
    }

    #[test]
    fn factorization_text_round_trips(fact in factorization()) {
        let text = hurwitz::serialize_factorization(&fact);
        let parsed = hurwitz::parse_factorization(&text).unwrap();
        prop_assert_eq!(parsed, fact);
    }

    #[test]
    fn script_text_round_trips(
        steps in prop::collection::vec(
            prop_oneof![
                (1usize..12).prop_map(Step::L),
                (1usize..12).prop_map(Step::R),
                (0usize..12).prop_map(Step::Rot),
                twist_word(3).prop_map(Step::Conj),
                (1u16..9).prop_map(|m| Step::Relabel(format!("shift{m}"))),
                (1u16..9).prop_map(|j| Step::Cap(j, format!("cap{j}"))),
            ],
            0..10,
        )
    ) {
        let script = MoveScript { steps };
        let text = hurwitz::serialize_script(&script);
        let parsed = hurwitz::parse_script(&text).unwrap();
        prop_assert_eq!(parsed, script);
    }
}
