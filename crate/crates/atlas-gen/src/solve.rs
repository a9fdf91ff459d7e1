//! Turns the flat model into atlas text.
//!
//! For every curve the tracer extracts its based word and, for every
//! generator arc, the ordered list of transverse crossings. Each crossing is
//! converted into the `(sign, offset, conj)` record the runtime twist
//! machinery consumes, by aligning the crossing's insertion loop with a
//! cyclic rotation of the stored curve word. A final global handedness sign
//! is calibrated against the homology transvection of one twist and then
//! checked for the whole model.

use crate::geom::{assert_clear_of, crossings, Polyline, Pos};
use crate::model::Model;
use crate::words::{
    invert_letters, invert_walls, reduce_letters, reduce_walls, BasisImages, WallLetter,
};
use holed_torus::mcg;
use holed_torus::surface_model::{
    boundary_word, e1_expansion, parse_atlas, serialize_atlas, Basepoint, CurveAtlas, Gen, Letter,
    SurfaceSig,
};
use std::collections::BTreeMap;
use std::sync::Arc;

/// One crossing of a curve with a generator arc, before sign calibration.
pub struct Rec {
    /// Local determinant sign of (curve direction, arc direction).
    pub det: i8,
    /// Insertion loop at `z_1` in basis letters, traversal order.
    pub v: Vec<Letter>,
}

pub struct Traced {
    pub sig: SurfaceSig,
    /// Stored curve words in atlas order, traversal order letters.
    pub stored: Vec<(String, Vec<Letter>)>,
    /// Crossing records per curve, per generator arc, in arc order.
    pub recs: BTreeMap<String, BTreeMap<Gen, Vec<Rec>>>,
}

fn positioned_wall_letters(
    model: &Model,
    p: &Polyline,
    label: &str,
) -> Vec<(Pos, WallLetter)> {
    let mut out: Vec<(Pos, WallLetter)> = Vec::new();
    for (wi, wall) in model.walls.iter().enumerate() {
        for cr in crossings(&wall.poly, p, model.width, &format!("{label} x wall {}", wall.name)) {
            out.push((cr.on_b, WallLetter::new(wi as u16, cr.sign < 0)));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    for w in out.windows(2) {
        assert!(w[0].0 != w[1].0, "{label}: two wall crossings at one point");
    }
    out
}

fn letters_of(positioned: &[(Pos, WallLetter)]) -> Vec<WallLetter> {
    positioned.iter().map(|&(_, l)| l).collect()
}

/// Cyclic word rotated to start just after `at`, preserving orientation.
fn rotate_from(positioned: &[(Pos, WallLetter)], at: Pos) -> Vec<WallLetter> {
    let mut after: Vec<WallLetter> = Vec::new();
    let mut before: Vec<WallLetter> = Vec::new();
    for &(pos, l) in positioned {
        assert!(pos != at, "crossing coincides with a wall crossing");
        if pos > at {
            after.push(l);
        } else {
            before.push(l);
        }
    }
    after.extend(before);
    after
}

pub fn trace(model: &Model) -> Traced {
    let sig = model.sig;
    let z1 = Basepoint(1);

    for hole in &model.holes {
        for wall in &model.walls {
            assert_clear_of(&wall.poly, *hole, model.width, &format!("wall {}", wall.name));
        }
        for c in &model.curves {
            assert_clear_of(&c.cycle, *hole, model.width, &c.name);
            assert_clear_of(&c.conn, *hole, model.width, &format!("{} connector", c.name));
        }
        for p in &model.paths {
            assert_clear_of(&p.poly, *hole, model.width, &format!("arc {}", p.gen));
        }
        assert_clear_of(&model.e1_check, *hole, model.width, "e1 check loop");
    }

    let mut path_letters: BTreeMap<Gen, Vec<(Pos, WallLetter)>> = BTreeMap::new();
    let mut images_input = Vec::new();
    for p in &model.paths {
        let positioned = positioned_wall_letters(model, &p.poly, &p.gen.to_string());
        images_input.push((Letter::new(p.gen, false), letters_of(&positioned)));
        path_letters.insert(p.gen, positioned);
    }
    let images = BasisImages::new(sig, images_input);

    // The derived boundary generator must match its mechanical image.
    let e1_walls = letters_of(&positioned_wall_letters(model, &model.e1_check, "e1 check"));
    let e1_letters = images.invert(&e1_walls, z1, z1);
    let expected = e1_expansion(sig);
    assert_eq!(
        e1_letters, expected,
        "the traced boundary loop around hole 1 disagrees with its stored expansion"
    );

    let mut stored = Vec::new();
    let mut recs: BTreeMap<String, BTreeMap<Gen, Vec<Rec>>> = BTreeMap::new();
    for c in &model.curves {
        let conn = letters_of(&positioned_wall_letters(
            model,
            &c.conn,
            &format!("{} connector", c.name),
        ));
        let cyc = positioned_wall_letters(model, &c.cycle, &c.name);

        let mut based = conn.clone();
        based.extend(letters_of(&cyc));
        based.extend(invert_walls(&conn));
        let based = reduce_walls(based);

        let word = if let Some(i) = c.name.strip_prefix('d').and_then(|s| s.parse::<u16>().ok())
        {
            boundary_word(sig, i)
                .expect("boundary word")
                .letters()
                .to_vec()
        } else {
            images.invert(&based, z1, z1)
        };

        let mut by_gen: BTreeMap<Gen, Vec<Rec>> = BTreeMap::new();
        for p in &model.paths {
            let mut found: Vec<(Pos, Rec)> = Vec::new();
            for cr in crossings(
                &c.cycle,
                &p.poly,
                model.width,
                &format!("{} x {}", c.name, p.gen),
            ) {
                let cycle_from_here = rotate_from(&cyc, cr.on_a);
                let prefix: Vec<WallLetter> = path_letters[&p.gen]
                    .iter()
                    .filter(|&&(pos, _)| {
                        assert!(pos != cr.on_b, "curve crossing coincides with a wall crossing");
                        pos < cr.on_b
                    })
                    .map(|&(_, l)| l)
                    .collect();
                let mut v = prefix.clone();
                v.extend(cycle_from_here);
                v.extend(invert_walls(&prefix));
                let v = images.invert(&reduce_walls(v), z1, z1);
                found.push((cr.on_b, Rec { det: cr.sign, v }));
            }
            found.sort_by(|a, b| a.0.cmp(&b.0));
            if !found.is_empty() {
                by_gen.insert(p.gen, found.into_iter().map(|(_, r)| r).collect());
            }
        }

        stored.push((c.name.clone(), word));
        recs.insert(c.name.clone(), by_gen);
    }

    Traced { sig, stored, recs }
}

fn rotated(word: &[Letter], o: usize) -> Vec<Letter> {
    let mut out = word[o..].to_vec();
    out.extend_from_slice(&word[..o]);
    out
}

/// Splits a reduced word into `(prefix, core)` with `word = prefix core
/// prefix^-1` and `core` cyclically reduced.
fn cyclic_split(word: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
    let mut core = word.to_vec();
    let mut prefix = Vec::new();
    while core.len() >= 2 && *core.first().unwrap() == core.last().unwrap().inverse() {
        prefix.push(core.remove(0));
        core.pop();
    }
    (prefix, core)
}

/// Aligns an insertion loop with a rotation of the stored word: finds
/// `(eps, offset, u)` with `u rot_offset(stored)^eps u^-1 = v`, preferring
/// the shortest `u`.
fn align(stored: &[Letter], v: &[Letter]) -> (i8, usize, Vec<Letter>) {
    let v = reduce_letters(v.to_vec());
    let (pv, kv) = cyclic_split(&v);
    let mut best: Option<(usize, i8, usize, Vec<Letter>)> = None;
    for eps in [1i8, -1] {
        for o in 0..stored.len().max(1) {
            let mut cand = rotated(stored, o % stored.len().max(1));
            if eps < 0 {
                cand = invert_letters(&cand);
            }
            let cand = reduce_letters(cand);
            let (pc, kc) = cyclic_split(&cand);
            if kc != kv {
                continue;
            }
            let mut u = pv.clone();
            u.extend(invert_letters(&pc));
            let u = reduce_letters(u);
            let score = (u.len(), if eps < 0 { 1 } else { 0 }, o);
            if best
                .as_ref()
                .map(|b| score < (b.0, if b.1 < 0 { 1 } else { 0 }, b.2))
                .unwrap_or(true)
            {
                best = Some((u.len(), eps, o, u));
            }
        }
    }
    let (_, eps, o, u) = best.expect("insertion loop does not align with the stored curve word");
    (eps, o, u)
}

/// Renders the traced model as atlas text under the given handedness.
pub fn emit(traced: &Traced, sigma: i8) -> String {
    let sig = traced.sig;
    let mut out = format!("surface {sig}\n");
    for (name, word) in &traced.stored {
        let gw = holed_torus::surface_model::GroupoidWord::from_letters(
            sig,
            Basepoint(1),
            word.iter().copied(),
        )
        .expect("stored word is a loop at z1");
        let mut line = format!(
            "curve {name} word={}",
            holed_torus::surface_model::serialize_word(sig, &gw)
        );
        let by_gen = &traced.recs[name];
        if by_gen.values().any(|v| !v.is_empty()) {
            let mut groups = Vec::new();
            for (gen, list) in by_gen {
                let toks: Vec<String> = list
                    .iter()
                    .map(|rec| {
                        let (eps, o, u) = align(word, &rec.v);
                        let s = eps * rec.det * sigma;
                        let mut tok =
                            format!("{}{}", if s >= 0 { "+" } else { "-" }, o);
                        if !u.is_empty() {
                            let parts: Vec<String> =
                                u.iter().map(|l| l.to_string()).collect();
                            tok.push('~');
                            tok.push_str(&parts.join("."));
                        }
                        tok
                    })
                    .collect();
                groups.push(format!("{gen}:{}", toks.join(",")));
            }
            line.push_str(&format!(" crossings={}", groups.join(";")));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Emits the atlas with the handedness that makes twists act on homology by
/// transvections, and verifies the whole model under it.
pub fn emit_calibrated(traced: &Traced) -> (Arc<CurveAtlas>, String) {
    for sigma in [1i8, -1] {
        let text = emit(traced, sigma);
        let atlas = Arc::new(parse_atlas(&text).expect("emitted atlas must parse"));
        let t = mcg::twist(&atlas, "a1", 1).expect("twist a1");
        let cls = mcg::homology_class(
            traced.sig,
            mcg::resolved_curve(&atlas, "a1").expect("resolve a1").word(),
        );
        if mcg::homology_matrix(&t) == mcg::transvection(traced.sig, &cls) {
            let report = mcg::validate_model(&atlas);
            if !report.passed() {
                let failed: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.to_string())
                    .collect();
                panic!(
                    "model validation failed for {} holes:\n{}",
                    traced.sig.holes,
                    failed.join("\n")
                );
            }
            let canonical = serialize_atlas(&atlas);
            return (atlas, canonical);
        }
    }
    panic!(
        "neither handedness matches the homology transvection for {} holes",
        traced.sig.holes
    );
}
