//! Hurwitz moves on positive Dehn-twist factorizations of boundary
//! multi-twists, with replayable move scripts and a breadth-first
//! equivalence search.
//!
//! A factor is a positive twist along a named atlas curve pushed through a
//! signed twist word; two factors are equal exactly when their realized
//! curves agree up to rotation and orientation. Move positions are 1-based
//! and act on adjacent pairs, with the first factor of a factorization
//! applied last.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::mcg::{self, MappingClass, McgError};
use crate::surface_model::{
    parse_twist_word, serialize_twist_word, CanonicalCurve, Curve, CurveAtlas, SurfaceSig,
    TwistRef,
};

/// Positive Dehn twist along `conj(base)`, where `conj` is a signed twist
/// word in functional order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistFactor {
    pub base: String,
    pub conj: Vec<TwistRef>,
}

impl TwistFactor {
    pub fn plain(base: impl Into<String>) -> Self {
        TwistFactor {
            base: base.into(),
            conj: Vec::new(),
        }
    }

    pub fn new(base: impl Into<String>, conj: Vec<TwistRef>) -> Self {
        TwistFactor {
            base: base.into(),
            conj,
        }
    }

    /// The factor as a signed twist word: `conj . base . conj^-1`.
    fn twist_word(&self) -> Vec<TwistRef> {
        let mut w = self.conj.clone();
        w.push(TwistRef::new(self.base.clone(), 1));
        w.extend(invert_twist_word(&self.conj));
        w
    }
}

impl fmt::Display for TwistFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "factor base={}", self.base)?;
        if !self.conj.is_empty() {
            write!(f, " conj={}", serialize_twist_word(&self.conj))?;
        }
        Ok(())
    }
}

fn invert_twist_word(word: &[TwistRef]) -> Vec<TwistRef> {
    word.iter().rev().map(TwistRef::inverse).collect()
}

/// Ordered list of positive twist factors with the boundary multi-twist of
/// its surface as the declared target. The first factor is applied last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sig: SurfaceSig,
    pub factors: Vec<TwistFactor>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Cyclic left rotation by `j`: the factor at position `j` (0-based)
    /// becomes the first.
    pub fn rotated(&self, j: usize) -> Factorization {
        if self.factors.is_empty() {
            return self.clone();
        }
        let j = j % self.factors.len();
        let mut factors = self.factors[j..].to_vec();
        factors.extend_from_slice(&self.factors[..j]);
        Factorization {
            sig: self.sig,
            factors,
        }
    }
}

/// One rewriting step of a move script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Left Hurwitz move at 1-based position `i`.
    L(usize),
    /// Right Hurwitz move at 1-based position `i`.
    R(usize),
    /// Global conjugation of every factor by a signed twist word.
    Conj(Vec<TwistRef>),
    /// Cyclic left rotation by `j`.
    Rot(usize),
    /// Renaming of every curve through a registered relabeling.
    Relabel(String),
    /// Capping of boundary hole `j` through a registered dictionary.
    Cap(u16, String),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::L(i) => write!(f, "L {i}"),
            Step::R(i) => write!(f, "R {i}"),
            Step::Conj(w) => write!(f, "CONJ {}", serialize_twist_word(w)),
            Step::Rot(j) => write!(f, "ROT {j}"),
            Step::Relabel(name) => write!(f, "RELABEL {name}"),
            Step::Cap(j, dict) => write!(f, "CAP {j} {dict}"),
        }
    }
}

/// Parsed move script.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveScript {
    pub steps: Vec<Step>,
}

/// Bijective renaming of atlas curves.
#[derive(Clone, Debug)]
pub struct RelabelMap {
    pub name: String,
    pub map: BTreeMap<String, String>,
}

/// Name dictionary describing how curves project when one hole is capped.
/// `None` images mark curves that become trivial.
#[derive(Clone, Debug)]
pub struct CapDict {
    pub name: String,
    pub hole: u16,
    pub map: BTreeMap<String, Option<String>>,
}

/// Error produced by factorization operations.
#[derive(Debug, Error)]
pub enum HurwitzError {
    #[error("move position {position} is out of range for {len} factors")]
    Position { position: usize, len: usize },
    #[error("factorizations live on different surfaces: {left} vs {right}")]
    SignatureMismatch { left: SurfaceSig, right: SurfaceSig },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("capping dictionary `{dict}` is invalid: {detail}")]
    InvalidDictionary { dict: String, detail: String },
    #[error("no relabeling named `{name}` is registered for {holes} holes")]
    UnknownRelabel { name: String, holes: u16 },
    #[error("no capping dictionary named `{name}` is registered for {holes} holes")]
    UnknownDict { name: String, holes: u16 },
    #[error("no atlas is available for {holes} holes")]
    MissingAtlas { holes: u16 },
    #[error("conjugating word does not centralize the boundary multi-twist")]
    NotCentral,
    #[error("cannot cap the last remaining hole")]
    LastHole,
    #[error(transparent)]
    Mcg(#[from] McgError),
}

/// Curve realized by a factor: its base curve pushed through `conj`.
pub fn realized_curve(
    atlas: &Arc<CurveAtlas>,
    factor: &TwistFactor,
) -> Result<Curve, HurwitzError> {
    let base = mcg::resolved_curve(atlas, &factor.base)?;
    if factor.conj.is_empty() {
        return Ok(base);
    }
    let f = mcg::realize(atlas, &factor.conj)?;
    Ok(f.apply_to_curve(&base))
}

/// Mapping class of a factor.
pub fn factor_class(
    atlas: &Arc<CurveAtlas>,
    factor: &TwistFactor,
) -> Result<MappingClass, HurwitzError> {
    let t = mcg::twist(atlas, &factor.base, 1)?;
    if factor.conj.is_empty() {
        return Ok(t);
    }
    let f = mcg::realize(atlas, &factor.conj)?;
    Ok(mcg::compose(&mcg::compose(&f, &t)?, &f.inverse())?)
}

/// Two factors are equal when their realized curves agree up to rotation
/// and orientation.
pub fn factors_equal(
    atlas: &Arc<CurveAtlas>,
    lhs: &TwistFactor,
    rhs: &TwistFactor,
) -> Result<bool, HurwitzError> {
    Ok(realized_curve(atlas, lhs)?.canonical() == realized_curve(atlas, rhs)?.canonical())
}

/// Slotwise factor equality of two factorizations.
pub fn factorwise_equal(
    atlas: &Arc<CurveAtlas>,
    lhs: &Factorization,
    rhs: &Factorization,
) -> Result<bool, HurwitzError> {
    if lhs.sig != rhs.sig || lhs.len() != rhs.len() {
        return Ok(false);
    }
    for (l, r) in lhs.factors.iter().zip(&rhs.factors) {
        if !factors_equal(atlas, l, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product of the factors as a mapping class, first factor applied last.
pub fn product(atlas: &Arc<CurveAtlas>, fact: &Factorization) -> Result<MappingClass, HurwitzError> {
    let mut acc = mcg::identity(atlas);
    for factor in &fact.factors {
        acc = mcg::compose(&acc, &factor_class(atlas, factor)?)?;
    }
    Ok(acc)
}

/// The boundary multi-twist the factorization must equal.
pub fn target_class(atlas: &Arc<CurveAtlas>) -> Result<MappingClass, HurwitzError> {
    let mut acc = mcg::identity(atlas);
    for i in 1..=atlas.sig().holes {
        acc = mcg::compose(&acc, &mcg::twist(atlas, &format!("d{i}"), 1)?)?;
    }
    Ok(acc)
}

/// Whether the factor product equals the boundary multi-twist.
pub fn is_relation(atlas: &Arc<CurveAtlas>, fact: &Factorization) -> Result<bool, HurwitzError> {
    Ok(product(atlas, fact)? == target_class(atlas)?)
}

fn merge_twist_word(word: &[TwistRef]) -> Vec<TwistRef> {
    let mut out: Vec<TwistRef> = Vec::new();
    for r in word {
        if r.power == 0 {
            continue;
        }
        if let Some(last) = out.last_mut() {
            if last.name == r.name {
                last.power += r.power;
                if last.power == 0 {
                    out.pop();
                }
                continue;
            }
        }
        out.push(r.clone());
    }
    out
}

/// Normalizes a factor: merges adjacent conjugator letters, drops outer and
/// inner letters whose twists fix the curve they act on, and collapses the
/// conjugator entirely when it fixes the base curve.
pub fn prune_factor(
    atlas: &Arc<CurveAtlas>,
    factor: &TwistFactor,
) -> Result<TwistFactor, HurwitzError> {
    let base_curve = mcg::resolved_curve(atlas, &factor.base)?.canonical();
    let mut conj = merge_twist_word(&factor.conj);
    loop {
        if conj.is_empty() {
            break;
        }
        let full = realized_curve(atlas, &TwistFactor::new(factor.base.clone(), conj.clone()))?
            .canonical();
        if full == base_curve {
            conj.clear();
            break;
        }
        // Outermost letter: drop it when it fixes the curve realized by the
        // remaining conjugator.
        let rest = conj[1..].to_vec();
        let rest_curve =
            realized_curve(atlas, &TwistFactor::new(factor.base.clone(), rest.clone()))?;
        let outer = mcg::twist(atlas, &conj[0].name, conj[0].power)?;
        if outer.apply_to_curve(&rest_curve).canonical() == rest_curve.canonical() {
            conj = merge_twist_word(&rest);
            continue;
        }
        // Innermost letter: drop it when it fixes the base curve.
        let last = conj.last().cloned().expect("nonempty");
        let inner = mcg::twist(atlas, &last.name, last.power)?;
        let base = mcg::resolved_curve(atlas, &factor.base)?;
        if inner.apply_to_curve(&base).canonical() == base_curve {
            conj.pop();
            conj = merge_twist_word(&conj);
            continue;
        }
        break;
    }
    Ok(TwistFactor::new(factor.base.clone(), conj))
}

/// Direction of an elementary Hurwitz move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveDir {
    /// `(x, y) -> (x y x^-1, x)`
    Left,
    /// `(x, y) -> (y, y^-1 x y)`
    Right,
}

/// Applies one elementary Hurwitz move at 1-based position `i`, exchanging
/// the factors at `i` and `i + 1`.
pub fn hurwitz_move(
    atlas: &Arc<CurveAtlas>,
    fact: &Factorization,
    i: usize,
    dir: MoveDir,
) -> Result<Factorization, HurwitzError> {
    if i == 0 || i >= fact.len() {
        return Err(HurwitzError::Position {
            position: i,
            len: fact.len(),
        });
    }
    let x = fact.factors[i - 1].clone();
    let y = fact.factors[i].clone();
    let (new_first, new_second) = match dir {
        MoveDir::Left => {
            let mut conj = x.twist_word();
            conj.extend(y.conj.iter().cloned());
            let pushed = prune_factor(atlas, &TwistFactor::new(y.base.clone(), conj))?;
            (pushed, x)
        }
        MoveDir::Right => {
            let mut conj = invert_twist_word(&y.twist_word());
            conj.extend(x.conj.iter().cloned());
            let pushed = prune_factor(atlas, &TwistFactor::new(x.base.clone(), conj))?;
            (y, pushed)
        }
    };
    let mut factors = fact.factors.clone();
    factors[i - 1] = new_first;
    factors[i] = new_second;
    Ok(Factorization {
        sig: fact.sig,
        factors,
    })
}

/// Conjugates every factor by the signed twist word `g`, after checking
/// that `g` centralizes the boundary multi-twist.
pub fn global_conjugate(
    atlas: &Arc<CurveAtlas>,
    fact: &Factorization,
    g: &[TwistRef],
) -> Result<Factorization, HurwitzError> {
    let conjugator = mcg::realize(atlas, g)?;
    let target = target_class(atlas)?;
    if mcg::compose(&conjugator, &target)? != mcg::compose(&target, &conjugator)? {
        return Err(HurwitzError::NotCentral);
    }
    let mut factors = Vec::with_capacity(fact.len());
    for factor in &fact.factors {
        let mut conj = g.to_vec();
        conj.extend(factor.conj.iter().cloned());
        factors.push(prune_factor(atlas, &TwistFactor::new(factor.base.clone(), conj))?);
    }
    Ok(Factorization {
        sig: fact.sig,
        factors,
    })
}

/// Renames every curve reference through a registered bijection.
pub fn relabel(fact: &Factorization, map: &RelabelMap) -> Result<Factorization, HurwitzError> {
    let rename = |name: &str| -> Result<String, HurwitzError> {
        map.map
            .get(name)
            .cloned()
            .ok_or_else(|| HurwitzError::InvalidDictionary {
                dict: map.name.clone(),
                detail: format!("relabeling lacks an image for `{name}`"),
            })
    };
    let mut factors = Vec::with_capacity(fact.len());
    for factor in &fact.factors {
        let base = rename(&factor.base)?;
        let conj = factor
            .conj
            .iter()
            .map(|r| Ok(TwistRef::new(rename(&r.name)?, r.power)))
            .collect::<Result<Vec<_>, HurwitzError>>()?;
        factors.push(TwistFactor::new(base, conj));
    }
    Ok(Factorization {
        sig: fact.sig,
        factors,
    })
}

/// Caps boundary hole `j`, projecting every factor through the dictionary.
/// Factors whose base curve becomes trivial are dropped.
pub fn cap(fact: &Factorization, j: u16, dict: &CapDict) -> Result<Factorization, HurwitzError> {
    if fact.sig.holes <= 1 {
        return Err(HurwitzError::LastHole);
    }
    if dict.hole != j {
        return Err(HurwitzError::InvalidDictionary {
            dict: dict.name.clone(),
            detail: format!("dictionary caps hole {} but hole {j} was requested", dict.hole),
        });
    }
    let boundary = format!("d{j}");
    match dict.map.get(&boundary) {
        Some(None) => {}
        _ => {
            return Err(HurwitzError::InvalidDictionary {
                dict: dict.name.clone(),
                detail: format!("dictionary must send `{boundary}` to the trivial curve"),
            })
        }
    }
    let image = |name: &str| -> Result<Option<String>, HurwitzError> {
        dict.map
            .get(name)
            .cloned()
            .ok_or_else(|| HurwitzError::InvalidDictionary {
                dict: dict.name.clone(),
                detail: format!("dictionary lacks an image for `{name}`"),
            })
    };
    let mut factors = Vec::new();
    for factor in &fact.factors {
        let base = match image(&factor.base)? {
            Some(b) => b,
            None => continue,
        };
        let mut conj = Vec::new();
        for r in &factor.conj {
            if let Some(name) = image(&r.name)? {
                conj.push(TwistRef::new(name, r.power));
            }
        }
        factors.push(TwistFactor::new(base, merge_twist_word(&conj)));
    }
    Ok(Factorization {
        sig: SurfaceSig::torus_with_holes(fact.sig.holes - 1),
        factors,
    })
}

/// Source of atlases, relabelings, and capping dictionaries used by replay.
pub trait AtlasProvider {
    fn atlas(&self, holes: u16) -> Option<Arc<CurveAtlas>>;
    fn relabel_map(&self, holes: u16, name: &str) -> Option<RelabelMap>;
    fn cap_dict(&self, holes: u16, name: &str) -> Option<CapDict>;
}

/// One checked state of a replayed script.
#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub label: String,
    pub fact: Factorization,
}

/// Full replay transcript: the start state plus one entry per step.
#[derive(Clone, Debug)]
pub struct ReplayTrace {
    pub entries: Vec<TraceEntry>,
}

impl ReplayTrace {
    pub fn final_state(&self) -> &Factorization {
        &self.entries.last().expect("trace never empty").fact
    }
}

/// Error produced while replaying a script.
#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("step {step} ({action}) failed: {detail}")]
    Step {
        step: usize,
        action: String,
        detail: String,
    },
    #[error(transparent)]
    Setup(#[from] HurwitzError),
}

/// Replays a script, checking after every step (and at the start) that the
/// state still factors the boundary multi-twist.
pub fn replay(
    provider: &dyn AtlasProvider,
    atlas: &Arc<CurveAtlas>,
    start: &Factorization,
    script: &MoveScript,
) -> Result<ReplayTrace, ReplayError> {
    let mut atlas = Arc::clone(atlas);
    let mut state = start.clone();
    let fail = |step: usize, action: &dyn fmt::Display, detail: String| ReplayError::Step {
        step,
        action: action.to_string(),
        detail,
    };
    let check = |atlas: &Arc<CurveAtlas>,
                 state: &Factorization,
                 step: usize,
                 action: &dyn fmt::Display|
     -> Result<(), ReplayError> {
        match is_relation(atlas, state) {
            Ok(true) => Ok(()),
            Ok(false) => Err(fail(
                step,
                action,
                "the factor product no longer equals the boundary multi-twist".into(),
            )),
            Err(e) => Err(fail(step, action, e.to_string())),
        }
    };
    check(&atlas, &state, 0, &"start")?;
    let mut entries = vec![TraceEntry {
        label: "start".into(),
        fact: state.clone(),
    }];
    for (idx, step) in script.steps.iter().enumerate() {
        let stepno = idx + 1;
        let next = match step {
            Step::L(i) => hurwitz_move(&atlas, &state, *i, MoveDir::Left),
            Step::R(i) => hurwitz_move(&atlas, &state, *i, MoveDir::Right),
            Step::Conj(g) => global_conjugate(&atlas, &state, g),
            Step::Rot(j) => Ok(state.rotated(*j)),
            Step::Relabel(name) => provider
                .relabel_map(state.sig.holes, name)
                .ok_or_else(|| HurwitzError::UnknownRelabel {
                    name: name.clone(),
                    holes: state.sig.holes,
                })
                .and_then(|m| relabel(&state, &m)),
            Step::Cap(j, dict_name) => provider
                .cap_dict(state.sig.holes, dict_name)
                .ok_or_else(|| HurwitzError::UnknownDict {
                    name: dict_name.clone(),
                    holes: state.sig.holes,
                })
                .and_then(|d| cap(&state, *j, &d)),
        }
        .map_err(|e| fail(stepno, step, e.to_string()))?;
        if let Step::Cap(..) = step {
            atlas = provider
                .atlas(next.sig.holes)
                .ok_or(HurwitzError::MissingAtlas {
                    holes: next.sig.holes,
                })?;
        }
        check(&atlas, &next, stepno, step)?;
        state = next;
        entries.push(TraceEntry {
            label: step.to_string(),
            fact: state.clone(),
        });
    }
    Ok(ReplayTrace { entries })
}

/// Error produced by the equivalence search.
#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search budget exhausted after expanding {explored} states")]
    BudgetExhausted { explored: usize },
    #[error("factorizations are not connected by Hurwitz moves ({explored} states explored)")]
    Inequivalent { explored: usize },
    #[error(transparent)]
    Setup(#[from] HurwitzError),
}

type StateKey = Vec<CanonicalCurve>;

struct CurveCache {
    map: BTreeMap<(String, Vec<TwistRef>), CanonicalCurve>,
}

impl CurveCache {
    fn new() -> Self {
        CurveCache {
            map: BTreeMap::new(),
        }
    }

    fn canonical(
        &mut self,
        atlas: &Arc<CurveAtlas>,
        factor: &TwistFactor,
    ) -> Result<CanonicalCurve, HurwitzError> {
        let key = (factor.base.clone(), factor.conj.clone());
        if let Some(c) = self.map.get(&key) {
            return Ok(c.clone());
        }
        let c = realized_curve(atlas, factor)?.canonical();
        self.map.insert(key, c.clone());
        Ok(c)
    }
}

fn curve_tuple(
    cache: &mut CurveCache,
    atlas: &Arc<CurveAtlas>,
    fact: &Factorization,
) -> Result<Vec<CanonicalCurve>, HurwitzError> {
    fact.factors
        .iter()
        .map(|f| cache.canonical(atlas, f))
        .collect()
}

/// Rotation-minimal form of the curve tuple, so states that differ only by
/// a cyclic rotation share one key.
fn rotation_key(tuple: &[CanonicalCurve]) -> StateKey {
    if tuple.is_empty() {
        return Vec::new();
    }
    let mut best: Option<Vec<CanonicalCurve>> = None;
    for r in 0..tuple.len() {
        let mut rot = tuple[r..].to_vec();
        rot.extend_from_slice(&tuple[..r]);
        if best.as_ref().map_or(true, |b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// Breadth-first search for a Hurwitz-move script turning `a` into `b` up
/// to cyclic rotation, with the final rotation appended so the endpoint is
/// factorwise equal to `b`.
///
/// States are deduplicated by their rotation-minimal curve tuple. Expansion
/// order is deterministic: rotations ascending, positions ascending, left
/// moves before right moves. `budget` bounds the number of expanded states.
pub fn search_equivalence(
    atlas: &Arc<CurveAtlas>,
    a: &Factorization,
    b: &Factorization,
    budget: usize,
) -> Result<MoveScript, SearchError> {
    if a.sig != b.sig {
        return Err(SearchError::Setup(HurwitzError::SignatureMismatch {
            left: a.sig,
            right: b.sig,
        }));
    }
    let mut cache = CurveCache::new();
    if a.len() != b.len() {
        return Err(SearchError::Inequivalent { explored: 0 });
    }
    let goal_tuple = curve_tuple(&mut cache, atlas, b)?;
    let goal_key = rotation_key(&goal_tuple);

    struct Node {
        fact: Factorization,
        parent: usize,
        edge: Vec<Step>,
    }

    let mut nodes = vec![Node {
        fact: a.clone(),
        parent: 0,
        edge: Vec::new(),
    }];
    let mut seen: BTreeSet<StateKey> = BTreeSet::new();
    let start_tuple = curve_tuple(&mut cache, atlas, a)?;
    seen.insert(rotation_key(&start_tuple));
    let mut queue = VecDeque::from([0usize]);
    let mut explored = 0usize;
    let mut found: Option<usize> = None;

    if rotation_key(&start_tuple) == goal_key {
        found = Some(0);
    }

    while found.is_none() {
        let Some(current) = queue.pop_front() else {
            return Err(SearchError::Inequivalent { explored });
        };
        if explored >= budget {
            return Err(SearchError::BudgetExhausted { explored });
        }
        explored += 1;
        let n = nodes[current].fact.len();
        'expand: for r in 0..n {
            let rotated = nodes[current].fact.rotated(r);
            for i in 1..n {
                for dir in [MoveDir::Left, MoveDir::Right] {
                    let next = hurwitz_move(atlas, &rotated, i, dir)?;
                    let tuple = curve_tuple(&mut cache, atlas, &next)?;
                    let key = rotation_key(&tuple);
                    if !seen.insert(key.clone()) {
                        continue;
                    }
                    let mut edge = Vec::new();
                    if r > 0 {
                        edge.push(Step::Rot(r));
                    }
                    edge.push(match dir {
                        MoveDir::Left => Step::L(i),
                        MoveDir::Right => Step::R(i),
                    });
                    nodes.push(Node {
                        fact: next,
                        parent: current,
                        edge,
                    });
                    let idx = nodes.len() - 1;
                    if key == goal_key {
                        found = Some(idx);
                        break 'expand;
                    }
                    queue.push_back(idx);
                }
            }
        }
    }

    let mut steps: Vec<Step> = Vec::new();
    let mut at = found.expect("loop exits only when found");
    let mut chain = Vec::new();
    while at != 0 {
        chain.push(at);
        at = nodes[at].parent;
    }
    for &idx in chain.iter().rev() {
        steps.extend(nodes[idx].edge.iter().cloned());
    }

    // Align the endpoint exactly onto `b` with one final rotation.
    let end_tuple = curve_tuple(&mut cache, atlas, &nodes[found.unwrap()].fact)?;
    let n = end_tuple.len();
    let mut aligned = false;
    for j in 0..n.max(1) {
        let mut rot = end_tuple[j.min(n)..].to_vec();
        rot.extend_from_slice(&end_tuple[..j.min(n)]);
        if rot == goal_tuple {
            if j > 0 {
                steps.push(Step::Rot(j));
            }
            aligned = true;
            break;
        }
    }
    debug_assert!(aligned, "key equality guarantees an aligning rotation");
    Ok(MoveScript { steps })
}

/// Parses a factorization file: a surface header, a `target` line naming
/// the boundary multi-twist, and one `factor` line per factor with the
/// first (outermost) factor first.
pub fn parse_factorization(text: &str) -> Result<Factorization, HurwitzError> {
    let mut sig: Option<SurfaceSig> = None;
    let mut target_seen = false;
    let mut factors = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match keyword {
            "surface" => {
                let mut genus = None;
                let mut holes = None;
                for (k, v) in rest
                    .split_whitespace()
                    .filter_map(|p| p.split_once('='))
                {
                    match k {
                        "genus" => genus = v.parse::<u8>().ok(),
                        "holes" => holes = v.parse::<u16>().ok(),
                        _ => {
                            return Err(HurwitzError::Parse {
                                line,
                                msg: format!("unknown field `{k}`"),
                            })
                        }
                    }
                }
                match (genus, holes) {
                    (Some(1), Some(h)) if h >= 1 => sig = Some(SurfaceSig::torus_with_holes(h)),
                    _ => {
                        return Err(HurwitzError::Parse {
                            line,
                            msg: "surface header must read `surface genus=1 holes=<k>`".into(),
                        })
                    }
                }
            }
            "target" => {
                let sig = sig.ok_or_else(|| HurwitzError::Parse {
                    line,
                    msg: "target before surface header".into(),
                })?;
                let holes: u16 = rest
                    .trim()
                    .strip_prefix('∂')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| HurwitzError::Parse {
                        line,
                        msg: "target must read `target ∂<k>`".into(),
                    })?;
                if holes != sig.holes {
                    return Err(HurwitzError::Parse {
                        line,
                        msg: format!(
                            "target ∂{holes} does not match the {}-holed surface",
                            sig.holes
                        ),
                    });
                }
                target_seen = true;
            }
            "factor" => {
                if sig.is_none() {
                    return Err(HurwitzError::Parse {
                        line,
                        msg: "factor before surface header".into(),
                    });
                }
                let mut base = None;
                let mut conj = Vec::new();
                for (k, v) in rest
                    .split_whitespace()
                    .filter_map(|p| p.split_once('='))
                {
                    match k {
                        "base" => base = Some(v.to_string()),
                        "conj" => {
                            conj = parse_twist_word(v).map_err(|e| HurwitzError::Parse {
                                line,
                                msg: e.to_string(),
                            })?
                        }
                        _ => {
                            return Err(HurwitzError::Parse {
                                line,
                                msg: format!("unknown field `{k}`"),
                            })
                        }
                    }
                }
                let base = base.ok_or_else(|| HurwitzError::Parse {
                    line,
                    msg: "factor line lacks base=".into(),
                })?;
                factors.push(TwistFactor::new(base, conj));
            }
            _ => {
                return Err(HurwitzError::Parse {
                    line,
                    msg: format!("unknown keyword `{keyword}`"),
                })
            }
        }
    }
    let sig = sig.ok_or_else(|| HurwitzError::Parse {
        line: 0,
        msg: "missing surface header".into(),
    })?;
    if !target_seen {
        return Err(HurwitzError::Parse {
            line: 0,
            msg: "missing target line".into(),
        });
    }
    Ok(Factorization { sig, factors })
}

/// Renders a factorization in the format accepted by
/// [`parse_factorization`].
pub fn serialize_factorization(fact: &Factorization) -> String {
    let mut out = format!("surface {}\ntarget ∂{}\n", fact.sig, fact.sig.holes);
    for factor in &fact.factors {
        out.push_str(&factor.to_string());
        out.push('\n');
    }
    out
}

/// Parses a move script, one step per line.
pub fn parse_script(text: &str) -> Result<MoveScript, HurwitzError> {
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let bad = |msg: String| HurwitzError::Parse { line, msg };
        let step = match keyword {
            "L" => Step::L(rest
                .parse()
                .map_err(|_| bad(format!("bad position `{rest}`")))?),
            "R" => Step::R(rest
                .parse()
                .map_err(|_| bad(format!("bad position `{rest}`")))?),
            "ROT" => Step::Rot(rest
                .parse()
                .map_err(|_| bad(format!("bad rotation `{rest}`")))?),
            "CONJ" => Step::Conj(
                parse_twist_word(rest).map_err(|e| bad(e.to_string()))?,
            ),
            "RELABEL" => {
                if rest.is_empty() {
                    return Err(bad("RELABEL needs a name".into()));
                }
                Step::Relabel(rest.to_string())
            }
            "CAP" => {
                let (hole, dict) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| bad("CAP needs `<hole> <dict>`".into()))?;
                Step::Cap(
                    hole.parse()
                        .map_err(|_| bad(format!("bad hole `{hole}`")))?,
                    dict.trim().to_string(),
                )
            }
            _ => return Err(bad(format!("unknown step `{keyword}`"))),
        };
        steps.push(step);
    }
    Ok(MoveScript { steps })
}

/// Renders a move script, one step per line.
pub fn serialize_script(script: &MoveScript) -> String {
    let mut out = String::new();
    for step in &script.steps {
        out.push_str(&step.to_string());
        out.push('\n');
    }
    out
}
