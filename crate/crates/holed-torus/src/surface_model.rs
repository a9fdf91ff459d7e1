//! Word algebra for the fundamental groupoid of a genus-1 surface with
//! `k` boundary holes, plus the curve-atlas file format.
//!
//! One marked point `z_i` sits on each boundary component. Paths are freely
//! reduced words in the generators `alpha`, `beta` (loops at `z_1`),
//! `e2..ek` (boundary loops at `z_i`), and `h2..hk` (connectors `z_1 -> z_i`).
//! The first boundary loop `e1` is not free; the parser expands it into the
//! defining word of the surface. Words are *stored* in traversal order
//! (first-walked letter first) and *displayed* in functional order
//! (rightmost token is walked first), so a displayed word reads like a
//! composition of maps.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// Marked point on the `i`-th boundary component (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basepoint(pub u16);

impl fmt::Display for Basepoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}", self.0)
    }
}

/// Topological type of the surface: genus and number of boundary holes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceSig {
    pub genus: u8,
    pub holes: u16,
}

impl SurfaceSig {
    /// Genus-1 surface with `holes` boundary components.
    pub fn torus_with_holes(holes: u16) -> Self {
        assert!(holes >= 1, "a holed torus needs at least one hole");
        SurfaceSig { genus: 1, holes }
    }

    /// Free generators of the fundamental groupoid, in basis order.
    pub fn basis(self) -> Vec<Gen> {
        let mut v = vec![Gen::Alpha, Gen::Beta];
        for i in 2..=self.holes {
            v.push(Gen::E(i));
        }
        for i in 2..=self.holes {
            v.push(Gen::H(i));
        }
        v
    }

    /// Number of free generators (`2k` for `k` holes).
    pub fn basis_len(self) -> usize {
        2 * self.holes as usize
    }

    fn check_basepoint(self, bp: Basepoint) -> Result<(), WordError> {
        if bp.0 == 0 || bp.0 > self.holes {
            return Err(WordError::BadBasepoint {
                index: bp.0,
                holes: self.holes,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus={} holes={}", self.genus, self.holes)
    }
}

/// Free generator of the fundamental groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// Meridian loop at `z_1`.
    Alpha,
    /// Longitude loop at `z_1`.
    Beta,
    /// Loop at `z_i` around the `i`-th hole, `i >= 2`.
    E(u16),
    /// Connector path `z_1 -> z_i`, `i >= 2`.
    H(u16),
}

impl Gen {
    /// Endpoints `(source, target)` of the generator as a path.
    pub fn endpoints(self) -> (Basepoint, Basepoint) {
        match self {
            Gen::Alpha | Gen::Beta => (Basepoint(1), Basepoint(1)),
            Gen::E(i) => (Basepoint(i), Basepoint(i)),
            Gen::H(i) => (Basepoint(1), Basepoint(i)),
        }
    }

    /// Position of this generator in the basis ordering of `sig`.
    pub fn basis_index(self, sig: SurfaceSig) -> usize {
        match self {
            Gen::Alpha => 0,
            Gen::Beta => 1,
            Gen::E(i) => 2 + (i as usize - 2),
            Gen::H(i) => 2 + (sig.holes as usize - 1) + (i as usize - 2),
        }
    }

    fn valid_for(self, sig: SurfaceSig) -> bool {
        match self {
            Gen::Alpha | Gen::Beta => true,
            Gen::E(i) | Gen::H(i) => (2..=sig.holes).contains(&i),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Alpha => write!(f, "alpha"),
            Gen::Beta => write!(f, "beta"),
            Gen::E(i) => write!(f, "e{i}"),
            Gen::H(i) => write!(f, "h{i}"),
        }
    }
}

/// Signed occurrence of a generator inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: Gen, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    /// Endpoints `(source, target)` of the letter as a walked path.
    pub fn endpoints(self) -> (Basepoint, Basepoint) {
        let (s, t) = self.gen.endpoints();
        if self.inv {
            (t, s)
        } else {
            (s, t)
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv {
            write!(f, "~{}", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// Error produced while building or parsing words.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator name `{name}`")]
    UnknownGenerator { name: String },
    #[error("generator `{name}` is out of range on a surface with {holes} holes")]
    OutOfRange { name: String, holes: u16 },
    #[error("letter {position} starts at {found} but the walk is at {expected}")]
    CompositionMismatch {
        position: usize,
        expected: Basepoint,
        found: Basepoint,
    },
    #[error("words compose only when the inner target {inner_target} matches the outer source {outer_source}")]
    ComposeEndpoints {
        inner_target: Basepoint,
        outer_source: Basepoint,
    },
    #[error("expected a loop, found a path from {from} to {to}")]
    NotALoop { from: Basepoint, to: Basepoint },
    #[error("basepoint index {index} is out of range for {holes} holes")]
    BadBasepoint { index: u16, holes: u16 },
}

/// Freely reduced path in the fundamental groupoid.
///
/// Letters are stored in traversal order; `Display` reverses them into
/// functional order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupoidWord {
    source: Basepoint,
    target: Basepoint,
    letters: Vec<Letter>,
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl GroupoidWord {
    /// Constant path at `bp`.
    pub fn identity(sig: SurfaceSig, bp: Basepoint) -> Result<Self, WordError> {
        sig.check_basepoint(bp)?;
        Ok(GroupoidWord {
            source: bp,
            target: bp,
            letters: Vec::new(),
        })
    }

    /// Builds a word from letters in traversal order, checking that each
    /// letter departs from where the previous one arrived.
    pub fn from_letters(
        sig: SurfaceSig,
        source: Basepoint,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<Self, WordError> {
        sig.check_basepoint(source)?;
        let mut at = source;
        let mut reduced = Vec::new();
        for (position, l) in letters.into_iter().enumerate() {
            if !l.gen.valid_for(sig) {
                return Err(WordError::OutOfRange {
                    name: l.gen.to_string(),
                    holes: sig.holes,
                });
            }
            let (s, t) = l.endpoints();
            if s != at {
                return Err(WordError::CompositionMismatch {
                    position,
                    expected: at,
                    found: s,
                });
            }
            at = t;
            push_reduced(&mut reduced, l);
        }
        Ok(GroupoidWord {
            source,
            target: at,
            letters: reduced,
        })
    }

    /// Builds a word from letters already known to chain correctly.
    pub(crate) fn from_letters_unchecked(source: Basepoint, letters: Vec<Letter>) -> Self {
        let mut at = source;
        let mut reduced = Vec::new();
        for l in letters {
            let (s, t) = l.endpoints();
            debug_assert_eq!(s, at, "letter chain is broken");
            at = t;
            push_reduced(&mut reduced, l);
        }
        GroupoidWord {
            source,
            target: at,
            letters: reduced,
        }
    }

    pub fn source(&self) -> Basepoint {
        self.source
    }

    pub fn target(&self) -> Basepoint {
        self.target
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    /// Reversed path.
    pub fn inverse(&self) -> Self {
        GroupoidWord {
            source: self.target,
            target: self.source,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Functional composition `outer . inner`: the inner path is walked
    /// first, so `inner.target()` must equal `outer.source()`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, WordError> {
        if inner.target != outer.source {
            return Err(WordError::ComposeEndpoints {
                inner_target: inner.target,
                outer_source: outer.source,
            });
        }
        let mut letters = inner.letters.clone();
        for &l in &outer.letters {
            push_reduced(&mut letters, l);
        }
        Ok(GroupoidWord {
            source: inner.source,
            target: outer.target,
            letters,
        })
    }
}

impl fmt::Display for GroupoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in self.letters.iter().rev() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Traversal-order letters of the defining word that expands the first
/// boundary loop `e1`.
///
/// Walking it hugs every other hole once (via the connectors) and then the
/// commutator of the two torus loops, which is exactly the boundary of the
/// cut-open model polygon.
pub fn e1_expansion(sig: SurfaceSig) -> Vec<Letter> {
    let mut letters = Vec::new();
    for i in 2..=sig.holes {
        letters.push(Letter::new(Gen::H(i), false));
        letters.push(Letter::new(Gen::E(i), true));
        letters.push(Letter::new(Gen::H(i), true));
    }
    letters.push(Letter::new(Gen::Beta, false));
    letters.push(Letter::new(Gen::Alpha, false));
    letters.push(Letter::new(Gen::Beta, true));
    letters.push(Letter::new(Gen::Alpha, true));
    letters
}

/// Loop at `z_1` running parallel to the `i`-th boundary component.
pub fn boundary_word(sig: SurfaceSig, i: u16) -> Result<GroupoidWord, WordError> {
    sig.check_basepoint(Basepoint(i))?;
    let letters = if i == 1 {
        e1_expansion(sig)
    } else {
        vec![
            Letter::new(Gen::H(i), false),
            Letter::new(Gen::E(i), false),
            Letter::new(Gen::H(i), true),
        ]
    };
    GroupoidWord::from_letters(sig, Basepoint(1), letters)
}

fn parse_letter_token(sig: SurfaceSig, tok: &str) -> Result<Vec<Letter>, WordError> {
    let (inv, name) = match tok.strip_prefix('~') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let gen = match name {
        "alpha" => Gen::Alpha,
        "beta" => Gen::Beta,
        _ => {
            let (kind, idx) = name.split_at(1);
            let i: u16 = idx.parse().map_err(|_| WordError::UnknownGenerator {
                name: tok.to_string(),
            })?;
            match kind {
                "e" if i == 1 => {
                    let mut letters = e1_expansion(sig);
                    if inv {
                        letters.reverse();
                        for l in &mut letters {
                            *l = l.inverse();
                        }
                    }
                    return Ok(letters);
                }
                "e" => Gen::E(i),
                "h" => Gen::H(i),
                _ => {
                    return Err(WordError::UnknownGenerator {
                        name: tok.to_string(),
                    })
                }
            }
        }
    };
    if !gen.valid_for(sig) {
        return Err(WordError::OutOfRange {
            name: tok.to_string(),
            holes: sig.holes,
        });
    }
    Ok(vec![Letter::new(gen, inv)])
}

/// Parses a comma-separated word in functional order (rightmost token is
/// walked first) into a path starting at `source`.
pub fn parse_word(
    sig: SurfaceSig,
    text: &str,
    source: Basepoint,
) -> Result<GroupoidWord, WordError> {
    let text = text.trim();
    if text.is_empty() {
        return GroupoidWord::identity(sig, source);
    }
    let mut letters = Vec::new();
    for tok in text.split(',').rev() {
        letters.extend(parse_letter_token(sig, tok.trim())?);
    }
    GroupoidWord::from_letters(sig, source, letters)
}

/// Renders a word in functional order, collapsing the defining word of the
/// first boundary loop back to the alias `e1`.
pub fn serialize_word(sig: SurfaceSig, word: &GroupoidWord) -> String {
    let expansion = e1_expansion(sig);
    if word.letters() == expansion.as_slice() {
        return "e1".to_string();
    }
    let inv_expansion: Vec<Letter> = expansion.iter().rev().map(|l| l.inverse()).collect();
    if word.letters() == inv_expansion.as_slice() {
        return "~e1".to_string();
    }
    word.to_string()
}

/// Embedded loop at `z_1` representing a simple closed curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Curve {
    word: GroupoidWord,
}

impl Curve {
    pub fn new(word: GroupoidWord) -> Result<Self, WordError> {
        if !word.is_loop() {
            return Err(WordError::NotALoop {
                from: word.source(),
                to: word.target(),
            });
        }
        Ok(Curve { word })
    }

    pub fn word(&self) -> &GroupoidWord {
        &self.word
    }

    /// Canonical representative of the curve up to free homotopy and
    /// orientation: cyclically reduce, then take the lexicographically
    /// least rotation of the word and of its inverse.
    pub fn canonical(&self) -> CanonicalCurve {
        let mut v = self.word.letters().to_vec();
        while v.len() >= 2 && *v.first().unwrap() == v.last().unwrap().inverse() {
            v.remove(0);
            v.pop();
        }
        let mut best: Option<Vec<Letter>> = None;
        let inv: Vec<Letter> = v.iter().rev().map(|l| l.inverse()).collect();
        for base in [&v, &inv] {
            for r in 0..base.len().max(1) {
                let mut rot = base[r.min(base.len())..].to_vec();
                rot.extend_from_slice(&base[..r.min(base.len())]);
                if best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        CanonicalCurve {
            letters: best.unwrap_or_default(),
        }
    }
}

/// Rotation- and orientation-independent form of a curve word. Two curves
/// compare equal exactly when their canonical forms do.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCurve {
    letters: Vec<Letter>,
}

impl CanonicalCurve {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Signed reference to a named twist, used in conjugator words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistRef {
    pub name: String,
    pub power: i32,
}

impl TwistRef {
    pub fn new(name: impl Into<String>, power: i32) -> Self {
        TwistRef {
            name: name.into(),
            power,
        }
    }

    pub fn inverse(&self) -> Self {
        TwistRef {
            name: self.name.clone(),
            power: -self.power,
        }
    }
}

/// Parses a comma-separated signed-name list such as `a1,~b2` into twist
/// references in functional order.
pub fn parse_twist_word(text: &str) -> Result<Vec<TwistRef>, AtlasError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        let (power, name) = match tok.strip_prefix('~') {
            Some(rest) => (-1, rest),
            None => (1, tok),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(AtlasError::BadToken {
                token: tok.to_string(),
            });
        }
        out.push(TwistRef::new(name, power));
    }
    Ok(out)
}

/// Renders twist references as a comma-separated signed-name list.
pub fn serialize_twist_word(word: &[TwistRef]) -> String {
    let mut parts = Vec::new();
    for r in word {
        let tag = if r.power < 0 {
            format!("~{}", r.name)
        } else {
            r.name.clone()
        };
        for _ in 0..r.power.unsigned_abs() {
            parts.push(tag.clone());
        }
    }
    parts.join(",")
}

/// One transverse intersection of a curve with a generator path.
///
/// `sign` is the local intersection sign, `offset` rotates the stored curve
/// word to the intersection point, and `conj` is an optional connector path
/// from `z_1` to the rotated word's basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub sign: i8,
    pub offset: usize,
    pub conj: Vec<Letter>,
}

/// How an atlas entry obtains its curve.
#[derive(Clone, Debug, PartialEq)]
pub enum EntryKind {
    /// Curve given directly, with intersection data against generator paths.
    Plain {
        curve: Curve,
        crossings: BTreeMap<Gen, Vec<Crossing>>,
    },
    /// Curve obtained by pushing an earlier entry through a twist word.
    Derived { base: String, conj: Vec<TwistRef> },
}

/// Named curve of an atlas.
#[derive(Clone, Debug, PartialEq)]
pub struct AtlasEntry {
    pub name: String,
    pub kind: EntryKind,
}

/// Collection of named curves on one surface, with intersection data rich
/// enough to build their Dehn twists.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveAtlas {
    sig: SurfaceSig,
    entries: Vec<AtlasEntry>,
    index: BTreeMap<String, usize>,
}

impl CurveAtlas {
    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn get(&self, name: &str) -> Option<&AtlasEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[AtlasEntry] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }
}

/// Error produced while reading or checking an atlas file.
#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("could not read atlas file: {0}")]
    Io(#[from] std::io::Error),
    #[error("atlas line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("atlas invariant `{invariant}` failed: {detail}")]
    Invariant { invariant: String, detail: String },
    #[error("malformed signed-name token `{token}`")]
    BadToken { token: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> AtlasError {
    AtlasError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Splits `key=value` fields separated by whitespace, values containing no
/// spaces.
fn split_fields(rest: &str) -> Vec<(&str, &str)> {
    rest.split_whitespace()
        .filter_map(|part| part.split_once('='))
        .collect()
}

fn parse_crossings(
    sig: SurfaceSig,
    text: &str,
    line: usize,
) -> Result<BTreeMap<Gen, Vec<Crossing>>, AtlasError> {
    let mut map = BTreeMap::new();
    for group in text.split(';') {
        let (path, toks) = group
            .split_once(':')
            .ok_or_else(|| parse_err(line, format!("crossing group `{group}` lacks `:`")))?;
        let path_letters = parse_letter_token(sig, path.trim())
            .map_err(|e| parse_err(line, format!("bad crossing path: {e}")))?;
        if path_letters.len() != 1 || path_letters[0].inv {
            return Err(parse_err(
                line,
                format!("crossing path `{path}` must be a single positive generator"),
            ));
        }
        let gen = path_letters[0].gen;
        let mut list = Vec::new();
        for tok in toks.split(',') {
            let tok = tok.trim();
            let (core, conj_text) = match tok.split_once('~') {
                Some((c, rest)) => (c, Some(rest)),
                None => (tok, None),
            };
            let sign = match core.chars().next() {
                Some('+') => 1i8,
                Some('-') => -1i8,
                _ => return Err(parse_err(line, format!("crossing `{tok}` lacks a sign"))),
            };
            let offset: usize = core[1..]
                .parse()
                .map_err(|_| parse_err(line, format!("bad crossing offset in `{tok}`")))?;
            let mut conj = Vec::new();
            if let Some(conj_text) = conj_text {
                for part in conj_text.split('.') {
                    conj.extend(
                        parse_letter_token(sig, part.trim())
                            .map_err(|e| parse_err(line, format!("bad crossing conj: {e}")))?,
                    );
                }
            }
            list.push(Crossing { sign, offset, conj });
        }
        if map.insert(gen, list).is_some() {
            return Err(parse_err(line, format!("duplicate crossing path `{path}`")));
        }
    }
    Ok(map)
}

fn serialize_crossings(crossings: &BTreeMap<Gen, Vec<Crossing>>) -> String {
    let mut groups = Vec::new();
    for (gen, list) in crossings {
        let toks: Vec<String> = list
            .iter()
            .map(|c| {
                let mut s = format!("{}{}", if c.sign >= 0 { "+" } else { "-" }, c.offset);
                if !c.conj.is_empty() {
                    let parts: Vec<String> = c.conj.iter().map(|l| l.to_string()).collect();
                    s.push('~');
                    s.push_str(&parts.join("."));
                }
                s
            })
            .collect();
        groups.push(format!("{gen}:{}", toks.join(",")));
    }
    groups.join(";")
}

/// Parses an atlas from text and verifies its structural invariants.
pub fn parse_atlas(text: &str) -> Result<CurveAtlas, AtlasError> {
    let mut sig: Option<SurfaceSig> = None;
    let mut entries: Vec<AtlasEntry> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match keyword {
            "surface" => {
                if sig.is_some() {
                    return Err(parse_err(line, "duplicate surface header"));
                }
                let fields = split_fields(rest);
                let mut genus = None;
                let mut holes = None;
                for (k, v) in fields {
                    match k {
                        "genus" => genus = v.parse::<u8>().ok(),
                        "holes" => holes = v.parse::<u16>().ok(),
                        _ => return Err(parse_err(line, format!("unknown field `{k}`"))),
                    }
                }
                match (genus, holes) {
                    (Some(1), Some(h)) if h >= 1 => {
                        sig = Some(SurfaceSig::torus_with_holes(h));
                    }
                    _ => {
                        return Err(parse_err(
                            line,
                            "surface header must read `surface genus=1 holes=<k>`",
                        ))
                    }
                }
            }
            "curve" => {
                let sig = sig.ok_or_else(|| parse_err(line, "curve before surface header"))?;
                let (name, fields_text) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| parse_err(line, "curve line lacks fields"))?;
                let name = name.to_string();
                if index.contains_key(&name) {
                    return Err(parse_err(line, format!("duplicate curve name `{name}`")));
                }
                let fields = split_fields(fields_text);
                let mut word = None;
                let mut crossings = None;
                let mut from = None;
                let mut conj = None;
                for (k, v) in fields {
                    match k {
                        "word" => word = Some(v),
                        "crossings" => crossings = Some(v),
                        "from" => from = Some(v),
                        "conj" => conj = Some(v),
                        _ => return Err(parse_err(line, format!("unknown field `{k}`"))),
                    }
                }
                let kind = match (word, from) {
                    (Some(w), None) => {
                        let word = parse_word(sig, w, Basepoint(1))
                            .map_err(|e| parse_err(line, format!("bad curve word: {e}")))?;
                        let curve = Curve::new(word)
                            .map_err(|e| parse_err(line, format!("bad curve word: {e}")))?;
                        let crossings = match crossings {
                            Some(text) => parse_crossings(sig, text, line)?,
                            None => BTreeMap::new(),
                        };
                        for list in crossings.values() {
                            for c in list {
                                if !curve.word().is_empty() && c.offset >= curve.word().len() {
                                    return Err(parse_err(
                                        line,
                                        format!(
                                            "crossing offset {} exceeds curve length {}",
                                            c.offset,
                                            curve.word().len()
                                        ),
                                    ));
                                }
                            }
                        }
                        EntryKind::Plain { curve, crossings }
                    }
                    (None, Some(base)) => {
                        if !index.contains_key(base) {
                            return Err(parse_err(
                                line,
                                format!("derived curve references unknown base `{base}`"),
                            ));
                        }
                        let conj = parse_twist_word(conj.unwrap_or(""))?;
                        for r in &conj {
                            if !index.contains_key(&r.name) {
                                return Err(parse_err(
                                    line,
                                    format!("derived conj references unknown curve `{}`", r.name),
                                ));
                            }
                        }
                        EntryKind::Derived {
                            base: base.to_string(),
                            conj,
                        }
                    }
                    _ => {
                        return Err(parse_err(
                            line,
                            "curve needs exactly one of `word=` or `from=`",
                        ))
                    }
                };
                index.insert(name.clone(), entries.len());
                entries.push(AtlasEntry { name, kind });
            }
            _ => return Err(parse_err(line, format!("unknown keyword `{keyword}`"))),
        }
    }

    let sig = sig.ok_or_else(|| parse_err(0, "missing surface header"))?;
    let atlas = CurveAtlas {
        sig,
        entries,
        index,
    };
    check_atlas_invariants(&atlas)?;
    Ok(atlas)
}

fn check_atlas_invariants(atlas: &CurveAtlas) -> Result<(), AtlasError> {
    let sig = atlas.sig();
    for i in 1..=sig.holes {
        let name = format!("d{i}");
        let entry = atlas.get(&name).ok_or_else(|| AtlasError::Invariant {
            invariant: "boundary curves present".into(),
            detail: format!("atlas lacks the boundary-parallel curve `{name}`"),
        })?;
        match &entry.kind {
            EntryKind::Plain { curve, .. } => {
                let expected = boundary_word(sig, i).expect("boundary word");
                if curve.word() != &expected {
                    return Err(AtlasError::Invariant {
                        invariant: "boundary curve words".into(),
                        detail: format!(
                            "curve `{name}` must equal the boundary word `{}`",
                            serialize_word(sig, &expected)
                        ),
                    });
                }
            }
            EntryKind::Derived { .. } => {
                return Err(AtlasError::Invariant {
                    invariant: "boundary curve words".into(),
                    detail: format!("boundary curve `{name}` may not be derived"),
                });
            }
        }
    }
    for entry in atlas.entries() {
        if let EntryKind::Plain { crossings, .. } = &entry.kind {
            for (gen, list) in crossings {
                if let Gen::E(i) = gen {
                    let net: i64 = list.iter().map(|c| c.sign as i64).sum();
                    if net != 0 {
                        return Err(AtlasError::Invariant {
                            invariant: "boundary loops are crossing-free".into(),
                            detail: format!(
                                "curve `{}` has net crossing {net} with boundary loop e{i}",
                                entry.name
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Renders an atlas in the same text format accepted by [`parse_atlas`].
pub fn serialize_atlas(atlas: &CurveAtlas) -> String {
    let sig = atlas.sig();
    let mut out = String::new();
    out.push_str(&format!("surface {sig}\n"));
    for entry in atlas.entries() {
        match &entry.kind {
            EntryKind::Plain { curve, crossings } => {
                out.push_str(&format!(
                    "curve {} word={}",
                    entry.name,
                    serialize_word(sig, curve.word())
                ));
                if !crossings.is_empty() {
                    out.push_str(&format!(" crossings={}", serialize_crossings(crossings)));
                }
                out.push('\n');
            }
            EntryKind::Derived { base, conj } => {
                out.push_str(&format!("curve {} from={base}", entry.name));
                if !conj.is_empty() {
                    out.push_str(&format!(" conj={}", serialize_twist_word(conj)));
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Reads and checks an atlas file from disk.
pub fn load_atlas(path: impl AsRef<Path>) -> Result<CurveAtlas, AtlasError> {
    let text = std::fs::read_to_string(path)?;
    parse_atlas(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(k: u16) -> SurfaceSig {
        SurfaceSig::torus_with_holes(k)
    }

    #[test]
    fn free_reduction_cancels_adjacent_inverses() {
        let s = sig(3);
        let w = GroupoidWord::from_letters(
            s,
            Basepoint(1),
            vec![
                Letter::new(Gen::Alpha, false),
                Letter::new(Gen::H(2), false),
                Letter::new(Gen::H(2), true),
                Letter::new(Gen::Alpha, true),
            ],
        )
        .unwrap();
        assert!(w.is_empty());
        assert!(w.is_loop());
    }

    #[test]
    fn broken_chain_is_rejected_with_position() {
        let s = sig(3);
        let err = GroupoidWord::from_letters(
            s,
            Basepoint(1),
            vec![
                Letter::new(Gen::H(2), false),
                Letter::new(Gen::E(3), false),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            WordError::CompositionMismatch {
                position: 1,
                expected: Basepoint(2),
                found: Basepoint(3),
            }
        );
    }

    #[test]
    fn compose_applies_inner_path_first() {
        let s = sig(2);
        let h = parse_word(s, "h2", Basepoint(1)).unwrap();
        let e = parse_word(s, "e2", Basepoint(2)).unwrap();
        let w = GroupoidWord::compose(&e, &h).unwrap();
        assert_eq!(w.source(), Basepoint(1));
        assert_eq!(w.target(), Basepoint(2));
        assert_eq!(w.to_string(), "e2,h2");
        assert!(GroupoidWord::compose(&h, &e).is_err());
    }

    #[test]
    fn words_round_trip_through_text() {
        let s = sig(4);
        for text in ["h3,alpha,~beta", "~h4,e4,h4", "e1", "~e1", ""] {
            let w = parse_word(s, text, Basepoint(1)).unwrap();
            assert_eq!(serialize_word(s, &w), text);
        }
    }

    #[test]
    fn boundary_words_read_as_conjugated_loops() {
        let s = sig(2);
        let w = boundary_word(s, 2).unwrap();
        assert_eq!(w.to_string(), "~h2,e2,h2");
        assert!(w.is_loop());
        let e1 = boundary_word(s, 1).unwrap();
        assert!(e1.is_loop());
        assert_eq!(e1.len(), 7);
    }

    #[test]
    fn e1_expansion_on_one_hole_is_the_torus_commutator() {
        let s = sig(1);
        let w = boundary_word(s, 1).unwrap();
        assert_eq!(w.to_string(), "~alpha,~beta,alpha,beta");
    }

    #[test]
    fn canonical_form_ignores_rotation_and_orientation() {
        let s = sig(2);
        let c1 = Curve::new(parse_word(s, "beta,alpha", Basepoint(1)).unwrap()).unwrap();
        let c2 = Curve::new(parse_word(s, "alpha,beta", Basepoint(1)).unwrap()).unwrap();
        let c3 = Curve::new(parse_word(s, "~alpha,~beta", Basepoint(1)).unwrap()).unwrap();
        assert_eq!(c1.canonical(), c2.canonical());
        assert_eq!(c1.canonical(), c3.canonical());
        let other = Curve::new(parse_word(s, "alpha,alpha", Basepoint(1)).unwrap()).unwrap();
        assert_ne!(c1.canonical(), other.canonical());
    }

    #[test]
    fn canonical_form_ignores_basepoint_conjugation() {
        let s = sig(3);
        let c = Curve::new(parse_word(s, "beta,alpha,~beta", Basepoint(1)).unwrap()).unwrap();
        let plain = Curve::new(parse_word(s, "alpha", Basepoint(1)).unwrap()).unwrap();
        assert_eq!(c.canonical(), plain.canonical());
    }

    fn tiny_atlas_text() -> String {
        [
            "surface genus=1 holes=1",
            "curve a1 word=alpha crossings=beta:+0",
            "curve b word=beta crossings=alpha:+0",
            "curve d1 word=e1 crossings=alpha:+0,-1~beta;beta:+2,-3",
        ]
        .join("\n")
    }

    #[test]
    fn atlas_round_trips_through_text() {
        let atlas = parse_atlas(&tiny_atlas_text()).unwrap();
        assert_eq!(atlas.sig(), sig(1));
        let text = serialize_atlas(&atlas);
        let again = parse_atlas(&text).unwrap();
        assert_eq!(serialize_atlas(&again), text);
    }

    #[test]
    fn atlas_rejects_wrong_boundary_word() {
        let text = [
            "surface genus=1 holes=1",
            "curve d1 word=alpha crossings=beta:+0",
        ]
        .join("\n");
        let err = parse_atlas(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("boundary curve words"), "got: {msg}");
    }

    #[test]
    fn atlas_rejects_net_boundary_crossing() {
        let text = [
            "surface genus=1 holes=2",
            "curve d1 word=e1 crossings=alpha:+0",
            "curve d2 word=~h2,e2,h2",
            "curve bad word=alpha crossings=e2:+0",
        ]
        .join("\n");
        let err = parse_atlas(&text).unwrap_err();
        assert!(err.to_string().contains("crossing-free"), "got: {err}");
    }

    #[test]
    fn derived_entries_must_reference_earlier_names() {
        let text = [
            "surface genus=1 holes=1",
            "curve d1 word=e1",
            "curve x from=missing conj=d1",
        ]
        .join("\n");
        assert!(parse_atlas(&text).is_err());
    }
}
