//! Words over wall crossings and their expression in the surface basis.
//!
//! The flat model cuts the holed torus along a system of disjoint wall arcs
//! whose complement is a disk. A based loop is then determined by its
//! sequence of signed wall crossings, so two loops are equal in the
//! fundamental groupoid exactly when their reduced wall words agree. This
//! module reduces such words and rewrites them as products of the generator
//! arcs of the surface model, with a round-trip check on every answer.

use holed_torus::surface_model::{Basepoint, Letter, SurfaceSig};
use std::collections::BTreeSet;

/// One signed crossing of a named wall arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WallLetter {
    pub wall: u16,
    pub inv: bool,
}

impl WallLetter {
    pub fn new(wall: u16, inv: bool) -> Self {
        WallLetter { wall, inv }
    }

    pub fn inverse(self) -> Self {
        WallLetter {
            wall: self.wall,
            inv: !self.inv,
        }
    }
}

pub fn reduce_walls(letters: impl IntoIterator<Item = WallLetter>) -> Vec<WallLetter> {
    let mut out: Vec<WallLetter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_walls(letters: &[WallLetter]) -> Vec<WallLetter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

pub fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last().copied() == Some(l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Wall images of the signed generator arcs, indexed for inversion.
pub struct BasisImages {
    /// `(letter, source, target, wall image)` for every signed generator.
    items: Vec<(Letter, Basepoint, Basepoint, Vec<WallLetter>)>,
}

impl BasisImages {
    /// `images` lists each positive generator once with its wall word; the
    /// inverses are derived.
    pub fn new(sig: SurfaceSig, images: Vec<(Letter, Vec<WallLetter>)>) -> Self {
        assert_eq!(
            images.len(),
            sig.basis_len(),
            "need exactly one wall image per basis generator"
        );
        let mut items = Vec::new();
        for (letter, img) in images {
            assert!(!letter.inv, "images are given for positive letters");
            let img = reduce_walls(img);
            let (s, t) = letter.endpoints();
            items.push((letter, s, t, img.clone()));
            items.push((letter.inverse(), t, s, invert_walls(&img)));
        }
        BasisImages { items }
    }

    /// Wall image of a word given in traversal order.
    pub fn image_of_word(&self, word: &[Letter]) -> Vec<WallLetter> {
        let mut out = Vec::new();
        for l in word {
            let (_, _, _, img) = self
                .items
                .iter()
                .find(|(cand, _, _, _)| cand == l)
                .unwrap_or_else(|| panic!("letter {l} has no wall image"));
            out.extend(img.iter().copied());
        }
        reduce_walls(out)
    }

    /// Rewrites a reduced wall word as a generator word from `from` to `to`.
    ///
    /// Performs a cancellation-guided depth-first search: each candidate
    /// letter peels its image off the front of the remaining wall word, and
    /// branches that grow the remainder beyond a slack bound are pruned. The
    /// result is round-trip checked before it is returned.
    pub fn invert(&self, word: &[WallLetter], from: Basepoint, to: Basepoint) -> Vec<Letter> {
        let word = reduce_walls(word.to_vec());
        for slack in [0usize, 2, 4, 8] {
            let mut visited: BTreeSet<(Basepoint, Vec<WallLetter>)> = BTreeSet::new();
            let mut steps = 0usize;
            if let Some(mut found) = self.dfs(
                &word,
                from,
                to,
                word.len() + slack,
                &mut visited,
                &mut steps,
            ) {
                found.reverse();
                let check = self.image_of_word(&found);
                assert_eq!(
                    check, word,
                    "round-trip failure while inverting a wall word"
                );
                return found;
            }
        }
        panic!(
            "could not express wall word {word:?} from {from} to {to} in the generator arcs"
        );
    }

    /// Returns the answer in reverse (letters pushed while unwinding).
    fn dfs(
        &self,
        word: &[WallLetter],
        at: Basepoint,
        to: Basepoint,
        max_len: usize,
        visited: &mut BTreeSet<(Basepoint, Vec<WallLetter>)>,
        steps: &mut usize,
    ) -> Option<Vec<Letter>> {
        if word.is_empty() && at == to {
            return Some(Vec::new());
        }
        *steps += 1;
        if *steps > 4_000_000 {
            panic!("inversion search exceeded its step budget");
        }
        if !visited.insert((at, word.to_vec())) {
            return None;
        }
        // Candidates: letters departing from `at`, ranked by how short they
        // leave the remaining word.
        let mut ranked: Vec<(usize, Letter, Vec<WallLetter>)> = Vec::new();
        for (letter, s, _, img) in &self.items {
            if *s != at {
                continue;
            }
            let mut rest = invert_walls(img);
            rest.extend(word.iter().copied());
            let rest = reduce_walls(rest);
            if rest.len() > max_len {
                continue;
            }
            ranked.push((rest.len(), *letter, rest));
        }
        ranked.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        for (_, letter, rest) in ranked {
            let (_, t) = letter.endpoints();
            if let Some(mut tail) = self.dfs(&rest, t, to, max_len, visited, steps) {
                tail.push(letter);
                return Some(tail);
            }
        }
        None
    }
}
