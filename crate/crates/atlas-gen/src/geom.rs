//! Exact rational plane geometry on a flat torus.
//!
//! Everything here works in covering coordinates on `R^2`; the torus is the
//! quotient by the lattice spanned by `(width, 0)` and `(0, 1)`. All
//! computations use exact rational arithmetic and fail hard on any degenerate
//! configuration (touching endpoints, collinear overlaps), so that every
//! reported crossing is an honest transverse intersection.

use num::rational::Ratio;
use num::{Signed, Zero};
use std::fmt;

pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Ratio::new(n, d)
}

pub fn qi(n: i128) -> Q {
    Ratio::from_integer(n)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

pub fn pt(x: Q, y: Q) -> Pt {
    Pt { x, y }
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn sub(a: Pt, b: Pt) -> Pt {
    pt(a.x - b.x, a.y - b.y)
}

fn cross(a: Pt, b: Pt) -> Q {
    a.x * b.y - a.y * b.x
}

/// Piecewise-linear arc in covering coordinates.
///
/// A polyline built with [`Polyline::closed`] represents a loop on the
/// torus: its last vertex must differ from its first by a lattice vector.
/// Ones built with [`Polyline::open`] represent embedded arcs between
/// marked points. Consumers treat both uniformly as vertex chains; the
/// constructors differ only in the closure validation.
#[derive(Clone, Debug)]
pub struct Polyline {
    pub pts: Vec<Pt>,
}

impl Polyline {
    pub fn open(pts: Vec<Pt>) -> Polyline {
        assert!(pts.len() >= 2, "polyline needs at least two vertices");
        Polyline { pts }
    }

    pub fn closed(pts: Vec<Pt>, width: i128) -> Polyline {
        assert!(pts.len() >= 2, "polyline needs at least two vertices");
        let first = pts[0];
        let last = *pts.last().unwrap();
        let dx = last.x - first.x;
        let dy = last.y - first.y;
        assert!(
            dx.is_integer() && dy.is_integer() && dx.numer() % width == 0,
            "closed polyline must end a lattice vector from its start (dx={dx}, dy={dy})"
        );
        Polyline { pts }
    }

    pub fn seg_count(&self) -> usize {
        self.pts.len() - 1
    }

    pub fn segment(&self, i: usize) -> (Pt, Pt) {
        (self.pts[i], self.pts[i + 1])
    }
}

/// Position along a polyline: segment index plus parameter inside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub seg: usize,
    pub t: Q,
}

/// A transverse crossing between two polylines on the torus.
///
/// `sign` is the sign of `det(dir_a, dir_b)` at the crossing point.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub on_a: Pos,
    pub on_b: Pos,
    pub sign: i8,
}

/// All transverse crossings between `a` and `b` on the torus of the given
/// width. Panics on any non-transverse contact so that silent undercounting
/// is impossible.
pub fn crossings(a: &Polyline, b: &Polyline, width: i128, label: &str) -> Vec<Crossing> {
    let mut out = Vec::new();
    for ia in 0..a.seg_count() {
        let (a0, a1) = a.segment(ia);
        let da = sub(a1, a0);
        for ib in 0..b.seg_count() {
            let (b0, b1) = b.segment(ib);
            let db = sub(b1, b0);
            for tx in -2i128..=2 {
                for ty in -2i128..=2 {
                    let shift = pt(qi(tx * width), qi(ty));
                    let c0 = pt(b0.x + shift.x, b0.y + shift.y);
                    let denom = cross(da, db);
                    let rhs = sub(c0, a0);
                    if denom.is_zero() {
                        if cross(rhs, da).is_zero() {
                            // Collinear: reject any overlap of positive length.
                            let (lo, hi) = project_interval(a0, da, c0, db);
                            if lo < hi {
                                panic!(
                                    "collinear overlap in {label}: segment {ia} of a \
                                     against segment {ib} of b shifted by ({tx},{ty})"
                                );
                            }
                        }
                        continue;
                    }
                    let s = cross(rhs, db) / denom;
                    let u = cross(rhs, da) / denom;
                    let zero = Q::zero();
                    let one = qi(1);
                    let s_in = s > zero && s < one;
                    let u_in = u > zero && u < one;
                    let s_touch = (s == zero || s == one) && u >= zero && u <= one;
                    let u_touch = (u == zero || u == one) && s >= zero && s <= one;
                    if s_touch || u_touch {
                        panic!(
                            "non-transverse contact in {label}: segment {ia} of a meets \
                             segment {ib} of b shifted by ({tx},{ty}) at s={s}, u={u}"
                        );
                    }
                    if s_in && u_in {
                        let sign = if cross(da, db).is_positive() { 1 } else { -1 };
                        out.push(Crossing {
                            on_a: Pos { seg: ia, t: s },
                            on_b: Pos { seg: ib, t: u },
                            sign,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Projection of the collinear segment `(c0, c0+db)` onto the parameter line
/// of `(a0, a0+da)`, clamped to both unit intervals; returns the clamped
/// `(lo, hi)` parameter window (empty when `lo >= hi`).
fn project_interval(a0: Pt, da: Pt, c0: Pt, db: Pt) -> (Q, Q) {
    let len2 = da.x * da.x + da.y * da.y;
    assert!(!len2.is_zero(), "degenerate segment");
    let p = |p: Pt| ((p.x - a0.x) * da.x + (p.y - a0.y) * da.y) / len2;
    let t0 = p(c0);
    let t1 = p(pt(c0.x + db.x, c0.y + db.y));
    let (mut lo, mut hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let zero = Q::zero();
    let one = qi(1);
    if lo < zero {
        lo = zero;
    }
    if hi > one {
        hi = one;
    }
    (lo, hi)
}

/// Axis-aligned open rectangle, used for the hole cut-outs of the model.
#[derive(Clone, Copy, Debug)]
pub struct Rect {
    pub min: Pt,
    pub max: Pt,
}

/// Panics if any interior point of `p` enters the open rectangle `r` (after
/// any lattice translation). Endpoints and tangential touches along the
/// closed boundary are allowed.
pub fn assert_clear_of(p: &Polyline, r: Rect, width: i128, label: &str) {
    for i in 0..p.seg_count() {
        let (a, b) = p.segment(i);
        for tx in -2i128..=2 {
            for ty in -2i128..=2 {
                let min = pt(r.min.x + qi(tx * width), r.min.y + qi(ty));
                let max = pt(r.max.x + qi(tx * width), r.max.y + qi(ty));
                if let Some((lo, hi)) = clip_to_rect(a, b, min, max) {
                    if lo < hi {
                        let mid = (lo + hi) / qi(2);
                        let m = pt(a.x + (b.x - a.x) * mid, a.y + (b.y - a.y) * mid);
                        if m.x > min.x && m.x < max.x && m.y > min.y && m.y < max.y {
                            panic!(
                                "{label}: segment {i} enters hole rectangle \
                                 [{:?}..{:?}] at {:?}",
                                min, max, m
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Liang-Barsky clip of segment `(a, b)` to the closed rectangle; returns the
/// parameter window inside it, if nonempty.
fn clip_to_rect(a: Pt, b: Pt, min: Pt, max: Pt) -> Option<(Q, Q)> {
    let mut lo = Q::zero();
    let mut hi = qi(1);
    let d = sub(b, a);
    for (p, q_) in [
        (-d.x, a.x - min.x),
        (d.x, max.x - a.x),
        (-d.y, a.y - min.y),
        (d.y, max.y - a.y),
    ] {
        if p.is_zero() {
            if q_.is_negative() {
                return None;
            }
        } else {
            let r = q_ / p;
            if p.is_negative() {
                if r > lo {
                    lo = r;
                }
            } else if r < hi {
                hi = r;
            }
        }
    }
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}
