//! The flat model of the holed torus that all atlas data is derived from.
//!
//! The surface with `k` holes is the square torus `R^2 / (kZ x Z)` with `k`
//! open rectangular holes cut out along the middle row. Hole `i` occupies
//! `(i - 3/5, i - 2/5) x (2/5, 3/5)` and carries its marked point `z_i` at
//! the middle of its bottom edge.
//!
//! Three families of disjoint wall arcs cut the complement of the holes into
//! a disk:
//!
//! * `X` runs from the top edge of hole 1 up over the handle and back to the
//!   bottom edge of hole 1;
//! * `Y` runs from the right edge of hole 1 below all holes, once around,
//!   to the left edge of hole 1;
//! * `B_i` (for `i = 1..k-1`) arches from the top edge of hole `i` to the
//!   top edge of hole `i + 1`.
//!
//! Every curve and generator arc of the model is a concrete rational
//! polyline, so intersection words are computed exactly.

use crate::geom::{pt, q, qi, Polyline, Pt, Rect};
use holed_torus::surface_model::{Gen, SurfaceSig};

pub struct Wall {
    pub name: String,
    pub poly: Polyline,
}

pub struct CurveSpec {
    pub name: String,
    /// Closed polyline giving the curve's cycle.
    pub cycle: Polyline,
    /// Arc from `z_1` to the cycle's first vertex.
    pub conn: Polyline,
}

pub struct PathSpec {
    pub gen: Gen,
    pub poly: Polyline,
}

pub struct Model {
    pub sig: SurfaceSig,
    pub width: i128,
    pub walls: Vec<Wall>,
    pub curves: Vec<CurveSpec>,
    pub paths: Vec<PathSpec>,
    /// Check loop for the derived boundary generator `e_1`, based at `z_1`.
    pub e1_check: Polyline,
    pub holes: Vec<Rect>,
}

fn c(n: i128) -> crate::geom::Q {
    q(n, 100)
}

/// Ring of the boundary loop check path around hole `i`, counterclockwise
/// from the middle of its bottom side.
fn ring(i: i128) -> Vec<Pt> {
    vec![
        pt(c(100 * i - 50), c(37)),
        pt(c(100 * i - 37), c(37)),
        pt(c(100 * i - 37), c(63)),
        pt(c(100 * i - 63), c(63)),
        pt(c(100 * i - 63), c(37)),
        pt(c(100 * i - 50), c(37)),
    ]
}

pub fn build(k: u16) -> Model {
    assert!((1..=16).contains(&k));
    let sig = SurfaceSig::torus_with_holes(k);
    let width = k as i128;
    let ki = k as i128;

    let mut walls = Vec::new();
    walls.push(Wall {
        name: "X".into(),
        poly: Polyline::open(vec![
            pt(c(50), c(60)),
            pt(c(50), c(132)),
            pt(c(46), c(132)),
            pt(c(46), c(140)),
        ]),
    });
    walls.push(Wall {
        name: "Y".into(),
        poly: Polyline::open(vec![
            pt(c(60), c(45)),
            pt(c(66), c(45)),
            pt(c(66), c(2)),
            pt(c(100 * ki + 34), c(2)),
            pt(c(100 * ki + 34), c(45)),
            pt(c(100 * ki + 40), c(45)),
        ]),
    });
    for i in 1..=ki - 1 {
        walls.push(Wall {
            name: format!("B{i}"),
            poly: Polyline::open(vec![
                pt(c(100 * i - 45), c(60)),
                pt(c(100 * i - 45), c(85)),
                pt(c(100 * i + 45), c(85)),
                pt(c(100 * i + 45), c(60)),
            ]),
        });
    }

    let mut curves = Vec::new();
    for i in 1..=ki {
        curves.push(CurveSpec {
            name: format!("d{i}"),
            cycle: Polyline::closed(
                vec![
                    pt(c(100 * i - 48), c(31)),
                    pt(c(100 * i - 31), c(31)),
                    pt(c(100 * i - 31), c(69)),
                    pt(c(100 * i - 69), c(69)),
                    pt(c(100 * i - 69), c(31)),
                    pt(c(100 * i - 48), c(31)),
                ],
                width,
            ),
            conn: if i == 1 {
                Polyline::open(vec![pt(c(50), c(40)), pt(c(52), c(355) / qi(10)), pt(c(52), c(31))])
            } else {
                Polyline::open(vec![
                    pt(c(50), c(40)),
                    pt(c(52), c(355) / qi(10)),
                    pt(c(100 * i - 52), c(355) / qi(10)),
                    pt(c(100 * i - 48), c(31)),
                ])
            },
        });
    }
    for i in 1..=ki {
        curves.push(CurveSpec {
            name: format!("a{i}"),
            cycle: Polyline::closed(
                vec![
                    pt(c(100 * i - 98), c(365) / qi(10)),
                    pt(c(100 * i - 98), c(365) / qi(10) + qi(1)),
                ],
                width,
            ),
            conn: if i == 1 {
                Polyline::open(vec![
                    pt(c(50), c(40)),
                    pt(c(48), c(365) / qi(10)),
                    pt(c(2), c(365) / qi(10)),
                ])
            } else {
                Polyline::open(vec![
                    pt(c(50), c(40)),
                    pt(c(52), c(365) / qi(10)),
                    pt(c(100 * i - 98), c(365) / qi(10)),
                ])
            },
        });
    }
    curves.push(CurveSpec {
        name: "b".into(),
        cycle: Polyline::closed(
            vec![pt(c(53), c(13)), pt(c(100 * ki + 53), c(13))],
            width,
        ),
        conn: Polyline::open(vec![pt(c(50), c(40)), pt(c(53), c(37)), pt(c(53), c(13))]),
    });
    for i in 1..=ki {
        let low = c(13 + i);
        let top = c(95 - i);
        curves.push(CurveSpec {
            name: format!("b{i}"),
            cycle: Polyline::closed(
                vec![
                    pt(c(100 * i - 25), top),
                    pt(c(100 * (i + ki) - 70), top),
                    pt(c(100 * (i + ki) - 70), low),
                    pt(c(100 * (i + ki) - 30), low),
                    pt(c(100 * (i + ki) - 30), top),
                    pt(c(100 * (i + ki) - 25), top),
                ],
                width,
            ),
            conn: Polyline::open(vec![
                pt(c(50), c(40)),
                pt(c(53), c(365) / qi(10)),
                pt(c(53), c(25)),
                pt(c(100 * i - 25), c(25)),
                pt(c(100 * i - 25), top),
            ]),
        });
    }

    let mut paths = Vec::new();
    paths.push(PathSpec {
        gen: Gen::Alpha,
        poly: Polyline::open(vec![
            pt(c(50), c(40)),
            pt(c(44), c(345) / qi(10)),
            pt(c(20), c(345) / qi(10)),
            pt(c(20), c(355) / qi(10) + qi(1)),
            pt(c(44), c(355) / qi(10) + qi(1)),
            pt(c(50), c(140)),
        ]),
    });
    paths.push(PathSpec {
        gen: Gen::Beta,
        poly: Polyline::open(vec![
            pt(c(50), c(40)),
            pt(c(56), c(34)),
            pt(c(100 * ki + 44), c(34)),
            pt(c(100 * ki + 50), c(40)),
        ]),
    });
    for i in 2..=k {
        let ii = i as i128;
        let mut pts = vec![pt(c(100 * ii - 50), c(40))];
        pts.extend(ring(ii));
        pts.push(pt(c(100 * ii - 50), c(40)));
        paths.push(PathSpec {
            gen: Gen::E(i),
            poly: Polyline::open(pts),
        });
    }
    for i in 2..=k {
        let ii = i as i128;
        paths.push(PathSpec {
            gen: Gen::H(i),
            poly: Polyline::open(vec![
                pt(c(50), c(40)),
                pt(c(52), c(355) / qi(10)),
                pt(c(100 * ii - 52), c(355) / qi(10)),
                pt(c(100 * ii - 50), c(40)),
            ]),
        });
    }

    let mut e1_pts = vec![pt(c(50), c(40))];
    e1_pts.extend(ring(1));
    e1_pts.push(pt(c(50), c(40)));
    let e1_check = Polyline::open(e1_pts);

    let holes = (1..=ki)
        .map(|i| Rect {
            min: pt(c(100 * i - 60), c(40)),
            max: pt(c(100 * i - 40), c(60)),
        })
        .collect();

    Model {
        sig,
        width,
        walls,
        curves,
        paths,
        e1_check,
        holes,
    }
}
