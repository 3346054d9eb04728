//! Dehn twists read off the standard `2g`-gon model of `N_g`.
//!
//! The polygon has sides `0..2g`; sides `2k` and `2k + 1` are the two copies
//! of the edge for `x_{k+1}`, glued with the same orientation, and every
//! vertex is the basepoint. A simple closed curve is a cyclic list of chords
//! `(P_j, Q_j)` where `Q_j` and `P_{j+1}` are paired points on glued sides.
//!
//! Walking counter-clockwise from the side of `P` to the side of `Q` spells
//! the homotopy class of the chord after sliding its ends onto the corner.
//! Twisting along the curve inserts a copy of the curve, started at the
//! crossing point and with a sign fixed by the side of the chord, every time
//! a generator loop crosses it.

use crate::pi1::{invert, sym, SurfaceGroup, Sym};

/// A point on side `side` at relative position `t` in `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SidePoint {
    pub side: usize,
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chord {
    pub from: SidePoint,
    pub to: SidePoint,
}

fn chord(a: usize, b: usize) -> Chord {
    Chord { from: SidePoint { side: a, t: 0.5 }, to: SidePoint { side: b, t: 0.5 } }
}

/// Letters met walking from the side of `p` up to (excluding) the side of `q`.
pub fn corner_word(genus: usize, p: SidePoint, q: SidePoint) -> Vec<Sym> {
    let mut out = Vec::new();
    let mut s = p.side;
    while s != q.side {
        out.push(sym(s / 2, false));
        s = (s + 1) % (2 * genus);
    }
    out
}

/// The curve through crosscaps `i..=j` (1-based) that cuts each corner
/// between consecutive crosscaps and closes up around the outside.
pub fn corner_curve(i: usize, j: usize) -> Vec<Chord> {
    let mut arcs: Vec<Chord> = (i..j).map(|k| chord(2 * k - 1, 2 * k)).collect();
    arcs.push(chord(2 * j - 1, 2 * i - 2));
    arcs
}

/// Checks that consecutive chords meet at glued points and that no two
/// chords cross inside the polygon.
pub fn is_simple_closed(genus: usize, arcs: &[Chord]) -> bool {
    let n = arcs.len();
    let pos = |p: SidePoint| p.side as f64 + p.t;
    for j in 0..n {
        let q = arcs[j].to;
        let p = arcs[(j + 1) % n].from;
        if p.side != (q.side ^ 1) || p.t != q.t || p.side >= 2 * genus {
            return false;
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let (x0, x1) = minmax(pos(arcs[a].from), pos(arcs[a].to));
            let (y0, y1) = minmax(pos(arcs[b].from), pos(arcs[b].to));
            let inside = |v: f64| x0 < v && v < x1;
            if inside(y0) != inside(y1) {
                return false;
            }
        }
    }
    true
}

fn minmax(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The word of the whole curve.
pub fn curve_word(genus: usize, arcs: &[Chord]) -> Vec<Sym> {
    arcs.iter().flat_map(|a| corner_word(genus, a.from, a.to)).collect()
}

/// Images of the generators under the twist along `arcs`; `s0 = ±1` picks
/// the direction.
pub fn twist_images(group: &SurfaceGroup, arcs: &[Chord], s0: i32) -> Vec<Vec<Sym>> {
    let g = group.genus();
    let n = arcs.len();
    (0..g)
        .map(|k| {
            let mut pts: Vec<(f64, Vec<Sym>)> = Vec::new();
            for (j, arc) in arcs.iter().enumerate() {
                if arc.from.side / 2 != k {
                    continue;
                }
                let sigma = if j % 2 == 0 { 1 } else { -1 };
                let eps = -sigma * s0;
                let c: Vec<Sym> = (0..n)
                    .flat_map(|m| {
                        let a = arcs[(j + m) % n];
                        corner_word(g, a.from, a.to)
                    })
                    .collect();
                pts.push((arc.from.t, if eps > 0 { c } else { invert(&c) }));
            }
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut w: Vec<Sym> = pts.into_iter().flat_map(|(_, c)| c).collect();
            w.push(sym(k, false));
            group.normalize(&w)
        })
        .collect()
}
