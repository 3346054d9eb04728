//! Conjugacy testing by cyclic reduction and orbit intersection.
//!
//! Each side is first cyclically shortened (cancelling ends, rotating, and
//! taking normal forms). The words of the final length that are reachable by
//! rotations and equal-length rule swaps form an orbit, each tagged with the
//! conjugator that produced it. A shared word in the two orbits yields a
//! witness. The search meets in the middle, so no direct enumeration of
//! conjugators is needed.

use super::{cat, inv_sym, invert, SurfaceGroup, Sym};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjConfig {
    /// Longest witness accepted as `Yes`.
    pub bound: usize,
    /// Largest orbit explored per side before giving up.
    pub orbit_cap: usize,
}

impl Default for ConjConfig {
    fn default() -> Self {
        ConjConfig { bound: 16, orbit_cap: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `c` with `c u c^-1 = v`.
    Yes(Vec<Sym>),
    /// Name of the invariant that separates the two classes.
    No(&'static str),
    Inconclusive,
}

impl Conjugacy {
    pub fn is_yes(&self) -> bool {
        matches!(self, Conjugacy::Yes(_))
    }

    pub fn witness(&self) -> Option<&[Sym]> {
        match self {
            Conjugacy::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// Conjugation-invariant reason why `u` and `v` differ, if one is cheap to see.
pub fn separating_invariant(g: &SurfaceGroup, u: &[Sym], v: &[Sym]) -> Option<&'static str> {
    if g.orientation_character(u) != g.orientation_character(v) {
        return Some("orientation character");
    }
    if g.abelianize_z(u) != g.abelianize_z(v) {
        return Some("HomologyClassZ");
    }
    None
}

pub(crate) struct Orbit {
    pub length: usize,
    /// word -> conjugator `c` with `c · input · c^-1 = word`
    pub words: HashMap<Vec<Sym>, Vec<Sym>>,
}

fn has_cancelling_ends(w: &[Sym]) -> bool {
    w.len() >= 2 && w[0] == inv_sym(w[w.len() - 1])
}

fn neighbors(g: &SurfaceGroup, x: &[Sym], mut f: impl FnMut(Vec<Sym>, Vec<Sym>) -> bool) {
    let n = x.len();
    for k in 0..n.max(1) {
        let r = cat(&[&x[k..], &x[..k]]);
        let c = invert(&x[..k]);
        if f(g.normalize(&r), c.clone()) {
            return;
        }
        for (l, rr) in g.equal_length_rules() {
            if l.len() > n {
                continue;
            }
            for p in 0..=n - l.len() {
                if r[p..p + l.len()] == l[..] {
                    let y = cat(&[&r[..p], rr, &r[p + l.len()..]]);
                    if f(y, c.clone()) {
                        return;
                    }
                }
            }
        }
    }
}

/// Cyclically shortens `w` and returns the orbit of the shortest form found.
pub(crate) fn cyclic_orbit(g: &SurfaceGroup, w: &[Sym], cap: usize) -> Orbit {
    let mut c: Vec<Sym> = Vec::new();
    let mut w = g.normalize(w);
    loop {
        if has_cancelling_ends(&w) {
            c = g.normalize(&cat(&[&[inv_sym(w[0])], &c]));
            w = g.normalize(&w[1..w.len() - 1]);
            continue;
        }
        let mut seen: HashMap<Vec<Sym>, Vec<Sym>> = HashMap::new();
        seen.insert(w.clone(), c.clone());
        let mut stack = vec![w.clone()];
        let mut better: Option<(Vec<Sym>, Vec<Sym>)> = None;
        while let Some(x) = stack.pop() {
            let cx = seen[&x].clone();
            neighbors(g, &x, |y, cy| {
                let yn = g.normalize(&y);
                let cc = g.normalize(&cat(&[&cy, &cx]));
                if yn.len() < w.len() || has_cancelling_ends(&yn) {
                    better = Some((yn, cc));
                    return true;
                }
                if y.len() == w.len() && !seen.contains_key(&y) {
                    seen.insert(y.clone(), cc);
                    stack.push(y);
                }
                false
            });
            if better.is_some() || seen.len() > cap {
                break;
            }
        }
        match better {
            Some((yn, cc)) => {
                w = yn;
                c = cc;
            }
            None => return Orbit { length: w.len(), words: seen },
        }
    }
}

/// Searches for `c` with `c u c^-1 = v`.
pub fn is_conjugate(g: &SurfaceGroup, u: &[Sym], v: &[Sym], cfg: &ConjConfig) -> Conjugacy {
    if let Some(name) = separating_invariant(g, u, v) {
        return Conjugacy::No(name);
    }
    match find_witness(g, u, v, cfg.orbit_cap) {
        Some(c) if c.len() <= cfg.bound => Conjugacy::Yes(c),
        _ => Conjugacy::Inconclusive,
    }
}

/// Shortest (then shortlex-least) witness from the orbit intersection, verified.
pub fn find_witness(g: &SurfaceGroup, u: &[Sym], v: &[Sym], cap: usize) -> Option<Vec<Sym>> {
    let ou = cyclic_orbit(g, u, cap);
    let ov = cyclic_orbit(g, v, cap);
    if ou.length != ov.length {
        return None;
    }
    let rank = g.system().rank();
    let mut best: Option<Vec<Sym>> = None;
    for (word, c) in &ou.words {
        if let Some(c2) = ov.words.get(word) {
            let x = g.normalize(&cat(&[&invert(c2), c]));
            let better = match &best {
                None => true,
                Some(b) => super::rewrite::shortlex(rank, &x, b).is_lt(),
            };
            if better {
                best = Some(x);
            }
        }
    }
    let x = best?;
    assert!(g.equal(&g.conj(&x, u), v), "conjugacy witness failed verification");
    Some(x)
}
