//! Relator-saturation oracle shared by the integration tests.
//!
//! The oracle never rewrites. It saturates the set of freely reduced words
//! that are trivial in `<x1..xg | x1^2..xg^2>` by inserting rotations of the
//! relator (or its inverse) anywhere and by conjugating with single letters,
//! keeping every intermediate word within a length cap.

#![allow(dead_code)]

use nonorient::pi1::{SurfaceGroup, Sym};
use std::collections::{HashSet, VecDeque};

pub fn inv(s: Sym) -> Sym {
    s ^ 1
}

pub fn free_reduce(w: &[Sym]) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::with_capacity(w.len());
    for &s in w {
        if out.last() == Some(&inv(s)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

pub fn relator_rotations(genus: usize) -> Vec<Vec<Sym>> {
    let r: Vec<Sym> = (0..genus).flat_map(|k| [2 * k as Sym, 2 * k as Sym]).collect();
    let r_inv: Vec<Sym> = r.iter().rev().map(|&s| inv(s)).collect();
    let mut out = Vec::new();
    for w in [r, r_inv] {
        for i in 0..w.len() {
            let mut rot = w[i..].to_vec();
            rot.extend_from_slice(&w[..i]);
            out.push(rot);
        }
    }
    out
}

/// Trivial reduced words of length at most `cap`.
pub fn trivial_words(genus: usize, cap: usize) -> HashSet<Vec<Sym>> {
    let rots = relator_rotations(genus);
    let letters: Vec<Sym> = (0..2 * genus as Sym).collect();
    let mut seen: HashSet<Vec<Sym>> = HashSet::from([Vec::new()]);
    let mut queue: VecDeque<Vec<Sym>> = VecDeque::from([Vec::new()]);
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for p in 0..=w.len() {
            for r in &rots {
                let mut v = w[..p].to_vec();
                v.extend_from_slice(r);
                v.extend_from_slice(&w[p..]);
                next.push(free_reduce(&v));
            }
        }
        for &a in &letters {
            let mut v = vec![a];
            v.extend_from_slice(&w);
            v.push(inv(a));
            next.push(free_reduce(&v));
        }
        for v in next {
            if v.len() <= cap && !seen.contains(&v) {
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Every freely reduced word of length at most `n`.
pub fn reduced_words(genus: usize, n: usize) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut grown = Vec::new();
        for w in &layer {
            for s in 0..2 * genus as Sym {
                if w.last() != Some(&inv(s)) {
                    let mut v: Vec<Sym> = w.clone();
                    v.push(s);
                    grown.push(v);
                }
            }
        }
        out.extend(grown.iter().cloned());
        layer = grown;
    }
    out
}

pub struct OracleReport {
    pub words: usize,
    pub trivial: usize,
    pub disagreements: Vec<Vec<Sym>>,
}

/// Compares `is_identity` with the oracle on every reduced word up to `len`.
pub fn check_against_oracle(genus: usize, len: usize, cap: usize) -> OracleReport {
    let group = SurfaceGroup::new(genus).unwrap();
    let trivial = trivial_words(genus, cap);
    let words = reduced_words(genus, len);
    let disagreements: Vec<Vec<Sym>> =
        words.iter().filter(|w| group.is_identity(w) != trivial.contains(*w)).cloned().collect();
    OracleReport { words: words.len(), trivial: words.iter().filter(|w| trivial.contains(*w)).count(), disagreements }
}
