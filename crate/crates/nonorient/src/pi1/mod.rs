//! The surface group `π1(N_g) = <x1..xg | x1² x2² ⋯ xg²>`.
//!
//! Elements are `Vec<u8>` words over symbols where `2k` stands for
//! `x_{k+1}` and `2k + 1` for its inverse. Normal forms come from a shortlex
//! completion with all positive generators ordered before all inverses.
//! Genus 2 additionally decides equality through [`klein::KleinCoords`].

pub mod conjugacy;
pub mod klein;
pub mod rewrite;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

pub use conjugacy::{ConjConfig, Conjugacy};
use klein::KleinCoords;
use rewrite::{Budget, CompletionError, RewriteSystem};

pub type Sym = u8;

/// Largest genus the symbol encoding and the `x1..x9` syntax accept.
pub const MAX_GENUS: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("genus {0} is out of range (need 2 <= g <= {MAX_GENUS})")]
    Genus(usize),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error("cannot parse group element at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
}

pub fn sym(index: usize, inverse: bool) -> Sym {
    (2 * index + inverse as usize) as Sym
}

pub fn inv_sym(s: Sym) -> Sym {
    s ^ 1
}

pub fn invert(w: &[Sym]) -> Vec<Sym> {
    w.iter().rev().map(|&s| inv_sym(s)).collect()
}

pub fn free_reduce(w: &[Sym]) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::with_capacity(w.len());
    for &s in w {
        if out.last() == Some(&inv_sym(s)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// Concatenates the given slices.
pub fn cat(parts: &[&[Sym]]) -> Vec<Sym> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Element of `H1(N_g; Z) = Z^g / <(2,…,2)>`, stored with the last
/// coordinate in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyClassZ {
    pub coords: Vec<i64>,
}

impl HomologyClassZ {
    pub fn canonical(mut coords: Vec<i64>) -> Self {
        if let Some(&last) = coords.last() {
            let m = last.div_euclid(2);
            for c in coords.iter_mut() {
                *c -= 2 * m;
            }
        }
        HomologyClassZ { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &HomologyClassZ) -> HomologyClassZ {
        Self::canonical(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for HomologyClassZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `π1(N_g)` with its completed rewriting system.
#[derive(Debug)]
pub struct SurfaceGroup {
    genus: usize,
    system: RewriteSystem,
    equal_length: Vec<(Vec<Sym>, Vec<Sym>)>,
}

impl SurfaceGroup {
    pub fn new(genus: usize) -> Result<Self, Pi1Error> {
        Self::with_budget(genus, Budget::default())
    }

    /// Runs the completion under an explicit budget.
    pub fn with_budget(genus: usize, budget: Budget) -> Result<Self, Pi1Error> {
        if !(2..=MAX_GENUS).contains(&genus) {
            return Err(Pi1Error::Genus(genus));
        }
        let alphabet = 2 * genus;
        // x_k before every inverse: a < b < … < A < B < …
        let rank: Vec<u8> = (0..alphabet).map(|s| (s / 2 + if s % 2 == 1 { genus } else { 0 }) as u8).collect();
        let mut eqs: Vec<(Vec<Sym>, Vec<Sym>)> = (0..alphabet as Sym).map(|s| (vec![s, inv_sym(s)], vec![])).collect();
        let relator: Vec<Sym> = (0..genus).flat_map(|k| [sym(k, false), sym(k, false)]).collect();
        eqs.push((relator, vec![]));
        let system = rewrite::complete(alphabet, rank, eqs, budget)?;
        let mut equal_length = Vec::new();
        for r in system.rules() {
            if r.lhs.len() == r.rhs.len() {
                equal_length.push((r.lhs.clone(), r.rhs.clone()));
                equal_length.push((r.rhs.clone(), r.lhs.clone()));
            }
        }
        Ok(SurfaceGroup { genus, system, equal_length })
    }

    /// Process-wide cached group; completion runs at most once per genus.
    pub fn shared(genus: usize) -> Result<Arc<SurfaceGroup>, Pi1Error> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SurfaceGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = cache.lock().unwrap().get(&genus) {
            return Ok(g.clone());
        }
        let built = Arc::new(SurfaceGroup::new(genus)?);
        Ok(cache.lock().unwrap().entry(genus).or_insert(built).clone())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub(crate) fn equal_length_rules(&self) -> &[(Vec<Sym>, Vec<Sym>)] {
        &self.equal_length
    }

    /// `x1 x1 x2 x2 ⋯ xg xg`.
    pub fn relator(&self) -> Vec<Sym> {
        (0..self.genus).flat_map(|k| [sym(k, false), sym(k, false)]).collect()
    }

    pub fn generator(&self, k: usize) -> Vec<Sym> {
        vec![sym(k, false)]
    }

    pub fn normalize(&self, w: &[Sym]) -> Vec<Sym> {
        self.system.normalize(w)
    }

    pub fn is_identity(&self, w: &[Sym]) -> bool {
        if self.genus == 2 {
            KleinCoords::of_word(w) == KleinCoords::IDENTITY
        } else {
            self.normalize(w).is_empty()
        }
    }

    pub fn equal(&self, u: &[Sym], v: &[Sym]) -> bool {
        self.is_identity(&cat(&[u, &invert(v)]))
    }

    /// Normal form of `c · w · c^-1`.
    pub fn conj(&self, c: &[Sym], w: &[Sym]) -> Vec<Sym> {
        self.normalize(&cat(&[c, w, &invert(c)]))
    }

    pub fn abelianize_z(&self, w: &[Sym]) -> HomologyClassZ {
        let mut v = vec![0i64; self.genus];
        for &s in w {
            v[(s / 2) as usize] += if s % 2 == 0 { 1 } else { -1 };
        }
        HomologyClassZ::canonical(v)
    }

    pub fn abelianize_z2(&self, w: &[Sym]) -> Vec<u8> {
        let mut v = vec![0u8; self.genus];
        for &s in w {
            v[(s / 2) as usize] ^= 1;
        }
        v
    }

    /// `-1` on one-sided loops: the parity of the total exponent sum.
    pub fn orientation_character(&self, w: &[Sym]) -> i8 {
        if w.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_conjugate(&self, u: &[Sym], v: &[Sym], cfg: &ConjConfig) -> Conjugacy {
        conjugacy::is_conjugate(self, u, v, cfg)
    }

    /// Parses `x1 x2^-1 x3'` style text, or the compact form `aBc`
    /// (lowercase = generator, uppercase = inverse). `1` is the identity.
    pub fn parse_element(&self, text: &str) -> Result<Vec<Sym>, Pi1Error> {
        parse_element(text, self.genus)
    }
}

pub fn parse_element(text: &str, genus: usize) -> Result<Vec<Sym>, Pi1Error> {
    let err = |offset: usize, msg: &str| Pi1Error::Parse { offset, msg: msg.to_string() };
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip = |i: &mut usize| {
        while *i < b.len() && b[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip(&mut i);
    if text.trim() == "1" || text.trim().is_empty() {
        return Ok(out);
    }
    while i < b.len() {
        let start = i;
        let c = b[i];
        let (index, mut inverse) = if c == b'x' {
            i += 1;
            let d = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if d == i {
                return Err(err(start, "expected generator index after `x`"));
            }
            let k: usize = text[d..i].parse().map_err(|_| err(d, "bad index"))?;
            if k == 0 {
                return Err(err(d, "generator indices start at 1"));
            }
            (k - 1, false)
        } else if c.is_ascii_alphabetic() {
            i += 1;
            ((c.to_ascii_lowercase() - b'a') as usize, c.is_ascii_uppercase())
        } else {
            return Err(err(start, "unexpected character"));
        };
        if index >= genus {
            return Err(err(start, &format!("generator outside genus {genus}")));
        }
        let mut power: i64 = 1;
        if i < b.len() && b[i] == b'\'' {
            inverse = !inverse;
            i += 1;
        } else if i < b.len() && b[i] == b'^' {
            i += 1;
            let d = i;
            if i < b.len() && b[i] == b'-' {
                i += 1;
            }
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            power = text[d..i].parse().map_err(|_| err(d, "bad exponent"))?;
        }
        if power < 0 {
            inverse = !inverse;
        }
        for _ in 0..power.unsigned_abs() {
            out.push(sym(index, inverse));
        }
        skip(&mut i);
    }
    Ok(free_reduce(&out))
}

/// Prints `x1 x2^-1`; the empty word prints as `1`.
pub fn format_element(w: &[Sym]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let s = w[i];
        let mut j = i;
        while j < w.len() && w[j] == s {
            j += 1;
        }
        let run = (j - i) as i64 * if s.is_multiple_of(2) { 1 } else { -1 };
        let k = s / 2 + 1;
        parts.push(if run == 1 { format!("x{k}") } else { format!("x{k}^{run}") });
        i = j;
    }
    parts.join(" ")
}

/// Compact spelling: `a`..`i` for generators, uppercase for inverses.
pub fn to_compact(w: &[Sym]) -> String {
    w.iter()
        .map(|&s| {
            let c = (b'a' + s / 2) as char;
            if s % 2 == 1 {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect()
}
