//! Homomorphisms `π1(N_g) -> S_n` for small `n`, used to refute innerness.
//!
//! If `φ` is conjugation by `c`, then `ρ∘φ` is conjugate to `ρ` by `ρ(c)` for
//! every homomorphism `ρ`. Finding a `ρ` for which no single permutation
//! conjugates `ρ` onto `ρ∘φ` proves `φ` is not inner.

use crate::pi1::Sym;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Perm = [u8; 4];

const ID: Perm = [0, 1, 2, 3];

fn mul(p: &Perm, q: &Perm) -> Perm {
    [p[q[0] as usize], p[q[1] as usize], p[q[2] as usize], p[q[3] as usize]]
}

fn inv(p: &Perm) -> Perm {
    let mut out = ID;
    for (i, &v) in p.iter().enumerate() {
        out[v as usize] = i as u8;
    }
    out
}

/// All permutations of `{0..n}` (fixing the rest of `0..4`).
fn symmetric(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        let mut p = ID;
        p[..cur.len()].copy_from_slice(cur);
        out.push(p);
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

type HomTable = Arc<Vec<Vec<Perm>>>;

/// Every generator tuple `(σ_1..σ_g)` with `σ_1² ⋯ σ_g² = 1` in `S_n`.
fn homs(genus: usize, n: usize) -> HomTable {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), HomTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(h) = cache.lock().unwrap().get(&(genus, n)) {
        return h.clone();
    }
    let group = symmetric(n);
    let mut roots: HashMap<Perm, Vec<Perm>> = HashMap::new();
    for p in &group {
        roots.entry(mul(p, p)).or_default().push(*p);
    }
    let mut out = Vec::new();
    let mut prefix: Vec<Perm> = Vec::with_capacity(genus);
    extend(&group, &roots, genus, &mut prefix, ID, &mut out);
    let h = Arc::new(out);
    cache.lock().unwrap().insert((genus, n), h.clone());
    h
}

fn extend(
    group: &[Perm],
    roots: &HashMap<Perm, Vec<Perm>>,
    genus: usize,
    prefix: &mut Vec<Perm>,
    acc: Perm,
    out: &mut Vec<Vec<Perm>>,
) {
    if prefix.len() + 1 == genus {
        // σ_g² must equal acc^-1
        if let Some(rs) = roots.get(&inv(&acc)) {
            for r in rs {
                let mut t = prefix.clone();
                t.push(*r);
                out.push(t);
            }
        }
        return;
    }
    for p in group {
        prefix.push(*p);
        extend(group, roots, genus, prefix, mul(&acc, &mul(p, p)), out);
        prefix.pop();
    }
}

fn eval(rho: &[Perm], w: &[Sym]) -> Perm {
    w.iter().fold(ID, |acc, &s| {
        let p = rho[(s / 2) as usize];
        mul(&acc, &if s % 2 == 0 { p } else { inv(&p) })
    })
}

/// Name of an `S_n` quotient witnessing that the automorphism with these
/// generator images is not inner, if `S_3` or `S_4` finds one.
pub fn refutes_inner(genus: usize, images: &[Vec<Sym>]) -> Option<&'static str> {
    for (n, name) in [(3, "finite quotient S3"), (4, "finite quotient S4")] {
        let group = symmetric(n);
        for rho in homs(genus, n).iter() {
            let target: Vec<Perm> = images.iter().map(|w| eval(rho, w)).collect();
            let conjugate = group.iter().any(|t| {
                let ti = inv(t);
                rho.iter().zip(&target).all(|(r, s)| mul(&mul(t, r), &ti) == *s)
            });
            if !conjugate {
                return Some(name);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(symmetric(3).len(), 6);
        assert_eq!(symmetric(4).len(), 24);
    }

    #[test]
    fn homs_satisfy_relator() {
        for rho in homs(3, 3).iter() {
            let r = rho.iter().fold(ID, |a, p| mul(&a, &mul(p, p)));
            assert_eq!(r, ID);
        }
        // the trivial map is always there
        assert!(homs(3, 3).iter().any(|r| r.iter().all(|p| *p == ID)));
    }

    #[test]
    fn identity_is_not_refuted() {
        let images: Vec<Vec<Sym>> = (0..3).map(|k| vec![2 * k as Sym]).collect();
        assert_eq!(refutes_inner(3, &images), None);
    }

    #[test]
    fn swapping_generators_with_wrong_relator_is_refuted() {
        // x1 -> x2 is not inner: x1 and x2 have different homology, and some
        // S3 quotient sees it as well
        let images: Vec<Vec<Sym>> = vec![vec![2], vec![0], vec![4]];
        assert!(refutes_inner(3, &images).is_some());
    }
}
