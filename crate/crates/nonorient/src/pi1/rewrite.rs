//! Shortlex Knuth-Bendix completion for monoid presentations over a finite
//! alphabet of `u8` symbols.

use std::cmp::Ordering;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<u8>,
    pub rhs: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("completion exceeded the budget of {0} rules")]
    RuleBudget(usize),
    #[error("completion exceeded the budget of {0} critical pairs")]
    PairBudget(usize),
}

/// Limits for [`complete`].
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_rules: usize,
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_rules: 2000, max_pairs: 2_000_000 }
    }
}

/// Shortlex order where symbol `s` has weight `rank[s]`.
pub fn shortlex(rank: &[u8], a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            match rank[*x as usize].cmp(&rank[*y as usize]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

struct Builder {
    rank: Vec<u8>,
    rules: Vec<Option<Rule>>,
}

impl Builder {
    fn reduce(&self, w: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::with_capacity(w.len());
        let mut input: Vec<u8> = w.iter().rev().copied().collect();
        'outer: while let Some(c) = input.pop() {
            out.push(c);
            for r in self.rules.iter().flatten() {
                if out.ends_with(&r.lhs) {
                    out.truncate(out.len() - r.lhs.len());
                    input.extend(r.rhs.iter().rev());
                    continue 'outer;
                }
            }
        }
        out
    }

    fn active(&self) -> usize {
        self.rules.iter().flatten().count()
    }
}

/// Completes `equations` into a confluent shortlex rewriting system.
pub fn complete(
    alphabet: usize,
    rank: Vec<u8>,
    equations: Vec<(Vec<u8>, Vec<u8>)>,
    budget: Budget,
) -> Result<RewriteSystem, CompletionError> {
    let mut b = Builder { rank, rules: Vec::new() };
    let mut pending: VecDeque<(Vec<u8>, Vec<u8>)> = equations.into();
    let mut processed = 0usize;
    while let Some((x, y)) = pending.pop_front() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(CompletionError::PairBudget(budget.max_pairs));
        }
        let x = b.reduce(&x);
        let y = b.reduce(&y);
        let (lhs, rhs) = match shortlex(&b.rank, &x, &y) {
            Ordering::Equal => continue,
            Ordering::Greater => (x, y),
            Ordering::Less => (y, x),
        };
        for slot in b.rules.iter_mut() {
            if slot.as_ref().is_some_and(|r| contains(&r.lhs, &lhs)) {
                let r = slot.take().unwrap();
                pending.push_back((r.lhs, r.rhs));
            }
        }
        let new = Rule { lhs, rhs };
        for r in b.rules.iter().flatten() {
            overlaps(&new, r, &mut pending);
            overlaps(r, &new, &mut pending);
        }
        overlaps(&new, &new, &mut pending);
        b.rules.push(Some(new));
        for i in 0..b.rules.len() {
            if let Some(r) = b.rules[i].take() {
                let rhs = b.reduce(&r.rhs);
                b.rules[i] = Some(Rule { lhs: r.lhs, rhs });
            }
        }
        if b.active() > budget.max_rules {
            return Err(CompletionError::RuleBudget(budget.max_rules));
        }
    }
    let mut rules: Vec<Rule> = b.rules.into_iter().flatten().collect();
    rules.sort_by(|p, q| shortlex(&b.rank, &p.lhs, &q.lhs));
    Ok(RewriteSystem::new(alphabet, b.rank, rules))
}

/// Pushes the critical pairs from suffixes of `u.lhs` overlapping prefixes of `v.lhs`.
fn overlaps(u: &Rule, v: &Rule, out: &mut VecDeque<(Vec<u8>, Vec<u8>)>) {
    let max = u.lhs.len().min(v.lhs.len());
    for k in 1..max {
        if u.lhs[u.lhs.len() - k..] == v.lhs[..k] {
            let mut left = u.rhs.clone();
            left.extend_from_slice(&v.lhs[k..]);
            let mut right = u.lhs[..u.lhs.len() - k].to_vec();
            right.extend_from_slice(&v.rhs);
            out.push_back((left, right));
        }
    }
}

const NONE: u32 = u32::MAX;

/// A completed system with a suffix trie for fast normalization.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: usize,
    rank: Vec<u8>,
    rules: Vec<Rule>,
    children: Vec<u32>,
    terminal: Vec<u32>,
}

impl RewriteSystem {
    fn new(alphabet: usize, rank: Vec<u8>, rules: Vec<Rule>) -> Self {
        let mut sys = RewriteSystem { alphabet, rank, rules, children: vec![NONE; alphabet], terminal: vec![NONE] };
        for (idx, r) in sys.rules.iter().enumerate() {
            let mut node = 0usize;
            for &s in r.lhs.iter().rev() {
                let slot = node * alphabet + s as usize;
                if sys.children[slot] == NONE {
                    sys.children[slot] = sys.terminal.len() as u32;
                    sys.terminal.push(NONE);
                    sys.children.extend(std::iter::repeat_n(NONE, alphabet));
                }
                node = sys.children[slot] as usize;
            }
            sys.terminal[node] = idx as u32;
        }
        sys
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rank(&self) -> &[u8] {
        &self.rank
    }

    /// Rewrites `w` to its irreducible form.
    pub fn normalize(&self, w: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::with_capacity(w.len());
        let mut input: Vec<u8> = w.iter().rev().copied().collect();
        while let Some(c) = input.pop() {
            out.push(c);
            let mut node = 0usize;
            let mut i = out.len();
            while i > 0 {
                let next = self.children[node * self.alphabet + out[i - 1] as usize];
                if next == NONE {
                    break;
                }
                node = next as usize;
                i -= 1;
                let t = self.terminal[node];
                if t != NONE {
                    let r = &self.rules[t as usize];
                    out.truncate(i);
                    input.extend(r.rhs.iter().rev());
                    break;
                }
            }
        }
        out
    }

    pub fn is_irreducible(&self, w: &[u8]) -> bool {
        !self.rules.iter().any(|r| contains(w, &r.lhs))
    }
}
