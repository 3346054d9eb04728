//! Free-group operations on generator words. No mapping class relations are
//! applied here; relation-aware equality lives in [`crate::action`].

use crate::notation::{GenWord, Letter};

/// Cancels adjacent letter/inverse pairs until none remain.
pub fn reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

pub fn reduce(w: &GenWord) -> GenWord {
    GenWord { genus: w.genus, letters: reduce_letters(&w.letters) }
}

pub fn invert(w: &GenWord) -> GenWord {
    GenWord { genus: w.genus, letters: invert_letters(&w.letters) }
}

/// Concatenation `u·v` without reduction.
pub fn concat(u: &GenWord, v: &GenWord) -> GenWord {
    assert_eq!(u.genus, v.genus, "words of different genus");
    let mut letters = u.letters.clone();
    letters.extend_from_slice(&v.letters);
    GenWord { genus: u.genus, letters }
}

/// `reduce(c · w · c^-1)`.
pub fn conjugate(w: &GenWord, c: &GenWord) -> GenWord {
    reduce(&concat(&concat(c, w), &invert(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_word;
    use proptest::prelude::*;

    fn w(s: &str) -> GenWord {
        parse_word(s, 5).unwrap()
    }

    #[test]
    fn examples() {
        assert!(reduce(&w("11'")).is_empty());
        assert_eq!(reduce(&w("211'3")), w("23"));
        let long = w("21321y1'2'3'1'2'y'");
        assert_eq!(reduce(&long), long);
        assert_eq!(invert(&w("12y")), w("y'2'1'"));
        assert!(invert(&GenWord::empty(5)).is_empty());
        assert_eq!(invert(&w("y'")), w("y"));
        assert_eq!(conjugate(&w("1"), &GenWord::empty(5)), w("1"));
    }

    #[test]
    fn conjugating_by_prefix_rotates() {
        let word = w("12y3");
        assert_eq!(conjugate(&word, &invert(&w("12"))), w("y312"));
    }

    #[test]
    fn conj_step_recovers_pre_form() {
        // post = c^-1 pre c with c = y'
        let post = w("y(321)^2y'1'2'3'1'2'");
        let pre = w("321321y'1'2'3'1'2'y");
        assert_eq!(conjugate(&post, &w("y'")), pre);
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        let alphabet = w("1234yb").letters;
        proptest::collection::vec((0..alphabet.len(), any::<bool>()), 0..24).prop_map(move |v| {
            v.into_iter().map(|(i, inv)| if inv { alphabet[i].inv() } else { alphabet[i] }).collect()
        })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_confluent(ls in letters(), seed in any::<u64>()) {
            let r = reduce_letters(&ls);
            prop_assert_eq!(reduce_letters(&r), r.clone());
            // cancel in a pseudo-random order and compare
            let mut cur = ls.clone();
            let mut s = seed;
            loop {
                let spots: Vec<usize> = (0..cur.len().saturating_sub(1))
                    .filter(|&i| cur[i + 1] == cur[i].inv())
                    .collect();
                if spots.is_empty() { break; }
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let i = spots[(s >> 33) as usize % spots.len()];
                cur.drain(i..i + 2);
            }
            prop_assert_eq!(cur, r);
        }

        #[test]
        fn invert_is_involution(ls in letters()) {
            let word = GenWord { genus: 5, letters: ls };
            prop_assert_eq!(invert(&invert(&word)), word.clone());
            prop_assert!(reduce(&concat(&word, &invert(&word))).is_empty());
        }

        #[test]
        fn reduce_concat_length(a in letters(), b in letters()) {
            let u = GenWord { genus: 5, letters: a };
            let v = GenWord { genus: 5, letters: b };
            prop_assert!(reduce(&concat(&u, &v)).len() <= u.len() + v.len());
        }
    }
}
