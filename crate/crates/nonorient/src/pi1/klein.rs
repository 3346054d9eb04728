//! Coordinates for the Klein bottle group `<x1, x2 | x1 x1 x2 x2>`.
//!
//! With `u = x1 x2` and `v = x1` the group is `<u, v | v u v^-1 = u^-1>`, a
//! semidirect product `Z ⋊ Z`. Every element is uniquely `u^m v^n`, and
//! `(m, n)(p, q) = (m + (-1)^n p, n + q)`.

use std::fmt;

/// The pair `(m, n)` standing for `u^m v^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KleinCoords {
    pub m: i64,
    pub n: i64,
}

impl KleinCoords {
    pub const IDENTITY: KleinCoords = KleinCoords { m: 0, n: 0 };

    fn sign(n: i64) -> i64 {
        if n.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn compose(self, o: KleinCoords) -> KleinCoords {
        KleinCoords { m: self.m + Self::sign(self.n) * o.m, n: self.n + o.n }
    }

    pub fn inverse(self) -> KleinCoords {
        KleinCoords { m: -Self::sign(self.n) * self.m, n: -self.n }
    }

    /// Image of one surface-group symbol (`2k` is `x_{k+1}`, `2k+1` its inverse).
    pub fn of_symbol(s: u8) -> KleinCoords {
        match s {
            0 => KleinCoords { m: 0, n: 1 },
            1 => KleinCoords { m: 0, n: -1 },
            2 => KleinCoords { m: -1, n: -1 },
            3 => KleinCoords { m: -1, n: 1 },
            _ => panic!("symbol {s} is outside the genus-2 alphabet"),
        }
    }

    pub fn of_word(w: &[u8]) -> KleinCoords {
        w.iter().fold(KleinCoords::IDENTITY, |acc, &s| acc.compose(Self::of_symbol(s)))
    }

    /// The word `(x1 x2)^m x1^n` over the symbol alphabet.
    pub fn to_word(self) -> Vec<u8> {
        let mut out = Vec::new();
        let u: [u8; 2] = if self.m >= 0 { [0, 2] } else { [3, 1] };
        for _ in 0..self.m.unsigned_abs() {
            out.extend_from_slice(&u);
        }
        let v = if self.n >= 0 { 0 } else { 1 };
        out.extend(std::iter::repeat_n(v, self.n.unsigned_abs() as usize));
        out
    }
}

impl fmt::Display for KleinCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{} v^{}", self.m, self.n)
    }
}
