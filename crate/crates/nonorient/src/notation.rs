//! Compact word notation for mapping classes.
//!
//! The digits `1`..`9` stand for the twists `a_i`, `b` for the twist about
//! beta and `y` for the crosscap slide. A postfix `'` marks an inverse.
//! Words compose like functions: the rightmost letter acts first.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr := term+
//! term := atom ["'"] ["^" int] | "(" expr ")" ["^" int]
//! atom := digit | "y" | "b" | "id"
//! int  := ["-"] (digit | "{" digit+ "}")
//! ```

use std::fmt;
use thiserror::Error;

/// Generator kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// Twist about `alpha_i`, written `i`.
    Twist(u8),
    /// Twist about `beta`, written `b`.
    Beta,
    /// Crosscap slide of the first crosscap along `alpha_1`, written `y`.
    Slide,
}

/// A signed generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn twist(i: u8) -> Self {
        Letter::new(Gen::Twist(i), false)
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn is_admissible(self, genus: usize) -> bool {
        match self.gen {
            Gen::Twist(i) => i >= 1 && (i as usize) < genus,
            Gen::Beta => genus >= 4,
            Gen::Slide => genus >= 2,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            Gen::Twist(i) => write!(f, "{}", i)?,
            Gen::Beta => f.write_str("b")?,
            Gen::Slide => f.write_str("y")?,
        }
        if self.inverse {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A flat word of admissible letters for a fixed genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenWord {
    pub genus: usize,
    pub letters: Vec<Letter>,
}

impl GenWord {
    pub fn new(genus: usize, letters: Vec<Letter>) -> Result<Self, ParseError> {
        if genus < 2 {
            return Err(ParseError::Genus(genus));
        }
        if let Some(l) = letters.iter().find(|l| !l.is_admissible(genus)) {
            return Err(ParseError::Inadmissible { offset: 0, letter: l.to_string(), genus });
        }
        Ok(GenWord { genus, letters })
    }

    pub fn empty(genus: usize) -> Self {
        GenWord { genus, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        for l in &self.letters {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// Unexpanded expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Id,
    Letter(Letter),
    Seq(Vec<Expr>),
    Pow(Box<Expr>, i64),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Id => f.write_str("id"),
            Expr::Letter(l) => write!(f, "{}", l),
            Expr::Seq(items) => {
                if items.is_empty() {
                    return f.write_str("id");
                }
                for e in items {
                    write!(f, "{}", e)?;
                }
                Ok(())
            }
            Expr::Pow(inner, n) if (-9..=9).contains(n) => write!(f, "({})^{}", inner, n),
            Expr::Pow(inner, n) => write!(f, "({})^{{{}}}", inner, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("letter `{letter}` at byte {offset} is not admissible in genus {genus}")]
    Inadmissible { offset: usize, letter: String, genus: usize },
    #[error("genus {0} is out of range (need g >= 2)")]
    Genus(usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    genus: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.pos, msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            items.push(self.term()?);
        }
        if items.is_empty() {
            return self.err("expected a letter, `id` or `(`");
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Seq(items) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let c = self.peek().expect("term called at end of input");
        let base = if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
            inner
        } else {
            let mut atom = self.atom(start)?;
            if self.peek() == Some(b'\'') {
                self.pos += 1;
                atom = match atom {
                    Expr::Letter(l) => Expr::Letter(l.inv()),
                    Expr::Id => Expr::Id,
                    other => other,
                };
            }
            atom
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.int()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self, start: usize) -> Result<Expr, ParseError> {
        let c = self.src[self.pos];
        let gen = match c {
            b'1'..=b'9' => Gen::Twist(c - b'0'),
            b'y' => Gen::Slide,
            b'b' => Gen::Beta,
            b'i' if self.src.get(self.pos + 1) == Some(&b'd') => {
                self.pos += 2;
                return Ok(Expr::Id);
            }
            _ => return self.err(&format!("unexpected character `{}`", c as char)),
        };
        self.pos += 1;
        let letter = Letter::new(gen, false);
        if !letter.is_admissible(self.genus) {
            return Err(ParseError::Inadmissible { offset: start, letter: letter.to_string(), genus: self.genus });
        }
        Ok(Expr::Letter(letter))
    }

    /// A bare exponent is one digit, so `(23)^212` reads as `(23)^2 1 2`;
    /// longer exponents go in braces, `^{12}`.
    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let braced = self.src.get(self.pos) == Some(&b'{');
        if braced {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() && (braced || self.pos == start) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer exponent");
        }
        let end = self.pos;
        if braced {
            if self.src.get(self.pos) != Some(&b'}') {
                return self.err("expected `}`");
            }
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..end]).unwrap();
        let n: i64 =
            text.parse().map_err(|_| ParseError::Syntax { offset: start, msg: "exponent out of range".into() })?;
        Ok(if neg { -n } else { n })
    }
}

/// Parses `text` into an expression, checking every letter against `genus`.
pub fn parse(text: &str, genus: usize) -> Result<Expr, ParseError> {
    if genus < 2 {
        return Err(ParseError::Genus(genus));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, genus };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unbalanced `)`");
    }
    Ok(e)
}

fn expand_into(e: &Expr, out: &mut Vec<Letter>) {
    match e {
        Expr::Id => {}
        Expr::Letter(l) => out.push(*l),
        Expr::Seq(items) => items.iter().for_each(|i| expand_into(i, out)),
        Expr::Pow(inner, n) => {
            let mut block = Vec::new();
            expand_into(inner, &mut block);
            if *n < 0 {
                block = block.iter().rev().map(|l| l.inv()).collect();
            }
            for _ in 0..n.unsigned_abs() {
                out.extend_from_slice(&block);
            }
        }
    }
}

/// Unrolls all grouping. Negative exponents reverse and invert the block.
pub fn expand(e: &Expr) -> Vec<Letter> {
    let mut out = Vec::new();
    expand_into(e, &mut out);
    out
}

/// Parses and expands in one step.
pub fn parse_word(text: &str, genus: usize) -> Result<GenWord, ParseError> {
    let e = parse(text, genus)?;
    Ok(GenWord { genus, letters: expand(&e) })
}

/// Prints a word in the grammar above; the empty word prints as `id`.
pub fn print(w: &GenWord) -> String {
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, g: usize) -> Vec<String> {
        parse_word(s, g).unwrap().letters.iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn power_of_group() {
        assert_eq!(word("(12)^3", 3), ["1", "2", "1", "2", "1", "2"]);
        assert_eq!(word("(123)^2", 4), ["1", "2", "3", "1", "2", "3"]);
    }

    #[test]
    fn id_and_zero_exponent() {
        assert!(parse_word("id", 4).unwrap().is_empty());
        assert!(parse_word("(1)^0", 3).unwrap().is_empty());
    }

    #[test]
    fn negative_exponent_inverts() {
        assert_eq!(word("(12)^-1", 3), ["2'", "1'"]);
    }

    #[test]
    fn primes_and_length() {
        let w = parse_word("21321y1'2'3'1'2'y'", 4).unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(w.letters.iter().filter(|l| l.inverse).count(), 6);
        assert_eq!(print(&w), "21321y1'2'3'1'2'y'");
    }

    #[test]
    fn exponent_takes_one_digit() {
        assert_eq!(word("(23)^212", 4), ["2", "3", "2", "3", "1", "2"]);
        assert_eq!(parse_word("(1)^{12}", 3).unwrap().len(), 12);
        assert_eq!(word("(12)^-{2}", 3), ["2'", "1'", "2'", "1'"]);
        assert!(matches!(parse("(1)^{12", 3), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn atom_power() {
        assert_eq!(word("b'(y2^2)^2", 4), ["b'", "y", "2", "2", "y", "2", "2"]);
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(matches!(parse("b", 3), Err(ParseError::Inadmissible { offset: 0, .. })));
        assert!(matches!(parse("13", 3), Err(ParseError::Inadmissible { offset: 1, .. })));
        assert!(matches!(parse("0", 3), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn rejects_syntax() {
        assert!(matches!(parse("(12", 3), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("12)", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x", 3), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("(1)^", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("", 3), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(word(" 1 2 ' y ", 3), ["1", "2'", "y"]);
    }

    #[test]
    fn expr_display_round_trip() {
        let e = parse("1(2y')^-2b", 5).unwrap();
        let again = parse(&e.to_string(), 5).unwrap();
        assert_eq!(expand(&e), expand(&again));
    }
}
