//! Involution signatures of NEC groups, NSK-maps onto `Z2`, their
//! topological-conjugacy classification, and the blowup calculus.
//!
//! Signatures are restricted to `(h, ε, [(2)^r], {(-)^k})`: all cone periods
//! are 2 and every period cycle is empty. The NSK-map images are listed in
//! the order `a1, b1, .., ah, bh` (or `d1..dh`), `x1..xr`, `e1..ek`, `c1..ck`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NecError {
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("NSK-map violates {invariant}: {detail}")]
    Invariant { invariant: &'static str, detail: String },
    #[error("m is only defined for sign `-`")]
    MOnOrientable,
    #[error("no fixed point of kind {0}")]
    NoFixedPoint(&'static str),
    #[error("table line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("no classes for genus {0}")]
    Genus(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `(h, ε, [(2)^r], {(-)^k})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NecSignature {
    pub h: usize,
    pub sign: Sign,
    pub r: usize,
    pub k: usize,
}

impl NecSignature {
    pub fn new(h: usize, sign: Sign, r: usize, k: usize) -> Result<Self, NecError> {
        let s = NecSignature { h, sign, r, k };
        if sign == Sign::Minus && h == 0 {
            return Err(NecError::Signature(format!("{s}: sign - needs h >= 1")));
        }
        if s.euler_numerator() > 1 {
            return Err(NecError::Signature(format!("{s}: double cover has genus < 1")));
        }
        Ok(s)
    }

    // 2 - g of the double cover, so that g = 2 - this
    fn euler_numerator(&self) -> i64 {
        let (h, r, k) = (self.h as i64, self.r as i64, self.k as i64);
        let handles = if self.sign == Sign::Plus { 4 * h } else { 2 * h };
        4 - (handles + 2 * k + r)
    }

    /// Genus of the non-orientable surface double covering the quotient.
    pub fn surface_genus(&self) -> usize {
        (2 - self.euler_numerator()) as usize
    }

    /// Number of handle generators (`a_i, b_i` or `d_i`).
    pub fn handle_count(&self) -> usize {
        match self.sign {
            Sign::Plus => 2 * self.h,
            Sign::Minus => self.h,
        }
    }

    /// Number of presentation generators an NSK-map assigns images to.
    pub fn arity(&self) -> usize {
        self.handle_count() + self.r + 2 * self.k
    }

    pub fn blowup(&self, kind: BlowupKind) -> Result<NecSignature, NecError> {
        let (r, k) = match kind {
            BlowupKind::Isolated if self.r >= 1 => (self.r - 1, self.k + 1),
            BlowupKind::OnReflectionCurve if self.k >= 1 => (self.r + 1, self.k),
            _ => return Err(NecError::NoFixedPoint(kind.name())),
        };
        NecSignature::new(self.h, self.sign, r, k)
    }

    /// Long form, e.g. `(0,+,[2,2],{(-)})`.
    pub fn long_form(&self) -> String {
        let cones = if self.r == 0 { "-".to_string() } else { vec!["2"; self.r].join(",") };
        let cycles = if self.k == 0 { "-".to_string() } else { vec!["(-)"; self.k].join(",") };
        format!("({},{},[{}],{{{}}})", self.h, self.sign, cones, cycles)
    }
}

impl fmt::Display for NecSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.h, self.sign, self.r, self.k)
    }
}

impl FromStr for NecSignature {
    type Err = NecError;

    /// Parses the short form `(h,sign,r,k)`.
    fn from_str(s: &str) -> Result<Self, NecError> {
        let bad = || NecError::Signature(format!("cannot parse `{s}`"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let sign = match parts[1] {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(bad()),
        };
        NecSignature::new(num(parts[0])?, sign, num(parts[2])?, num(parts[3])?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Z2 {
    One,
    X,
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Z2::One => "1",
            Z2::X => "X",
        })
    }
}

/// Counts of isolated fixed points and of one- and two-sided reflection curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPointProfile {
    pub isolated: usize,
    pub one_sided: usize,
    pub two_sided: usize,
}

impl FixedPointProfile {
    pub fn new(isolated: usize, one_sided: usize, two_sided: usize) -> Self {
        FixedPointProfile { isolated, one_sided, two_sided }
    }

    pub fn refined_blowup(&self, kind: RefinedKind) -> Result<FixedPointProfile, NecError> {
        let FixedPointProfile { isolated: r, one_sided: n, two_sided: t } = *self;
        match kind {
            RefinedKind::Isolated if r >= 1 => Ok(Self::new(r - 1, n + 1, t)),
            RefinedKind::OnOneSided if n >= 1 => Ok(Self::new(r + 1, n - 1, t + 1)),
            RefinedKind::OnTwoSided if t >= 1 => Ok(Self::new(r + 1, n + 1, t - 1)),
            _ => Err(NecError::NoFixedPoint(kind.name())),
        }
    }

    /// The fixed-point kinds this involution actually has.
    pub fn available(&self) -> Vec<RefinedKind> {
        let mut out = Vec::new();
        if self.isolated > 0 {
            out.push(RefinedKind::Isolated);
        }
        if self.one_sided > 0 {
            out.push(RefinedKind::OnOneSided);
        }
        if self.two_sided > 0 {
            out.push(RefinedKind::OnTwoSided);
        }
        out
    }
}

impl fmt::Display for FixedPointProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.isolated, self.one_sided, self.two_sided)
    }
}

impl FromStr for FixedPointProfile {
    type Err = NecError;

    fn from_str(s: &str) -> Result<Self, NecError> {
        let bad = || NecError::Signature(format!("cannot parse profile `{s}`"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let v: Vec<usize> = inner.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        match v[..] {
            [r, n, t] => Ok(Self::new(r, n, t)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlowupKind {
    Isolated,
    OnReflectionCurve,
}

impl BlowupKind {
    pub fn name(self) -> &'static str {
        match self {
            BlowupKind::Isolated => "isolated",
            BlowupKind::OnReflectionCurve => "on_reflection_curve",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RefinedKind {
    Isolated,
    OnOneSided,
    OnTwoSided,
}

impl RefinedKind {
    pub fn name(self) -> &'static str {
        match self {
            RefinedKind::Isolated => "isolated",
            RefinedKind::OnOneSided => "on_one_sided",
            RefinedKind::OnTwoSided => "on_two_sided",
        }
    }

    /// Forgets which side the reflection curve has.
    pub fn coarse(self) -> BlowupKind {
        match self {
            RefinedKind::Isolated => BlowupKind::Isolated,
            _ => BlowupKind::OnReflectionCurve,
        }
    }
}

/// One NSK-map `θ: Γ -> Z2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NskMap {
    pub signature: NecSignature,
    pub declared_genus: usize,
    pub images: Vec<Z2>,
}

impl NskMap {
    /// Builds and validates.
    pub fn new(signature: NecSignature, declared_genus: usize, images: Vec<Z2>) -> Result<Self, NecError> {
        let m = NskMap { signature, declared_genus, images };
        m.validate()?;
        Ok(m)
    }

    pub fn handle_images(&self) -> &[Z2] {
        &self.images[..self.signature.handle_count()]
    }

    pub fn x_images(&self) -> &[Z2] {
        let a = self.signature.handle_count();
        &self.images[a..a + self.signature.r]
    }

    pub fn e_images(&self) -> &[Z2] {
        let a = self.signature.handle_count() + self.signature.r;
        &self.images[a..a + self.signature.k]
    }

    pub fn c_images(&self) -> &[Z2] {
        let a = self.signature.handle_count() + self.signature.r + self.signature.k;
        &self.images[a..]
    }

    pub fn validate(&self) -> Result<(), NecError> {
        let fail = |invariant, detail: String| Err(NecError::Invariant { invariant, detail });
        let s = &self.signature;
        if self.images.len() != s.arity() {
            return fail("arity", format!("{} images for {} generators", self.images.len(), s.arity()));
        }
        if self.x_images().iter().chain(self.c_images()).any(|z| *z != Z2::X) {
            return fail("torsion-free kernel", "some x_j or c_j maps to 1".into());
        }
        let odd = self.x_images().iter().chain(self.e_images()).filter(|z| **z == Z2::X).count() % 2;
        if odd != 0 {
            return fail("long relation", "x and e images multiply to X".into());
        }
        if self.images.iter().all(|z| *z == Z2::One) {
            return fail("surjectivity", "every generator maps to 1".into());
        }
        if s.surface_genus() != self.declared_genus {
            return fail(
                "genus",
                format!("signature gives genus {}, declared {}", s.surface_genus(), self.declared_genus),
            );
        }
        Ok(())
    }

    /// `#{j : θ(e_j) = X}`.
    pub fn n_count(&self) -> usize {
        self.e_images().iter().filter(|z| **z == Z2::X).count()
    }

    /// `#{j : θ(d_j) = X}`.
    pub fn m_count(&self) -> Result<usize, NecError> {
        if self.signature.sign == Sign::Plus {
            return Err(NecError::MOnOrientable);
        }
        Ok(self.handle_images().iter().filter(|z| **z == Z2::X).count())
    }

    pub fn fixed_point_profile(&self) -> FixedPointProfile {
        let n = self.n_count();
        FixedPointProfile::new(self.signature.r, n, self.signature.k - n)
    }
}

impl fmt::Display for NskMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images.iter().map(|z| z.to_string()).collect();
        write!(f, "{} ({})", self.signature, imgs.join(", "))
    }
}

pub fn topologically_conjugate(a: &NskMap, b: &NskMap) -> bool {
    if a.signature != b.signature {
        return false;
    }
    let n = a.n_count();
    if n != b.n_count() {
        return false;
    }
    let s = a.signature;
    if s.r == 0 && n == 0 && s.sign == Sign::Minus {
        let (ma, mb) = (a.m_count().unwrap_or(0), b.m_count().unwrap_or(0));
        return ma % 2 == mb % 2 && (ma == 0) == (mb == 0);
    }
    true
}

/// Groups indices of `maps` into conjugacy classes, in order of first appearance.
pub fn classify(maps: &[NskMap]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        match classes.iter_mut().find(|c| topologically_conjugate(&maps[c[0]], m)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    One,
    X,
    Either,
}

/// A row of the NSK-map table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub genus: usize,
    pub row: usize,
    pub signature: NecSignature,
    pub name: String,
    pub images: Vec<Entry>,
}

impl TableRow {
    /// Every explicit choice for the `1orX` entries, `1` before `X`.
    pub fn expand(&self) -> Result<Vec<NskMap>, NecError> {
        let mut out: Vec<Vec<Z2>> = vec![Vec::new()];
        for e in &self.images {
            let choices: &[Z2] = match e {
                Entry::One => &[Z2::One],
                Entry::X => &[Z2::X],
                Entry::Either => &[Z2::One, Z2::X],
            };
            out = out
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(*c);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(|imgs| NskMap::new(self.signature, self.genus, imgs)).collect()
    }
}

pub const TABLE2_TEXT: &str = include_str!("../data/table2.txt");

pub fn parse_table(text: &str) -> Result<Vec<TableRow>, NecError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| NecError::Table { line: i + 1, msg };
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        if cols.len() != 5 {
            return Err(err(format!("expected 5 columns, found {}", cols.len())));
        }
        let genus = cols[0].parse().map_err(|_| err(format!("bad genus `{}`", cols[0])))?;
        let row = cols[1].parse().map_err(|_| err(format!("bad row `{}`", cols[1])))?;
        let signature: NecSignature = cols[2].parse().map_err(|e: NecError| err(e.to_string()))?;
        let tuple = cols[4]
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err("image tuple needs parentheses".into()))?;
        let images = tuple
            .split(',')
            .map(|t| match t.trim() {
                "1" => Ok(Entry::One),
                "X" => Ok(Entry::X),
                "1orX" => Ok(Entry::Either),
                other => Err(err(format!("bad image `{other}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(TableRow { genus, row, signature, name: cols[3].to_string(), images });
    }
    Ok(rows)
}

/// The shipped table, parsed once.
pub fn table2() -> &'static [TableRow] {
    static ROWS: OnceLock<Vec<TableRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_table(TABLE2_TEXT).expect("shipped table parses"))
}

/// One topological-conjugacy class of involutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub label: String,
    pub signature: NecSignature,
    pub profile: FixedPointProfile,
    /// `m` for sign `-`.
    pub m: Option<usize>,
    pub members: Vec<NskMap>,
}

/// Expands every table row of `genus` and quotients by conjugacy.
///
/// A row that splits into several classes gets suffixes `,1`, `,2`, ..
/// in order of increasing `m`.
pub fn classes(genus: usize) -> Result<Vec<ClassData>, NecError> {
    let rows: Vec<&TableRow> = table2().iter().filter(|r| r.genus == genus).collect();
    if rows.is_empty() {
        return Err(NecError::Genus(genus));
    }
    let mut maps = Vec::new();
    let mut origin = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        for m in row.expand()? {
            maps.push(m);
            origin.push(ri);
        }
    }
    let parts = classify(&maps);
    let mut per_row: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &parts {
        *per_row.entry(origin[p[0]]).or_default() += 1;
    }
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for p in parts {
        let ri = origin[p[0]];
        let rep = &maps[p[0]];
        let label = if per_row[&ri] > 1 {
            let j = seen.entry(ri).or_default();
            *j += 1;
            format!("{},{}", rows[ri].name, j)
        } else {
            rows[ri].name.clone()
        };
        out.push(ClassData {
            label,
            signature: rep.signature,
            profile: rep.fixed_point_profile(),
            m: rep.m_count().ok(),
            members: p.iter().map(|&i| maps[i].clone()).collect(),
        });
    }
    Ok(out)
}

/// One step of a blowup flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowEdge {
    pub source: String,
    pub kind: RefinedKind,
    pub signature: NecSignature,
    pub profile: FixedPointProfile,
    /// `None` when no class of the next genus has this signature and profile.
    pub target: Option<String>,
}

/// Blows up every class of `source_genus` at every kind of fixed point and
/// resolves each result by signature, then by refined profile.
pub fn blowup_flow(source_genus: usize) -> Result<Vec<FlowEdge>, NecError> {
    let sources = classes(source_genus)?;
    let targets = classes(source_genus + 1)?;
    let mut out = Vec::new();
    for src in &sources {
        for kind in src.profile.available() {
            let signature = src.signature.blowup(kind.coarse())?;
            let profile = src.profile.refined_blowup(kind)?;
            let by_sig: Vec<&ClassData> = targets.iter().filter(|t| t.signature == signature).collect();
            let target = match by_sig[..] {
                [one] if one.profile == profile => Some(one.label.clone()),
                _ => by_sig.iter().find(|t| t.profile == profile).map(|t| t.label.clone()),
            };
            out.push(FlowEdge { source: src.label.clone(), kind, signature, profile, target });
        }
    }
    Ok(out)
}

/// A signature or profile equation, checked by recomputation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaIdentity {
    pub id: String,
    pub statement: String,
    pub holds: bool,
}

fn sig(h: usize, sign: Sign, r: usize, k: usize) -> NecSignature {
    NecSignature { h, sign, r, k }
}

/// The signature equations for the flows out of genus 2 or 4.
///
/// Source statements compare a class signature with its quoted value; blowup
/// statements recompute the blown-up signature and check that it names the
/// quoted target class; refined statements do the same with profiles.
pub fn sigma_identities(source_genus: usize) -> Result<Vec<SigmaIdentity>, NecError> {
    use Sign::{Minus as M, Plus as P};
    let src = classes(source_genus)?;
    let tgt = classes(source_genus + 1)?;
    let find = |set: &[ClassData], label: &str| -> Result<ClassData, NecError> {
        set.iter().find(|c| c.label == label).cloned().ok_or_else(|| NecError::Signature(format!("no class {label}")))
    };
    type Quoted<'a> = (Vec<(&'a str, NecSignature)>, Vec<(&'a str, BlowupKind, &'a str)>, Vec<(&'a str, &'a str)>);
    let (sources, blowups, refined): Quoted = match source_genus {
        2 => (
            vec![("2;1", sig(0, P, 2, 1)), ("2;2", sig(0, P, 0, 2)), ("2;3", sig(1, M, 2, 0))],
            vec![
                ("2;1", BlowupKind::OnReflectionCurve, "3;1"),
                ("2;2", BlowupKind::OnReflectionCurve, "3;2"),
                ("2;3", BlowupKind::Isolated, "3;3"),
            ],
            vec![],
        ),
        4 => (
            vec![
                ("4;1", sig(0, P, 4, 1)),
                ("4;2,1", sig(0, P, 2, 2)),
                ("4;2,2", sig(0, P, 2, 2)),
                ("4;5", sig(1, M, 2, 1)),
                ("4;7", sig(2, M, 2, 0)),
                ("4;10", sig(1, P, 0, 1)),
            ],
            vec![
                ("4;1", BlowupKind::OnReflectionCurve, "5;1"),
                ("4;1", BlowupKind::Isolated, "5;2"),
                ("4;2,1", BlowupKind::Isolated, "5;3,2"),
                ("4;5", BlowupKind::OnReflectionCurve, "5;4"),
                ("4;5", BlowupKind::Isolated, "5;5"),
                ("4;7", BlowupKind::Isolated, "5;6"),
                ("4;10", BlowupKind::OnReflectionCurve, "5;7"),
            ],
            vec![("4;2,1", "5;3,2"), ("4;2,2", "5;3,1")],
        ),
        g => return Err(NecError::Genus(g)),
    };
    let mut out = Vec::new();
    for (label, expected) in sources {
        let c = find(&src, label)?;
        out.push(SigmaIdentity {
            id: format!("sigma({label})"),
            statement: format!("sigma({label}) = {}", expected.long_form()),
            holds: c.signature == expected,
        });
    }
    for (label, kind, target) in blowups {
        let c = find(&src, label)?;
        let t = find(&tgt, target)?;
        let got = c.signature.blowup(kind)?;
        out.push(SigmaIdentity {
            id: format!("blowup({label},{})", kind.name()),
            statement: format!("sigma(blowup {label} at {}) = {} = sigma({target})", kind.name(), got.long_form()),
            holds: got == t.signature,
        });
    }
    for (label, target) in refined {
        let c = find(&src, label)?;
        let t = find(&tgt, target)?;
        let got = c.profile.refined_blowup(RefinedKind::Isolated)?;
        out.push(SigmaIdentity {
            id: format!("refined({label},isolated)"),
            statement: format!("profile(blowup {label} at isolated) = {got} = profile({target})"),
            holds: got == t.profile && c.signature.blowup(BlowupKind::Isolated)? == t.signature,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(label: &str) -> ClassData {
        let g: usize = label[..1].parse().unwrap();
        classes(g).unwrap().into_iter().find(|c| c.label == label).unwrap()
    }

    #[test]
    fn genus_formula_examples() {
        assert_eq!("(0,+,2,1)".parse::<NecSignature>().unwrap().surface_genus(), 2);
        assert_eq!("(3,-,0,0)".parse::<NecSignature>().unwrap().surface_genus(), 4);
        assert_eq!("(1,+,1,1)".parse::<NecSignature>().unwrap().surface_genus(), 5);
        assert!("(0,-,2,1)".parse::<NecSignature>().is_err());
    }

    #[test]
    fn table_rows_are_valid() {
        assert_eq!(table2().len(), 29);
        for row in table2() {
            assert_eq!(row.images.len(), row.signature.arity(), "{}", row.name);
            for m in row.expand().unwrap() {
                m.validate().unwrap();
            }
        }
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (2..=5).map(|g| classes(g).unwrap().len()).collect();
        assert_eq!(counts, vec![5, 3, 14, 8]);
    }

    #[test]
    fn named_separations() {
        let t = |l: &str| class(l).members[0].clone();
        assert!(!topologically_conjugate(&t("4;2,1"), &t("4;2,2")));
        assert!(!topologically_conjugate(&t("4;9,1"), &t("4;9,3")));
        assert_eq!(t("4;2,1").n_count(), 0);
        assert_eq!(t("4;2,2").n_count(), 2);
        assert_eq!(class("4;8,1").m, Some(0));
        assert_eq!(class("4;8,2").m, Some(1));
        assert_eq!(class("4;9,1").m, Some(1));
        assert_eq!(class("4;9,3").m, Some(2));
    }

    #[test]
    fn m_count_misuse() {
        assert_eq!(class("4;10").members[0].m_count(), Err(NecError::MOnOrientable));
    }

    #[test]
    fn profiles() {
        assert_eq!(class("4;2,2").profile, FixedPointProfile::new(2, 2, 0));
        assert_eq!(class("5;3,2").profile, FixedPointProfile::new(1, 1, 2));
        assert_eq!(class("4;9,1").profile, FixedPointProfile::new(0, 0, 0));
    }

    #[test]
    fn blowup_examples() {
        let s: NecSignature = "(0,+,2,1)".parse().unwrap();
        assert_eq!(s.blowup(BlowupKind::OnReflectionCurve).unwrap().to_string(), "(0,+,3,1)");
        assert_eq!(s.blowup(BlowupKind::Isolated).unwrap().to_string(), "(0,+,1,2)");
        let s: NecSignature = "(1,-,0,1)".parse().unwrap();
        assert_eq!(s.blowup(BlowupKind::Isolated), Err(NecError::NoFixedPoint("isolated")));
        let p = FixedPointProfile::new(2, 0, 2);
        assert_eq!(p.refined_blowup(RefinedKind::Isolated).unwrap(), FixedPointProfile::new(1, 1, 2));
        assert!(p.refined_blowup(RefinedKind::OnOneSided).is_err());
    }

    #[test]
    fn flows_cover_targets() {
        for g in [2, 4] {
            let edges = blowup_flow(g).unwrap();
            assert!(edges.iter().all(|e| e.target.is_some()), "{edges:?}");
            for t in classes(g + 1).unwrap() {
                assert!(edges.iter().any(|e| e.target.as_deref() == Some(&t.label)), "{}", t.label);
            }
        }
        let edges = blowup_flow(4).unwrap();
        let hit = |s: &str, k: RefinedKind| edges.iter().find(|e| e.source == s && e.kind == k).unwrap();
        assert_eq!(hit("4;2,1", RefinedKind::Isolated).target.as_deref(), Some("5;3,2"));
        assert_eq!(hit("4;2,2", RefinedKind::Isolated).target.as_deref(), Some("5;3,1"));
        assert_eq!(hit("4;7", RefinedKind::Isolated).target.as_deref(), Some("5;6"));
    }

    #[test]
    fn sigma_identities_hold() {
        let two = sigma_identities(2).unwrap();
        assert_eq!(two.len(), 6);
        let four = sigma_identities(4).unwrap();
        assert_eq!(four.iter().filter(|i| !i.id.starts_with("sigma(")).count(), 9);
        for i in two.iter().chain(&four) {
            assert!(i.holds, "{}", i.statement);
        }
    }

    fn all_maps() -> Vec<NskMap> {
        table2().iter().flat_map(|r| r.expand().unwrap()).collect()
    }

    #[test]
    fn conjugacy_is_an_equivalence() {
        let maps = all_maps();
        for a in &maps {
            assert!(topologically_conjugate(a, a));
            for b in &maps {
                assert_eq!(topologically_conjugate(a, b), topologically_conjugate(b, a));
                if topologically_conjugate(a, b) {
                    assert_eq!(a.declared_genus, b.declared_genus);
                    for c in &maps {
                        if topologically_conjugate(b, c) {
                            assert!(topologically_conjugate(a, c));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn blowup_raises_genus(h in 0usize..4, plus in any::<bool>(), r in 0usize..6, k in 0usize..4,
                               iso in any::<bool>()) {
            let sign = if plus { Sign::Plus } else { Sign::Minus };
            if let Ok(s) = NecSignature::new(h, sign, r, k) {
                let kind = if iso { BlowupKind::Isolated } else { BlowupKind::OnReflectionCurve };
                if let Ok(t) = s.blowup(kind) {
                    prop_assert_eq!(t.surface_genus(), s.surface_genus() + 1);
                }
            }
        }

        #[test]
        fn refined_projects_to_coarse(r in 0usize..5, n in 0usize..4, t in 0usize..4, h in 1usize..3) {
            let p = FixedPointProfile::new(r, n, t);
            let s = NecSignature { h, sign: Sign::Minus, r, k: n + t };
            for kind in [RefinedKind::Isolated, RefinedKind::OnOneSided, RefinedKind::OnTwoSided] {
                if let Ok(q) = p.refined_blowup(kind) {
                    let c = s.blowup(kind.coarse()).unwrap();
                    prop_assert_eq!((q.isolated, q.one_sided + q.two_sided), (c.r, c.k));
                }
            }
        }
    }
}
