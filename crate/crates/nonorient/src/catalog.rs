//! The involution catalog and the checks run against it.
//!
//! Every check is a [`CheckTask`]: an identifier plus a closure that produces
//! a [`Check`]. Tasks are independent, so callers may run them in any order
//! or in parallel and then sort by position.

use crate::action::{
    class_maps_to, evaluate, genus2_class, homology_matrix_z, homology_matrix_z2, is_identity_z2, is_inner, mat_mul_z2,
    outer_equal, Bounds, CurveClass, GeneratorSet,
};
use crate::nec::{self, FixedPointProfile, NecSignature};
use crate::notation::{parse, parse_word, GenWord, ParseError};
use crate::pi1::{format_element, sym, Conjugacy};
use crate::words::{concat, conjugate, invert, reduce};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("bad label `{0}`")]
    Label(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no record {0}")]
    Missing(String),
}

/// `(g; s)` or `(g; s, t)`, written `g;s` or `g;s,t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub genus: usize,
    pub s: usize,
    pub t: Option<usize>,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.genus, self.s)?;
        if let Some(t) = self.t {
            write!(f, ",{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Label {
    type Err = CatalogError;

    fn from_str(text: &str) -> Result<Self, CatalogError> {
        let bad = || CatalogError::Label(text.to_string());
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let (g, rest) = t.split_once(';').ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let (s, tt) = match rest.split_once(',') {
            Some((s, tt)) => (num(s)?, Some(num(tt)?)),
            None => (num(rest)?, None),
        };
        Ok(Label { genus: num(g)?, s, t: tt })
    }
}

/// `source ↦ target` (or `target^-1` when `inverted`) up to conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedAction {
    pub source: CurveClass,
    pub target: CurveClass,
    pub inverted: bool,
}

impl fmt::Display for ExpectedAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}{}", self.source, self.target, if self.inverted { "^-1" } else { "" })
    }
}

impl FromStr for ExpectedAction {
    type Err = CatalogError;

    fn from_str(text: &str) -> Result<Self, CatalogError> {
        let bad = |e: crate::action::ActionError| CatalogError::Line { line: 0, msg: e.to_string() };
        let (a, b) = text.split_once("->").ok_or_else(|| CatalogError::Label(text.to_string()))?;
        let (b, inverted) = match b.trim().strip_suffix('\'') {
            Some(b) => (b, true),
            None => (b.trim(), false),
        };
        Ok(ExpectedAction {
            source: CurveClass::parse(a).map_err(bad)?,
            target: CurveClass::parse(b).map_err(bad)?,
            inverted,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionRecord {
    pub label: Label,
    /// The word as written, grouping included.
    pub text: String,
    pub word: GenWord,
    pub signature: NecSignature,
    pub profile: FixedPointProfile,
    pub expected_actions: Vec<ExpectedAction>,
    /// Representative the actions refer to, when it is not `word`.
    pub action_word: Option<GenWord>,
}

impl InvolutionRecord {
    pub fn genus(&self) -> usize {
        self.label.genus
    }

    /// The word the expected actions are checked on.
    pub fn action_target(&self) -> &GenWord {
        self.action_word.as_ref().unwrap_or(&self.word)
    }
}

pub const CATALOG_TEXT: &str = include_str!("../data/catalog.txt");

pub fn parse_catalog(text: &str) -> Result<Vec<InvolutionRecord>, CatalogError> {
    let mut out: Vec<InvolutionRecord> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| CatalogError::Line { line: i + 1, msg };
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        if cols.len() != 6 {
            return Err(err(format!("expected 6 columns, found {}", cols.len())));
        }
        let label: Label = cols[0].parse()?;
        let g = label.genus;
        parse(cols[1], g).map_err(|e| err(e.to_string()))?;
        let word = parse_word(cols[1], g).map_err(|e| err(e.to_string()))?;
        let signature: NecSignature = cols[2].parse().map_err(|e: nec::NecError| err(e.to_string()))?;
        let profile: FixedPointProfile = cols[3].parse().map_err(|e: nec::NecError| err(e.to_string()))?;
        let expected_actions = match cols[4] {
            "-" => Vec::new(),
            s => s
                .split_whitespace()
                .map(|a| a.parse().map_err(|e: CatalogError| err(e.to_string())))
                .collect::<Result<_, _>>()?,
        };
        let action_word = match cols[5] {
            "-" => None,
            s => Some(parse_word(s, g).map_err(|e| err(e.to_string()))?),
        };
        let rec = InvolutionRecord {
            label,
            text: cols[1].to_string(),
            word,
            signature,
            profile,
            expected_actions,
            action_word,
        };
        check_record(&rec).map_err(err)?;
        if out.iter().any(|r| r.label == label) {
            return Err(err(format!("duplicate label {label}")));
        }
        out.push(rec);
    }
    Ok(out)
}

fn check_record(rec: &InvolutionRecord) -> Result<(), String> {
    let (s, p) = (rec.signature, rec.profile);
    if s.surface_genus() != rec.genus() {
        return Err(format!("signature {s} has genus {}", s.surface_genus()));
    }
    if p.isolated != s.r || p.one_sided + p.two_sided != s.k {
        return Err(format!("profile {p} does not fit signature {s}"));
    }
    for a in &rec.expected_actions {
        let (m, n) = (a.source.indices().len(), a.target.indices().len());
        if m % 2 != n % 2 {
            return Err(format!("action {a} changes sidedness"));
        }
        a.source.element(rec.genus()).map_err(|e| e.to_string())?;
        a.target.element(rec.genus()).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// The shipped catalog, parsed once.
pub fn load_catalog() -> &'static [InvolutionRecord] {
    static RECS: OnceLock<Vec<InvolutionRecord>> = OnceLock::new();
    RECS.get_or_init(|| parse_catalog(CATALOG_TEXT).expect("shipped catalog parses"))
}

pub fn record(label: &str) -> Result<&'static InvolutionRecord, CatalogError> {
    let l: Label = label.parse()?;
    load_catalog().iter().find(|r| r.label == l).ok_or_else(|| CatalogError::Missing(label.into()))
}

/// Where a `Y_{i,j}` word comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YijSource {
    /// One of the four general formulas, numbered 1 to 4.
    Formula(u8),
    /// Written out for a particular genus in a derivation.
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YijWord {
    pub i: usize,
    pub j: usize,
    pub source: YijSource,
    pub text: String,
    /// The word denotes the inverse of `Y_{i,j}`.
    pub inverse: bool,
}

impl YijWord {
    pub fn word(&self, genus: usize) -> Result<GenWord, ParseError> {
        parse_word(&self.text, genus)
    }

    pub fn name(&self) -> String {
        let src = match self.source {
            YijSource::Formula(n) => format!("f{n}"),
            YijSource::Text => "text".into(),
        };
        format!("{}Y{},{}[{}]", if self.inverse { "inv " } else { "" }, self.i, self.j, src)
    }
}

fn pair_prefix(i: usize) -> String {
    (1..i).rev().map(|k| format!("{}{}", k, k + 1)).collect()
}

fn inverse_text(text: &str, genus: usize) -> String {
    let w = parse_word(text, genus).expect("generated word parses");
    invert(&w).to_string()
}

fn slide(sign_positive: bool) -> &'static str {
    if sign_positive {
        "y"
    } else {
        "y'"
    }
}

pub const Y43_TEXT: &str = "23121y1'2'1'3'2'";
pub const Y53_TEXT: &str = "3234123y21y'1'2'y'3'2'1'4'3'2'3'";
pub const Y54_TEXT: &str = "3423121y'1'2'1'3'2'4'3'";
pub const Y51_INV_TEXT: &str = "4'3'2'1'y1234";
pub const Y23_TEXT: &str = "12y'2'1'";
pub const Y32_TEXT: &str = "121y1'2'1'";

/// All `Y_{i,j}` words available at `genus`.
pub fn yij_words(genus: usize) -> Vec<YijWord> {
    let mut out = Vec::new();
    for i in 1..genus {
        let sign = (i + 1) % 2 == 0;
        let p = pair_prefix(i);
        let t1 = format!("{p}{}{}", slide(sign), if p.is_empty() { String::new() } else { inverse_text(&p, genus) });
        out.push(YijWord { i, j: i + 1, source: YijSource::Formula(1), text: t1, inverse: false });
        let q = format!("{p}1");
        let t2 = format!("{q}{}{}", slide(sign), inverse_text(&q, genus));
        out.push(YijWord { i: i + 1, j: i, source: YijSource::Formula(2), text: t2, inverse: false });
    }
    let up: String = (1..genus).map(|k| k.to_string()).collect();
    out.push(YijWord {
        i: genus,
        j: 1,
        source: YijSource::Formula(3),
        text: format!("{}y'{}", inverse_text(&up, genus), up),
        inverse: false,
    });
    if genus >= 3 {
        // ((g-2)'(g-1)' .. 2'3' 1'2') y (2 1 3 2 .. (g-1)(g-2))
        let tail: String = (1..genus - 1).map(|k| format!("{}{}", k + 1, k)).collect();
        out.push(YijWord {
            i: genus,
            j: genus - 1,
            source: YijSource::Formula(4),
            text: format!("{}y{}", inverse_text(&tail, genus), tail),
            inverse: false,
        });
    }
    let mut text =
        |i, j, t: &str, inverse| out.push(YijWord { i, j, source: YijSource::Text, text: t.to_string(), inverse });
    if genus >= 4 {
        text(2, 3, Y23_TEXT, false);
        text(4, 3, Y43_TEXT, false);
    }
    if genus >= 3 {
        text(3, 2, Y32_TEXT, false);
    }
    if genus == 5 {
        text(5, 3, Y53_TEXT, false);
        text(5, 4, Y54_TEXT, false);
        text(5, 1, Y51_INV_TEXT, true);
    }
    out
}

/// A chain equality: `record` equals `conj^-1 · pre · conj`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub id: &'static str,
    pub record: &'static str,
    pub pre: String,
    pub conj: &'static str,
}

impl Derivation {
    /// `reduce(conj^-1 · pre · conj)`.
    pub fn post(&self, genus: usize) -> Result<GenWord, ParseError> {
        let pre = parse_word(&self.pre, genus)?;
        let c = parse_word(self.conj, genus)?;
        Ok(conjugate(&pre, &invert(&c)))
    }
}

pub fn derivations() -> Vec<Derivation> {
    let inv = |t: &str, g| inverse_text(t, g);
    vec![
        Derivation { id: "Y43.y'", record: "4;2,1", pre: format!("{Y43_TEXT}y'"), conj: "id" },
        Derivation { id: "Y53.Y43.y'", record: "5;2", pre: format!("{Y53_TEXT}{Y43_TEXT}y'"), conj: "3" },
        Derivation { id: "3.inv(Y43).y", record: "4;5", pre: format!("y3{}yy'", inv(Y43_TEXT, 4)), conj: "y'" },
        Derivation {
            id: "Y54-composite",
            record: "5;3,2",
            pre: format!("3'{}3{Y54_TEXT}{Y43_TEXT}y'", inv(Y54_TEXT, 5)),
            conj: "21",
        },
        Derivation {
            id: "inv(Y51)-composite",
            record: "5;7",
            pre: format!("b'{Y51_INV_TEXT}y'23y2y'1'2'3'"),
            conj: "id",
        },
        Derivation { id: "4;9,1-chain", record: "4;9,1", pre: "1y'23y2y'2'1'2'3'".into(), conj: "132y" },
        Derivation { id: "4;8,2-chain", record: "4;8,2", pre: format!("b'2y2y'2'2'y2y{Y32_TEXT}"), conj: "2'" },
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

impl From<&Conjugacy> for Status {
    fn from(c: &Conjugacy) -> Status {
        match c {
            Conjugacy::Yes(_) => Status::Pass,
            Conjugacy::No(_) => Status::Fail,
            Conjugacy::Inconclusive => Status::Inconclusive,
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub kind: &'static str,
    pub inputs: Vec<(String, String)>,
    pub status: Status,
    pub witness: Option<String>,
    pub detail: String,
    pub elapsed_ms: u64,
}

/// What a task body reports before timing is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<String>,
    pub detail: String,
}

impl Outcome {
    fn new(status: Status, witness: Option<String>, detail: impl Into<String>) -> Self {
        Outcome { status, witness, detail: detail.into() }
    }

    fn from_conj(c: &Conjugacy, what: &str) -> Self {
        match c {
            Conjugacy::Yes(w) => Outcome::new(Status::Pass, Some(format_element(w)), what),
            Conjugacy::No(inv) => Outcome::new(Status::Fail, None, format!("{what}: separated by {inv}")),
            Conjugacy::Inconclusive => {
                Outcome::new(Status::Inconclusive, None, format!("{what}: search bound exhausted"))
            }
        }
    }

    fn error(e: impl fmt::Display) -> Self {
        Outcome::new(Status::Fail, None, format!("error: {e}"))
    }
}

type Body = Box<dyn Fn() -> Outcome + Send + Sync>;

/// A check waiting to run.
pub struct CheckTask {
    pub id: String,
    pub kind: &'static str,
    pub inputs: Vec<(String, String)>,
    body: Body,
}

impl CheckTask {
    pub fn new(
        id: impl Into<String>,
        kind: &'static str,
        inputs: Vec<(String, String)>,
        body: impl Fn() -> Outcome + Send + Sync + 'static,
    ) -> Self {
        CheckTask { id: id.into(), kind, inputs, body: Box::new(body) }
    }

    pub fn run(&self) -> Check {
        let start = Instant::now();
        let o = (self.body)();
        Check {
            id: self.id.clone(),
            kind: self.kind,
            inputs: self.inputs.clone(),
            status: o.status,
            witness: o.witness,
            detail: o.detail,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

impl fmt::Debug for CheckTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckTask").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

fn kv(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Whether `w` squares to the identity class.
///
/// Genus 2 uses the parity invariant; higher genus needs an inner witness.
pub fn is_involution(w: &GenWord, bounds: &Bounds) -> Result<Conjugacy, crate::action::ActionError> {
    let ww = concat(w, w);
    if w.genus == 2 {
        return Ok(match genus2_class(&ww)? {
            (0, 0) => Conjugacy::Yes(Vec::new()),
            _ => Conjugacy::No("genus-2 parity class"),
        });
    }
    Ok(is_inner(&evaluate(&ww)?, bounds))
}

/// Evidence that `w` is not the identity class, or `None` if nothing shows it.
pub fn nontriviality_evidence(w: &GenWord, bounds: &Bounds) -> Result<Option<String>, crate::action::ActionError> {
    if w.genus == 2 && genus2_class(w)? == (0, 0) {
        return Ok(None);
    }
    let phi = evaluate(w)?;
    let m = homology_matrix_z2(&phi);
    if !is_identity_z2(&m) {
        return Ok(Some(format!("Z/2 homology matrix {m:?}")));
    }
    let g = phi.group();
    for k in 0..w.genus {
        let x = [sym(k, false)];
        if let Conjugacy::No(inv) = g.is_conjugate(&phi.images()[k], &x, &bounds.conj) {
            return Ok(Some(format!("class of x{} is displaced ({inv})", k + 1)));
        }
    }
    if w.genus == 2 {
        return Ok(Some(format!("genus-2 parity class {:?}", genus2_class(w)?)));
    }
    Ok(match is_inner(&phi, bounds) {
        Conjugacy::No(inv) => Some(format!("not inner ({inv})")),
        _ => None,
    })
}

fn involution_task(rec: &'static InvolutionRecord, bounds: Bounds) -> CheckTask {
    let inputs = kv(&[("label", rec.label.to_string()), ("word", rec.text.clone())]);
    CheckTask::new(format!("involution/{}", rec.label), "involution", inputs, move || {
        match is_involution(&rec.word, &bounds) {
            Ok(c) => Outcome::from_conj(&c, "w^2 is the identity class"),
            Err(e) => Outcome::error(e),
        }
    })
}

fn nontrivial_task(rec: &'static InvolutionRecord, bounds: Bounds) -> CheckTask {
    let inputs = kv(&[("label", rec.label.to_string()), ("word", rec.text.clone())]);
    let identity = rec.label.to_string() == "2;2";
    let id = if identity { format!("identity/{}", rec.label) } else { format!("nontrivial/{}", rec.label) };
    CheckTask::new(id, "nontrivial", inputs, move || match nontriviality_evidence(&rec.word, &bounds) {
        Ok(None) if identity => Outcome::new(Status::Pass, None, "identity class"),
        Ok(Some(ev)) if identity => Outcome::new(Status::Fail, None, format!("expected identity: {ev}")),
        Ok(Some(ev)) => Outcome::new(Status::Pass, None, ev),
        Ok(None) => Outcome::new(Status::Fail, None, "no invariant separates w from the identity"),
        Err(e) => Outcome::error(e),
    })
}

fn matrix_task(rec: &'static InvolutionRecord) -> CheckTask {
    let inputs = kv(&[("label", rec.label.to_string()), ("word", rec.text.clone())]);
    CheckTask::new(format!("matrix/{}", rec.label), "homology", inputs, move || {
        let phi = match evaluate(&rec.word) {
            Ok(p) => p,
            Err(e) => return Outcome::error(e),
        };
        let m2 = homology_matrix_z2(&phi);
        let mz = homology_matrix_z(&phi);
        let sq2 = is_identity_z2(&mat_mul_z2(&m2, &m2));
        let sqz = mz.compose(&mz).is_identity();
        let status = if sq2 && sqz { Status::Pass } else { Status::Fail };
        Outcome::new(status, None, format!("Z/2 square identity: {sq2}; Z square identity: {sqz}"))
    })
}

fn action_task(id: String, genus: usize, word: GenWord, a: ExpectedAction, bounds: Bounds) -> CheckTask {
    let inputs = kv(&[("genus", genus.to_string()), ("word", word.to_string()), ("action", a.to_string())]);
    CheckTask::new(id, "action", inputs, move || {
        let phi = match evaluate(&word) {
            Ok(p) => p,
            Err(e) => return Outcome::error(e),
        };
        match class_maps_to(&phi, &a.source, &a.target, a.inverted, &bounds.conj) {
            Ok(c) => Outcome::from_conj(&c, &a.to_string()),
            Err(e) => Outcome::error(e),
        }
    })
}

/// Word whose curve actions are stated alongside the `Y_{5,3}` formula.
pub const Y53_HEAD: &str = "3234123y21";

pub fn action_tasks(bounds: Bounds) -> Vec<CheckTask> {
    let mut out = Vec::new();
    for rec in load_catalog() {
        for a in &rec.expected_actions {
            let id = format!("action/{}/{}", rec.label, a.source);
            out.push(action_task(id, rec.genus(), rec.action_target().clone(), a.clone(), bounds));
        }
    }
    let w = parse_word(Y53_HEAD, 5).expect("fixed word parses");
    for a in ["m1->g3", "a1->g3,5'"] {
        let a: ExpectedAction = a.parse().expect("fixed action parses");
        let id = format!("action/{Y53_HEAD}/{}", a.source);
        out.push(action_task(id, 5, w.clone(), a, bounds));
    }
    out
}

pub fn involution_tasks(bounds: Bounds) -> Vec<CheckTask> {
    load_catalog().iter().map(|r| involution_task(r, bounds)).collect()
}

pub fn nontriviality_tasks(bounds: Bounds) -> Vec<CheckTask> {
    load_catalog().iter().map(|r| nontrivial_task(r, bounds)).collect()
}

pub fn matrix_tasks() -> Vec<CheckTask> {
    load_catalog().iter().map(matrix_task).collect()
}

pub fn derivation_tasks(bounds: Bounds) -> Vec<CheckTask> {
    derivations()
        .into_iter()
        .map(|d| {
            let inputs = kv(&[("record", d.record.into()), ("pre", d.pre.clone()), ("conj", d.conj.into())]);
            CheckTask::new(format!("derivation/{}", d.id), "derivation", inputs, move || {
                let rec = match record(d.record) {
                    Ok(r) => r,
                    Err(e) => return Outcome::error(e),
                };
                let post = match d.post(rec.genus()) {
                    Ok(p) => p,
                    Err(e) => return Outcome::error(e),
                };
                match outer_equal(&rec.word, &post, &bounds) {
                    Ok(c) => Outcome::from_conj(&c, &format!("{} = {}", rec.label, post)),
                    Err(e) => Outcome::error(e),
                }
            })
        })
        .collect()
}

/// `Y_{i,j}` sends the class of `x_i` to that of `x_i^-1` and fixes the
/// classes of `x_k` for `k ∉ {i, j}`.
pub fn rel_y_ij_tasks(genus: usize, bounds: Bounds) -> Vec<CheckTask> {
    yij_tasks(genus, yij_words(genus), &format!("rel_y_ij/{genus}"), bounds)
}

fn yij_tasks(genus: usize, words: Vec<YijWord>, prefix: &str, bounds: Bounds) -> Vec<CheckTask> {
    words
        .into_iter()
        .map(|y| {
            let inputs = kv(&[("genus", genus.to_string()), ("word", y.text.clone())]);
            CheckTask::new(format!("{prefix}/{}", y.name()), "rel_y_ij", inputs, move || {
                let w = match y.word(genus) {
                    Ok(w) => w,
                    Err(e) => return Outcome::error(e),
                };
                let phi = match evaluate(&w) {
                    Ok(p) => {
                        if y.inverse {
                            p.inverse()
                        } else {
                            p
                        }
                    }
                    Err(e) => return Outcome::error(e),
                };
                let g = phi.group();
                let mut witnesses = Vec::new();
                for k in 1..=genus {
                    if k == y.j {
                        continue;
                    }
                    let x = [sym(k - 1, false)];
                    let target = if k == y.i { [sym(k - 1, true)] } else { x };
                    let c = g.is_conjugate(&phi.images()[k - 1], &target, &bounds.conj);
                    let what = if k == y.i { format!("x{k} -> x{k}^-1") } else { format!("x{k} fixed") };
                    match c {
                        Conjugacy::Yes(w) => witnesses.push(format!("{what} by {}", format_element(&w))),
                        other => return Outcome::from_conj(&other, &what),
                    }
                }
                Outcome::new(Status::Pass, Some(witnesses.join("; ")), y.name())
            })
        })
        .collect()
}

/// Relation instances that constrain the generator automorphisms.
pub fn relation_pairs(genus: usize) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for i in 1..genus.saturating_sub(1) {
        let l = format!("{}{}{}", i, i + 1, i);
        let r = format!("{}{}{}", i + 1, i, i + 1);
        out.push((format!("braid/{i}"), l, r));
    }
    for i in 1..genus {
        for j in i + 2..genus {
            out.push((format!("disjoint/{i},{j}"), format!("{i}{j}"), format!("{j}{i}")));
        }
    }
    out.push(("slide/1y".into(), "1y".into(), "y1'".into()));
    for i in 3..genus {
        out.push((format!("slide/y{i}"), format!("y{i}"), format!("{i}y")));
    }
    if genus >= 4 {
        out.push(("slide/yb".into(), "yb".into(), "by".into()));
    }
    out
}

pub fn relation_tasks(genus: usize, bounds: Bounds) -> Vec<CheckTask> {
    relation_pairs(genus)
        .into_iter()
        .map(|(name, l, r)| {
            let inputs = kv(&[("genus", genus.to_string()), ("left", l.clone()), ("right", r.clone())]);
            CheckTask::new(format!("relation/{genus}/{name}"), "relation", inputs, move || {
                let (u, v) = match (parse_word(&l, genus), parse_word(&r, genus)) {
                    (Ok(u), Ok(v)) => (u, v),
                    (Err(e), _) | (_, Err(e)) => return Outcome::error(e),
                };
                match outer_equal(&u, &v, &bounds) {
                    Ok(c) => Outcome::from_conj(&c, &format!("{l} = {r}")),
                    Err(e) => Outcome::error(e),
                }
            })
        })
        .collect()
}

/// Well-definedness and exact inverses of every generator automorphism.
pub fn generator_tasks() -> Vec<CheckTask> {
    (2..=5)
        .map(|g| {
            CheckTask::new(format!("generators/{g}"), "generators", kv(&[("genus", g.to_string())]), move || {
                match GeneratorSet::build(g) {
                    Ok(_) => Outcome::new(Status::Pass, None, "relator image conjugate to R^±1; inverses exact"),
                    Err(e) => Outcome::error(e),
                }
            })
        })
        .collect()
}

fn pass_if(ok: bool, detail: String) -> Outcome {
    Outcome::new(if ok { Status::Pass } else { Status::Fail }, None, detail)
}

/// Table expansion, class counts and agreement with the catalog.
pub fn classifier_tasks() -> Vec<CheckTask> {
    let mut out = vec![CheckTask::new("classify/counts", "classifier", Vec::new(), || {
        let counts: Result<Vec<usize>, _> = (2..=5).map(|g| nec::classes(g).map(|c| c.len())).collect();
        match counts {
            Ok(c) => pass_if(c == [5, 3, 14, 8], format!("classes per genus 2..5: {c:?}")),
            Err(e) => Outcome::error(e),
        }
    })];
    out.push(CheckTask::new("classify/rows", "classifier", Vec::new(), || {
        let mut n = 0;
        for row in nec::table2() {
            match row.expand() {
                Ok(maps) => n += maps.len(),
                Err(e) => return Outcome::error(format!("{}: {e}", row.name)),
            }
        }
        pass_if(true, format!("{n} expanded NSK-maps satisfy every invariant"))
    }));
    for (a, b) in [("4;2,1", "4;2,2"), ("4;9,1", "4;9,3"), ("4;8,1", "4;8,2")] {
        out.push(CheckTask::new(format!("classify/{a}~{b}"), "classifier", Vec::new(), move || {
            let cls = match nec::classes(4) {
                Ok(c) => c,
                Err(e) => return Outcome::error(e),
            };
            let find = |l: &str| cls.iter().find(|c| c.label == l);
            match (find(a), find(b)) {
                (Some(x), Some(y)) => {
                    let conj = nec::topologically_conjugate(&x.members[0], &y.members[0]);
                    pass_if(!conj, format!("{a} and {b} are {}conjugate", if conj { "" } else { "not " }))
                }
                _ => Outcome::error(format!("missing class {a} or {b}")),
            }
        }));
    }
    out.push(CheckTask::new("classify/catalog", "classifier", Vec::new(), || {
        let mut bad = Vec::new();
        for rec in load_catalog() {
            let cls = nec::classes(rec.genus()).unwrap_or_default();
            let label = rec.label.to_string();
            match cls.iter().find(|c| c.label == label) {
                Some(c) if c.signature == rec.signature && c.profile == rec.profile => {}
                _ => bad.push(label),
            }
        }
        pass_if(bad.is_empty(), format!("catalog signatures and profiles match the table; mismatches: {bad:?}"))
    }));
    out
}

pub fn blowup_tasks() -> Vec<CheckTask> {
    let mut out = Vec::new();
    for g in [2, 4] {
        out.push(CheckTask::new(
            format!("blowup/sigma/{g}"),
            "blowup",
            Vec::new(),
            move || match nec::sigma_identities(g) {
                Ok(ids) => {
                    let failed: Vec<&str> = ids.iter().filter(|i| !i.holds).map(|i| i.statement.as_str()).collect();
                    pass_if(failed.is_empty(), format!("{} identities; failed: {failed:?}", ids.len()))
                }
                Err(e) => Outcome::error(e),
            },
        ));
        out.push(CheckTask::new(format!("blowup/flow/{g}"), "blowup", Vec::new(), move || {
            let (edges, targets) = match (nec::blowup_flow(g), nec::classes(g + 1)) {
                (Ok(e), Ok(t)) => (e, t),
                (Err(e), _) | (_, Err(e)) => return Outcome::error(e),
            };
            let missing: Vec<&str> = targets
                .iter()
                .filter(|t| !edges.iter().any(|e| e.target.as_deref() == Some(t.label.as_str())))
                .map(|t| t.label.as_str())
                .collect();
            let unresolved = edges.iter().filter(|e| e.target.is_none()).count();
            pass_if(
                missing.is_empty() && unresolved == 0,
                format!("{} edges, {unresolved} unresolved, uncovered targets {missing:?}", edges.len()),
            )
        }));
    }
    out
}

/// `Y_{5,3}` with the leading `3` of its written form dropped.
pub const Y53_FIXED_TEXT: &str = "234123y21y'1'2'y'3'2'1'4'3'2'";

/// Checks of corrected readings of statements whose written form fails.
pub fn erratum_tasks(bounds: Bounds) -> Vec<CheckTask> {
    let mut out = Vec::new();
    let fixed = format!("{Y53_FIXED_TEXT}{Y43_TEXT}y'");
    let inputs = kv(&[("genus", "5".into()), ("word", fixed.clone())]);
    out.push(CheckTask::new("erratum/5;2-involution", "erratum", inputs, move || {
        match parse_word(&fixed, 5).map(|w| is_involution(&w, &bounds)) {
            Ok(Ok(c)) => Outcome::from_conj(&c, "corrected Y53.Y43.y' squares to the identity class"),
            Ok(Err(e)) => Outcome::error(e),
            Err(e) => Outcome::error(e),
        }
    }));
    let y = YijWord { i: 5, j: 3, source: YijSource::Text, text: Y53_FIXED_TEXT.into(), inverse: false };
    out.extend(yij_tasks(5, vec![y], "erratum/Y5,3", bounds));
    let w = parse_word("234123y21", 5).expect("fixed word parses");
    let a: ExpectedAction = "m1->g5".parse().expect("fixed action parses");
    out.push(action_task("erratum/234123y21/mu1".into(), 5, w.clone(), a, bounds));
    // gamma3,5 drawn on the other side of crosscap 4.
    let target = "x3 x4^2 x5 x4^-2";
    let inputs = kv(&[("genus", "5".into()), ("word", w.to_string()), ("action", format!("alpha1 -> ({target})^-1"))]);
    out.push(CheckTask::new("erratum/234123y21/alpha1", "action", inputs, move || {
        let run = || -> Result<Conjugacy, String> {
            let phi = evaluate(&w).map_err(|e| e.to_string())?;
            let img = phi.apply(&CurveClass::Alpha(1).element(5).map_err(|e| e.to_string())?);
            let t = phi.group().parse_element(target).map_err(|e| e.to_string())?;
            Ok(phi.group().is_conjugate(&img, &crate::pi1::invert(&t), &bounds.conj))
        };
        match run() {
            Ok(c) => Outcome::from_conj(&c, &format!("alpha1 -> ({target})^-1")),
            Err(e) => Outcome::error(e),
        }
    }));
    out
}

/// Every check in a fixed order.
pub fn all_tasks(bounds: Bounds) -> Vec<CheckTask> {
    let mut out = generator_tasks();
    for g in 3..=5 {
        out.extend(relation_tasks(g, bounds));
    }
    out.extend(involution_tasks(bounds));
    out.extend(nontriviality_tasks(bounds));
    out.extend(matrix_tasks());
    out.extend(action_tasks(bounds));
    out.extend(derivation_tasks(bounds));
    for g in 3..=5 {
        out.extend(rel_y_ij_tasks(g, bounds));
    }
    out.extend(classifier_tasks());
    out.extend(blowup_tasks());
    out.extend(erratum_tasks(bounds));
    out
}

/// Runs every check sequentially.
pub fn verify_all(bounds: Bounds) -> Vec<Check> {
    all_tasks(bounds).iter().map(CheckTask::run).collect()
}

/// Checks that belong to one catalog class.
pub fn class_tasks(label: &str, bounds: Bounds) -> Result<Vec<CheckTask>, CatalogError> {
    let rec = record(label)?;
    let key = rec.label.to_string();
    let mut out = vec![involution_task(rec, bounds), nontrivial_task(rec, bounds), matrix_task(rec)];
    for a in &rec.expected_actions {
        let id = format!("action/{}/{}", rec.label, a.source);
        out.push(action_task(id, rec.genus(), rec.action_target().clone(), a.clone(), bounds));
    }
    out.extend(derivation_tasks(bounds).into_iter().filter(|t| t.inputs[0].1 == key));
    Ok(out)
}

/// Free reduction of a word, for callers that only have text.
pub fn reduced_text(text: &str, genus: usize) -> Result<String, ParseError> {
    Ok(reduce(&parse_word(text, genus)?).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let cat = load_catalog();
        let counts: Vec<usize> = (2..=5).map(|g| cat.iter().filter(|r| r.genus() == g).count()).collect();
        assert_eq!(counts, vec![5, 3, 14, 8]);
        let r = record("4;2,1").unwrap();
        assert_eq!(r.word.to_string(), "21321y1'2'3'1'2'y'");
        assert_eq!(r.profile, FixedPointProfile::new(2, 0, 2));
        assert!(record("2;2").unwrap().word.is_empty());
        assert_eq!(record("5;3,1").unwrap().profile, FixedPointProfile::new(1, 3, 0));
        assert_eq!(record("2;4").unwrap().word, record("2;5").unwrap().word);
    }

    #[test]
    fn label_round_trip() {
        for s in ["2;1", "4;2,1", "5;3,2"] {
            assert_eq!(s.parse::<Label>().unwrap().to_string(), s);
        }
        assert!("4".parse::<Label>().is_err());
    }

    #[test]
    fn yij_formulas_match_text() {
        let w = yij_words(5);
        let find = |i, j, src| w.iter().find(|y| y.i == i && y.j == j && y.source == src).unwrap().text.clone();
        assert_eq!(find(1, 2, YijSource::Formula(1)), "y");
        assert_eq!(find(2, 3, YijSource::Formula(1)), Y23_TEXT);
        assert_eq!(find(4, 3, YijSource::Formula(2)), Y43_TEXT);
        assert_eq!(find(5, 4, YijSource::Formula(2)), Y54_TEXT);
        assert_eq!(inverse_text(&find(5, 1, YijSource::Formula(3)), 5), Y51_INV_TEXT);
        assert_eq!(find(5, 4, YijSource::Formula(4)), "3'4'2'3'1'2'y213243");
        // the written Y32 differs from formula 2 in the sign of the slide
        assert_eq!(find(3, 2, YijSource::Formula(2)), "121y'1'2'1'");
    }

    #[test]
    fn derivation_post_forms() {
        let d = derivations();
        let d2 = d.iter().find(|d| d.record == "5;2").unwrap();
        let post = d2.post(5).unwrap();
        assert_eq!(post.letters.first().map(|l| l.to_string()), Some("2".into()));
        assert_eq!(post.letters.last().map(|l| l.to_string()), Some("3".into()));
    }

    #[test]
    fn genus2_involutions() {
        let b = Bounds::default();
        assert!(is_involution(&parse_word("y", 2).unwrap(), &b).unwrap().is_yes());
        assert!(is_involution(&parse_word("id", 2).unwrap(), &b).unwrap().is_yes());
    }

    #[test]
    fn twist_is_not_an_involution() {
        let b = Bounds::default();
        let r = is_involution(&parse_word("1", 3).unwrap(), &b).unwrap();
        assert!(matches!(r, Conjugacy::No(_)), "{r:?}");
    }

    #[test]
    fn relation_list() {
        let names: Vec<String> = relation_pairs(5).into_iter().map(|p| p.0).collect();
        assert!(names.contains(&"braid/3".to_string()));
        assert!(names.contains(&"disjoint/1,4".to_string()));
        assert!(names.contains(&"slide/yb".to_string()));
        assert!(!relation_pairs(3).iter().any(|p| p.0 == "slide/yb"));
    }
}
