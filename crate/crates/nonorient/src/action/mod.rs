//! Mapping classes as automorphisms of `π1(N_g)`.
//!
//! Generator conventions, fixed once and validated by the relation suite:
//!
//! * `i` is the twist along the corner curve through crosscaps `i, i+1`
//!   read with direction `s0 = -1` in [`polygon::twist_images`].
//! * `b` is the twist along the corner curve through crosscaps `1..4`, same
//!   direction.
//! * `y'` sends `x1 ↦ x1 x1 x2 x1^-1 x2^-1 x1^-1 x1^-1`, `x2 ↦ x1 x1 x2` and
//!   fixes the rest; `y` is its exact inverse, `1' ∘ u` with
//!   `u: x1 ↦ x2, x2 ↦ x2^-2 x1 x2^2`.
//!
//! Mapping classes are compared through the outer action, assuming
//! faithfulness for `g >= 3` (a standard fact for closed surfaces).

pub mod polygon;
pub mod quotient;

use crate::notation::{Gen, GenWord, Letter};
use crate::pi1::conjugacy::{find_witness, ConjConfig, Conjugacy};
use crate::pi1::{cat, free_reduce, invert, parse_element, sym, HomologyClassZ, Pi1Error, SurfaceGroup, Sym};
use polygon::{corner_curve, twist_images};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error("generator `{letter}` failed validation in genus {genus}: {reason}")]
    Validation { letter: String, genus: usize, reason: String },
    #[error("`{0}` is not a curve label (try g13, a1, b, m1)")]
    CurveLabel(String),
    #[error("curve {curve} does not fit in genus {genus}")]
    CurveGenus { curve: String, genus: usize },
    #[error("letter `{0}` is not available in genus 2")]
    Genus2Letter(String),
}

/// Knobs for innerness and class comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub conj: ConjConfig,
    /// Largest `|k|` tried in `c0 · x1^k`.
    pub power_bound: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { conj: ConjConfig::default(), power_bound: 8 }
    }
}

/// An automorphism of `π1(N_g)` together with its inverse.
#[derive(Clone, Debug)]
pub struct Automorphism {
    group: Arc<SurfaceGroup>,
    images: Vec<Vec<Sym>>,
    inverse_images: Vec<Vec<Sym>>,
}

fn substitute(images: &[Vec<Sym>], w: &[Sym]) -> Vec<Sym> {
    let mut out = Vec::new();
    for &s in w {
        let img = &images[(s / 2) as usize];
        if s % 2 == 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(invert(img));
        }
    }
    out
}

impl Automorphism {
    pub fn identity(group: Arc<SurfaceGroup>) -> Self {
        let images: Vec<Vec<Sym>> = (0..group.genus()).map(|k| vec![sym(k, false)]).collect();
        Automorphism { group, inverse_images: images.clone(), images }
    }

    /// Conjugation `x ↦ c x c^-1`.
    pub fn inner(group: Arc<SurfaceGroup>, c: &[Sym]) -> Self {
        let ci = invert(c);
        let images = (0..group.genus()).map(|k| group.conj(c, &[sym(k, false)])).collect();
        let inverse_images = (0..group.genus()).map(|k| group.conj(&ci, &[sym(k, false)])).collect();
        Automorphism { group, images, inverse_images }
    }

    /// Builds from images and claimed inverse images, normalizing both.
    /// Call [`Automorphism::validate`] to check them.
    pub fn from_images(group: Arc<SurfaceGroup>, images: Vec<Vec<Sym>>, inverse_images: Vec<Vec<Sym>>) -> Self {
        let images = images.iter().map(|w| group.normalize(w)).collect();
        let inverse_images = inverse_images.iter().map(|w| group.normalize(w)).collect();
        Automorphism { group, images, inverse_images }
    }

    pub fn group(&self) -> &Arc<SurfaceGroup> {
        &self.group
    }

    pub fn genus(&self) -> usize {
        self.group.genus()
    }

    pub fn images(&self) -> &[Vec<Sym>] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Vec<Sym>] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &[Sym]) -> Vec<Sym> {
        self.group.normalize(&substitute(&self.images, w))
    }

    pub fn apply_inverse(&self, w: &[Sym]) -> Vec<Sym> {
        self.group.normalize(&substitute(&self.inverse_images, w))
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            group: self.group.clone(),
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self.inverse_images.iter().map(|w| other.apply_inverse(w)).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            group: self.group.clone(),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// True when every generator is fixed on the nose.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| w[..] == [sym(k, false)])
    }

    /// Checks the relator image and the stored inverse.
    pub fn validate(&self) -> Result<(), String> {
        let g = &self.group;
        let r = g.relator();
        let image = self.apply(&r);
        let cap = ConjConfig::default().orbit_cap;
        if find_witness(g, &r, &image, cap).is_none() && find_witness(g, &invert(&r), &image, cap).is_none() {
            return Err("relator image is not conjugate to the relator or its inverse".into());
        }
        if !self.compose(&self.inverse()).is_identity() || !self.inverse().compose(self).is_identity() {
            return Err("stored inverse is not an exact inverse".into());
        }
        Ok(())
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "x{} -> {}", k + 1, crate::pi1::format_element(w))?;
        }
        Ok(())
    }
}

/// Validated automorphisms for every admissible letter of one genus.
#[derive(Debug)]
pub struct GeneratorSet {
    group: Arc<SurfaceGroup>,
    table: HashMap<Letter, Automorphism>,
}

impl GeneratorSet {
    pub fn build(genus: usize) -> Result<Self, ActionError> {
        let group = SurfaceGroup::shared(genus)?;
        let mut table = HashMap::new();
        let pair = |arcs: &[polygon::Chord]| {
            Automorphism::from_images(group.clone(), twist_images(&group, arcs, -1), twist_images(&group, arcs, 1))
        };
        for i in 1..genus {
            let t = pair(&corner_curve(i, i + 1));
            table.insert(Letter::new(Gen::Twist(i as u8), true), t.inverse());
            table.insert(Letter::new(Gen::Twist(i as u8), false), t);
        }
        if genus >= 4 {
            let t = pair(&corner_curve(1, 4));
            table.insert(Letter::new(Gen::Beta, true), t.inverse());
            table.insert(Letter::new(Gen::Beta, false), t);
        }
        let slide = {
            let el = |s: &str| parse_element(s, genus).expect("static element");
            let mut u = Automorphism::identity(group.clone()).images;
            u[0] = el("b");
            u[1] = el("BBabb");
            let mut inv = Automorphism::identity(group.clone()).images;
            inv[0] = el("aabABAA");
            inv[1] = el("aab");
            let t1_inv = table[&Letter::new(Gen::Twist(1), true)].clone();
            let images = u.iter().map(|w| t1_inv.apply(w)).collect();
            Automorphism::from_images(group.clone(), images, inv)
        };
        table.insert(Letter::new(Gen::Slide, true), slide.inverse());
        table.insert(Letter::new(Gen::Slide, false), slide);
        for (letter, a) in &table {
            a.validate().map_err(|reason| ActionError::Validation { letter: letter.to_string(), genus, reason })?;
        }
        Ok(GeneratorSet { group, table })
    }

    /// Process-wide table, built once per genus.
    pub fn shared(genus: usize) -> Result<Arc<GeneratorSet>, ActionError> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GeneratorSet>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(s) = cache.lock().unwrap().get(&genus) {
            return Ok(s.clone());
        }
        let built = Arc::new(GeneratorSet::build(genus)?);
        Ok(cache.lock().unwrap().entry(genus).or_insert(built).clone())
    }

    pub fn group(&self) -> &Arc<SurfaceGroup> {
        &self.group
    }

    pub fn get(&self, letter: Letter) -> Option<&Automorphism> {
        self.table.get(&letter)
    }
}

pub fn generator_automorphism(genus: usize, letter: Letter) -> Result<Automorphism, ActionError> {
    let set = GeneratorSet::shared(genus)?;
    set.get(letter).cloned().ok_or_else(|| ActionError::Validation {
        letter: letter.to_string(),
        genus,
        reason: "letter is not admissible".into(),
    })
}

/// The automorphism of a word; the rightmost letter acts first.
pub fn evaluate(w: &GenWord) -> Result<Automorphism, ActionError> {
    let set = GeneratorSet::shared(w.genus)?;
    let group = set.group.clone();
    let get = |l: &Letter| {
        set.get(*l).ok_or_else(|| ActionError::Validation {
            letter: l.to_string(),
            genus: w.genus,
            reason: "letter is not admissible".into(),
        })
    };
    let mut images: Vec<Vec<Sym>> = (0..w.genus).map(|k| vec![sym(k, false)]).collect();
    for l in w.letters.iter().rev() {
        let a = get(l)?;
        images = images.iter().map(|x| a.apply(x)).collect();
    }
    let mut inverse_images: Vec<Vec<Sym>> = (0..w.genus).map(|k| vec![sym(k, false)]).collect();
    for l in &w.letters {
        let a = get(&l.inv())?;
        inverse_images = inverse_images.iter().map(|x| a.apply(x)).collect();
    }
    Ok(Automorphism { group, images, inverse_images })
}

/// Decides whether `phi` is conjugation by some element.
///
/// `Yes(c)` carries a verified `c` with `phi(x) = c x c^-1`. `No` names the
/// invariant that rules innerness out. The search tries `c0 · x1^k` for
/// `|k| <= power_bound`, where `c0` conjugates `x1` to `phi(x1)`.
pub fn is_inner(phi: &Automorphism, bounds: &Bounds) -> Conjugacy {
    let g = &phi.group;
    for (k, img) in phi.images.iter().enumerate() {
        if g.abelianize_z(img) != g.abelianize_z(&[sym(k, false)]) {
            return Conjugacy::No("HomologyClassZ");
        }
    }
    let x1 = [sym(0, false)];
    if let Some(c0) = find_witness(g, &x1, &phi.images[0], bounds.conj.orbit_cap) {
        let mut ks: Vec<i64> = vec![0];
        for k in 1..=bounds.power_bound {
            ks.push(k);
            ks.push(-k);
        }
        for k in ks {
            let power = vec![sym(0, k < 0); k.unsigned_abs() as usize];
            let c = g.normalize(&cat(&[&c0, &power]));
            if phi.images.iter().enumerate().all(|(j, img)| g.conj(&c, &[sym(j, false)]) == *img) {
                return Conjugacy::Yes(c);
            }
        }
    }
    match quotient::refutes_inner(g.genus(), &phi.images) {
        Some(name) => Conjugacy::No(name),
        None => Conjugacy::Inconclusive,
    }
}

/// Outer equality of two words: `is_inner(evaluate(u) ∘ evaluate(v)^-1)`.
pub fn outer_equal(u: &GenWord, v: &GenWord, bounds: &Bounds) -> Result<Conjugacy, ActionError> {
    let f = evaluate(u)?.compose(&evaluate(v)?.inverse());
    Ok(is_inner(&f, bounds))
}

/// Curve families through chosen crosscaps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveClass {
    /// Through the listed crosscaps, ascending.
    Gamma(Vec<usize>),
    Alpha(usize),
    Beta,
    Mu(usize),
}

impl CurveClass {
    pub fn indices(&self) -> Vec<usize> {
        match self {
            CurveClass::Gamma(s) => s.clone(),
            CurveClass::Alpha(i) => vec![*i, i + 1],
            CurveClass::Beta => vec![1, 2, 3, 4],
            CurveClass::Mu(i) => vec![*i],
        }
    }

    /// `x_{i1} x_{i2} ⋯ x_{il}`.
    pub fn element(&self, genus: usize) -> Result<Vec<Sym>, ActionError> {
        let idx = self.indices();
        if idx.is_empty() || idx.iter().any(|&i| i == 0 || i > genus) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ActionError::CurveGenus { curve: self.to_string(), genus });
        }
        Ok(idx.iter().map(|&i| sym(i - 1, false)).collect())
    }

    /// Accepts `g13`, `g1,3`, `a2`, `b`, `m1` and the long forms
    /// `gamma1,3`, `alpha2`, `beta`, `mu1`.
    pub fn parse(text: &str) -> Result<CurveClass, ActionError> {
        let bad = || ActionError::CurveLabel(text.to_string());
        let t = text.trim();
        let (head, rest) = t.split_at(t.find(|c: char| c.is_ascii_digit()).unwrap_or(t.len()));
        let digits: Vec<usize> = rest
            .chars()
            .filter(|c| *c != ',' && *c != ' ')
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        let one = || if digits.len() == 1 { Ok(digits[0]) } else { Err(bad()) };
        match head {
            "g" | "gamma" if !digits.is_empty() => Ok(CurveClass::Gamma(digits)),
            "a" | "alpha" => Ok(CurveClass::Alpha(one()?)),
            "m" | "mu" => Ok(CurveClass::Mu(one()?)),
            "b" | "beta" if digits.is_empty() => Ok(CurveClass::Beta),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::Gamma(s) => {
                let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                write!(f, "gamma{}", parts.join(","))
            }
            CurveClass::Alpha(i) => write!(f, "alpha{i}"),
            CurveClass::Beta => f.write_str("beta"),
            CurveClass::Mu(i) => write!(f, "mu{i}"),
        }
    }
}

/// Normal form of `phi` applied to the representative of `c`.
pub fn apply_to_class(phi: &Automorphism, c: &CurveClass) -> Result<Vec<Sym>, ActionError> {
    Ok(phi.apply(&c.element(phi.genus())?))
}

/// Is `phi(c)` conjugate to `target` (to its inverse when `inverted`)?
pub fn class_maps_to(
    phi: &Automorphism,
    c: &CurveClass,
    target: &CurveClass,
    inverted: bool,
    conj: &ConjConfig,
) -> Result<Conjugacy, ActionError> {
    let image = apply_to_class(phi, c)?;
    let mut t = target.element(phi.genus())?;
    if inverted {
        t = invert(&t);
    }
    Ok(phi.group.is_conjugate(&image, &t, conj))
}

/// Matrix over Z/2 with `m[i][j]` the `e_i` coefficient of `phi(e_j)`.
pub fn homology_matrix_z2(phi: &Automorphism) -> Vec<Vec<u8>> {
    let g = phi.genus();
    let cols: Vec<Vec<u8>> = phi.images.iter().map(|w| phi.group.abelianize_z2(w)).collect();
    (0..g).map(|i| (0..g).map(|j| cols[j][i]).collect()).collect()
}

pub fn mat_mul_z2(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| acc ^ (a[i][k] & b[k][j]))).collect()).collect()
}

pub fn is_identity_z2(m: &[Vec<u8>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == (i == j) as u8))
}

/// Endomorphism of `Z^g / <(2,…,2)>`, stored by the images of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    pub cols: Vec<HomologyClassZ>,
}

impl ZMatrix {
    pub fn apply(&self, v: &HomologyClassZ) -> HomologyClassZ {
        let g = self.cols.len();
        let mut out = vec![0i64; g];
        for (j, &vj) in v.coords.iter().enumerate() {
            for (i, o) in out.iter_mut().enumerate() {
                *o += vj * self.cols[j].coords[i];
            }
        }
        HomologyClassZ::canonical(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ZMatrix) -> ZMatrix {
        ZMatrix { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| {
            let mut e = vec![0i64; self.cols.len()];
            e[j] = 1;
            *c == HomologyClassZ::canonical(e)
        })
    }

    /// Rows of the canonical column representatives.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        let g = self.cols.len();
        (0..g).map(|i| (0..g).map(|j| self.cols[j].coords[i]).collect()).collect()
    }
}

pub fn homology_matrix_z(phi: &Automorphism) -> ZMatrix {
    ZMatrix { cols: phi.images.iter().map(|w| phi.group.abelianize_z(w)).collect() }
}

/// Parities of `1` and `y` in a genus-2 word, a complete invariant of
/// `M(N_2) ≅ Z/2 ⊕ Z/2`.
pub fn genus2_class(w: &GenWord) -> Result<(u8, u8), ActionError> {
    let mut t = 0u8;
    let mut y = 0u8;
    for l in &w.letters {
        match l.gen {
            Gen::Twist(1) => t ^= 1,
            Gen::Slide => y ^= 1,
            _ => return Err(ActionError::Genus2Letter(l.to_string())),
        }
    }
    Ok((t, y))
}

/// Freely reduced word of `phi(x_k)` for display.
pub fn image_of_generator(phi: &Automorphism, k: usize) -> Vec<Sym> {
    free_reduce(&phi.images[k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_word;

    fn ev(s: &str, g: usize) -> Automorphism {
        evaluate(&parse_word(s, g).unwrap()).unwrap()
    }

    fn el(s: &str, g: usize) -> Vec<Sym> {
        parse_element(s, g).unwrap()
    }

    #[test]
    fn generators_validate() {
        for g in 2..=5 {
            GeneratorSet::build(g).unwrap();
        }
    }

    #[test]
    fn supports() {
        for g in 3..=5 {
            for i in 1..g {
                let t = ev(&i.to_string(), g);
                for k in 0..g {
                    if k + 1 != i && k != i {
                        assert_eq!(t.images()[k], vec![sym(k, false)], "g={g} i={i} k={k}");
                    }
                }
            }
            let y = ev("y", g);
            for k in 2..g {
                assert_eq!(y.images()[k], vec![sym(k, false)]);
            }
        }
        let b = ev("b", 5);
        assert_eq!(b.images()[4], vec![sym(4, false)]);
    }

    #[test]
    fn twist_two_fixes_x1() {
        assert_eq!(ev("2", 3).images()[0], el("x1", 3));
    }

    #[test]
    fn slide_reverses_mu1_and_fixes_alpha1() {
        let y = ev("y", 3);
        let c = ConjConfig::default();
        assert!(class_maps_to(&y, &CurveClass::Mu(1), &CurveClass::Mu(1), true, &c).unwrap().is_yes());
        assert!(class_maps_to(&y, &CurveClass::Alpha(1), &CurveClass::Alpha(1), false, &c).unwrap().is_yes());
    }

    #[test]
    fn twist_one_z2_matrix_is_transposition() {
        let m = homology_matrix_z2(&ev("1", 3));
        assert_eq!(m, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn empty_and_cancelling_words() {
        assert!(evaluate(&GenWord::empty(4)).unwrap().is_identity());
        assert!(ev("11'", 3).is_identity());
        assert!(ev("y'y", 4).is_identity());
    }

    #[test]
    fn inner_examples() {
        let g = SurfaceGroup::shared(3).unwrap();
        let phi = Automorphism::inner(g.clone(), &el("x1 x2", 3));
        assert_eq!(is_inner(&phi, &Bounds::default()), Conjugacy::Yes(el("x1 x2", 3)));
        let yy = ev("yy", 2);
        assert!(is_inner(&yy, &Bounds::default()).is_yes());
        assert!(matches!(is_inner(&ev("1", 3), &Bounds::default()), Conjugacy::No(_)));
        assert!(matches!(is_inner(&ev("11", 3), &Bounds::default()), Conjugacy::No(_)));
    }

    #[test]
    fn relation_examples() {
        let b = Bounds::default();
        let eq = |u: &str, v: &str, g: usize| {
            outer_equal(&parse_word(u, g).unwrap(), &parse_word(v, g).unwrap(), &b).unwrap()
        };
        assert!(eq("121", "212", 3).is_yes());
        assert!(eq("1y", "y1'", 3).is_yes());
        assert!(eq("13", "31", 4).is_yes());
        assert!(!eq("12", "21", 3).is_yes());
    }

    #[test]
    fn genus2_classes() {
        let w = |s: &str| parse_word(s, 2).unwrap();
        assert_eq!(genus2_class(&w("y")).unwrap(), (0, 1));
        assert_eq!(genus2_class(&w("1y1y")).unwrap(), (0, 0));
        assert_eq!(genus2_class(&w("id")).unwrap(), (0, 0));
        let bad = GenWord { genus: 2, letters: vec![Letter::new(Gen::Beta, false)] };
        assert!(genus2_class(&bad).is_err());
    }

    #[test]
    fn curve_labels() {
        assert_eq!(CurveClass::parse("g13").unwrap(), CurveClass::Gamma(vec![1, 3]));
        assert_eq!(CurveClass::parse("gamma1,3").unwrap(), CurveClass::Gamma(vec![1, 3]));
        assert_eq!(CurveClass::parse("a2").unwrap(), CurveClass::Alpha(2));
        assert_eq!(CurveClass::parse("b").unwrap(), CurveClass::Beta);
        assert_eq!(CurveClass::parse("mu1").unwrap(), CurveClass::Mu(1));
        assert!(CurveClass::parse("q1").is_err());
        let c = CurveClass::Gamma(vec![2, 4]);
        assert_eq!(CurveClass::parse(&c.to_string()).unwrap(), c);
        assert_eq!(CurveClass::Beta.element(4).unwrap(), el("x1 x2 x3 x4", 4));
        assert!(CurveClass::Beta.element(3).is_err());
    }

    #[test]
    fn z_matrix_composes() {
        let u = ev("12y", 4);
        let v = ev("3b'", 4);
        let lhs = homology_matrix_z(&u.compose(&v));
        let rhs = homology_matrix_z(&u).compose(&homology_matrix_z(&v));
        assert_eq!(lhs, rhs);
    }
}
