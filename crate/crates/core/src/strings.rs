//! Strings, bands and string modules of a presentation with quadratic zero
//! relations.
//!
//! Letters are stored in traversal order: `letters[0]` is the first step
//! `α_1` of the string `α_t ⋯ α_1`. Names and JSON use the written order
//! (last step first), as in `αωα⁻¹`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, ArrowKind, Presentation, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inverse(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn flipped(self) -> Self {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    pub fn start(self, p: &Presentation) -> VertexId {
        let a = p.quiver().arrow(self.arrow);
        if self.inverse { a.tgt } else { a.src }
    }

    pub fn end(self, p: &Presentation) -> VertexId {
        let a = p.quiver().arrow(self.arrow);
        if self.inverse { a.src } else { a.tgt }
    }
}

/// May `next` follow `prev` in a string?
fn may_follow(p: &Presentation, prev: Letter, next: Letter) -> bool {
    if prev.end(p) != next.start(p) || next == prev.flipped() {
        return false;
    }
    match (prev.inverse, next.inverse) {
        (false, false) => !p.is_relation(next.arrow, prev.arrow),
        (true, true) => !p.is_relation(prev.arrow, next.arrow),
        _ => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StringWord {
    /// The zero string of length −1.
    Zero,
    Trivial(VertexId),
    Word(Vec<Letter>),
}

impl StringWord {
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        StringWord::Word(letters)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, StringWord::Zero)
    }

    /// Length `t`; `None` for the zero string.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match self {
            StringWord::Zero => None,
            StringWord::Trivial(_) => Some(0),
            StringWord::Word(l) => Some(l.len()),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            StringWord::Word(l) => l,
            _ => &[],
        }
    }

    pub fn inverse(&self) -> StringWord {
        match self {
            StringWord::Word(l) => StringWord::Word(l.iter().rev().map(|x| x.flipped()).collect()),
            other => other.clone(),
        }
    }

    /// The smaller of the word and its inverse.
    pub fn canonical(&self) -> StringWord {
        let inv = self.inverse();
        if inv < *self { inv } else { self.clone() }
    }

    pub fn start(&self, p: &Presentation) -> Option<VertexId> {
        match self {
            StringWord::Zero => None,
            StringWord::Trivial(v) => Some(*v),
            StringWord::Word(l) => l.first().map(|x| x.start(p)),
        }
    }

    pub fn end(&self, p: &Presentation) -> Option<VertexId> {
        match self {
            StringWord::Zero => None,
            StringWord::Trivial(v) => Some(*v),
            StringWord::Word(l) => l.last().map(|x| x.end(p)),
        }
    }

    /// Vertices traversed, with multiplicity, in traversal order.
    pub fn vertices(&self, p: &Presentation) -> Vec<VertexId> {
        match self {
            StringWord::Zero => Vec::new(),
            StringWord::Trivial(v) => vec![*v],
            StringWord::Word(l) => {
                let mut vs = vec![l[0].start(p)];
                vs.extend(l.iter().map(|x| x.end(p)));
                vs
            }
        }
    }

    /// Why `self` is not a string of `p`, if it is not.
    pub fn defect(&self, p: &Presentation) -> Option<String> {
        let q = p.quiver();
        match self {
            StringWord::Zero => None,
            StringWord::Trivial(v) => {
                (*v >= q.vertex_count()).then(|| format!("no vertex {}", v + 1))
            }
            StringWord::Word(l) => {
                if l.is_empty() {
                    return Some("empty letter list".into());
                }
                if let Some(x) = l.iter().find(|x| x.arrow >= q.arrows().len()) {
                    return Some(format!("no arrow {}", x.arrow));
                }
                l.windows(2).find(|w| !may_follow(p, w[0], w[1])).map(|w| {
                    format!("{} cannot follow {}", letter_name(p, w[1]), letter_name(p, w[0]))
                })
            }
        }
    }

    pub fn is_string_of(&self, p: &Presentation) -> bool {
        self.defect(p).is_none()
    }

    /// Concatenation: `other` is traversed after `self`.
    pub fn then(&self, other: &StringWord) -> StringWord {
        match (self, other) {
            (StringWord::Zero, _) | (_, StringWord::Zero) => StringWord::Zero,
            (StringWord::Trivial(_), x) | (x, StringWord::Trivial(_)) => x.clone(),
            (StringWord::Word(a), StringWord::Word(b)) => {
                StringWord::Word(a.iter().chain(b).copied().collect())
            }
        }
    }

    /// Letter names in written order, e.g. `["a1_2", "w", "a1_2^-1"]`.
    pub fn names(&self, p: &Presentation) -> Vec<String> {
        match self {
            StringWord::Zero => Vec::new(),
            StringWord::Trivial(v) => vec![format!("e{}", v + 1)],
            StringWord::Word(l) => l.iter().rev().map(|&x| letter_name(p, x)).collect(),
        }
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> DisplayString<'a> {
        DisplayString { word: self, p }
    }

    pub fn to_json(&self, p: &Presentation) -> serde_json::Value {
        match self {
            StringWord::Zero => serde_json::Value::Null,
            _ => serde_json::json!(self.names(p)),
        }
    }
}

fn letter_name(p: &Presentation, x: Letter) -> String {
    let name = &p.quiver().arrow(x.arrow).name;
    if x.inverse { format!("{name}^-1") } else { name.clone() }
}

pub struct DisplayString<'a> {
    word: &'a StringWord,
    p: &'a Presentation,
}

impl fmt::Display for DisplayString<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.word {
            StringWord::Zero => f.write_str("0"),
            _ => f.write_str(&self.word.names(self.p).join(" ")),
        }
    }
}

/// Result of a string walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringEnumeration {
    /// Canonical strings, trivial ones first, sorted.
    pub strings: Vec<StringWord>,
    /// Canonical representatives (up to rotation and inversion) of the
    /// primitive closed strings whose powers are all strings.
    pub bands: Vec<StringWord>,
    /// Some string was cut off at the length cap.
    pub truncated: bool,
}

impl StringEnumeration {
    pub fn has_bands(&self) -> bool {
        !self.bands.is_empty()
    }
}

pub fn default_cap(p: &Presentation) -> usize {
    4 * p.quiver().arrows().len().max(1) * p.quiver().vertex_count().max(1)
}

/// Depth-first extension of strings letter by letter. The admissible next
/// letters depend only on the last letter, so a letter recurring along one
/// string marks a closed string all of whose powers are strings.
pub fn enumerate_strings(p: &Presentation, cap: usize) -> Result<StringEnumeration> {
    let q = p.quiver();
    let mut strings: BTreeSet<StringWord> =
        (0..q.vertex_count()).map(StringWord::Trivial).collect();
    let mut bands: BTreeSet<StringWord> = BTreeSet::new();
    let mut truncated = false;

    let letters: Vec<Letter> = (0..q.arrows().len())
        .flat_map(|a| [Letter::direct(a), Letter::inverse(a)])
        .collect();

    struct Walk<'a> {
        p: &'a Presentation,
        letters: &'a [Letter],
        cap: usize,
        strings: &'a mut BTreeSet<StringWord>,
        bands: &'a mut BTreeSet<StringWord>,
        truncated: &'a mut bool,
    }

    fn grow(w: &mut Walk<'_>, path: &mut Vec<Letter>) {
        w.strings.insert(StringWord::Word(path.clone()).canonical());
        let last = *path.last().expect("non-empty");
        if let Some(pos) = path[..path.len() - 1].iter().rposition(|&x| x == last) {
            w.bands.insert(canonical_band(&path[pos + 1..]));
        }
        if path.len() >= w.cap {
            let more = w.letters.iter().any(|&x| may_follow(w.p, last, x));
            *w.truncated |= more;
            return;
        }
        for &next in w.letters {
            if may_follow(w.p, last, next) {
                path.push(next);
                grow(w, path);
                path.pop();
            }
        }
    }

    let mut walk = Walk {
        p,
        letters: &letters,
        cap: cap.max(1),
        strings: &mut strings,
        bands: &mut bands,
        truncated: &mut truncated,
    };
    for &first in &letters {
        grow(&mut walk, &mut vec![first]);
    }
    if truncated && bands.is_empty() {
        return Err(Error::CapExceeded { cap });
    }
    Ok(StringEnumeration {
        strings: strings.into_iter().collect(),
        bands: bands.into_iter().collect(),
        truncated,
    })
}

/// Smallest rotation of the primitive root of the cycle or of its inverse.
fn canonical_band(cycle: &[Letter]) -> StringWord {
    let len = cycle.len();
    let period = (1..=len)
        .find(|&d| len.is_multiple_of(d) && (0..len).all(|i| cycle[i] == cycle[i % d]))
        .unwrap_or(len);
    let root = &cycle[..period];
    let inverse: Vec<Letter> = root.iter().rev().map(|x| x.flipped()).collect();
    let mut best: Option<Vec<Letter>> = None;
    for word in [root.to_vec(), inverse] {
        for r in 0..period {
            let rotated: Vec<Letter> = word[r..].iter().chain(&word[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    StringWord::Word(best.unwrap_or_default())
}

/// Number of indecomposable modules: the canonical strings, provided no band
/// exists.
pub fn count_indecomposables(p: &Presentation) -> Result<usize> {
    let e = enumerate_strings(p, default_cap(p))?;
    if let Some(b) = e.bands.first() {
        return Err(Error::InfiniteType(b.display(p).to_string()));
    }
    Ok(e.strings.len())
}

/// The representation `M(σ)`: one basis vector per traversed vertex (with
/// multiplicity) and identity maps along the letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringModule {
    /// Vertex of each basis vector, in traversal order.
    pub basis: Vec<VertexId>,
    pub dims: Vec<usize>,
    /// `actions[a][r][c]`: entry of arrow `a` as a `dims[tgt] x dims[src]`
    /// matrix over the local bases.
    pub actions: Vec<Vec<Vec<u8>>>,
}

impl StringModule {
    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Every relation `βα` acts as zero.
    pub fn respects_relations(&self, p: &Presentation) -> bool {
        p.relations().iter().all(|&(beta, alpha)| {
            let (b, a) = (&self.actions[beta], &self.actions[alpha]);
            let mid = p.quiver().arrow(alpha).tgt;
            b.iter().all(|row| {
                (0..a.first().map_or(0, Vec::len)).all(|c| {
                    (0..self.dims[mid]).map(|m| u32::from(row[m]) * u32::from(a[m][c])).sum::<u32>()
                        == 0
                })
            })
        })
    }

    pub fn to_json(&self, p: &Presentation) -> StringModuleJson {
        let q = p.quiver();
        StringModuleJson {
            dims: (0..q.vertex_count()).map(|v| ((v + 1).to_string(), self.dims[v])).collect(),
            actions: q
                .arrows()
                .iter()
                .zip(&self.actions)
                .map(|(a, m)| (a.name.clone(), m.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StringModuleJson {
    pub dims: BTreeMap<String, usize>,
    pub actions: BTreeMap<String, Vec<Vec<u8>>>,
}

pub fn string_module(p: &Presentation, w: &StringWord) -> Result<StringModule> {
    if let Some(why) = w.defect(p) {
        return Err(Error::NotAString(why));
    }
    let q = p.quiver();
    let basis = w.vertices(p);
    let mut dims = vec![0usize; q.vertex_count()];
    let local: Vec<usize> = basis
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let mut actions: Vec<Vec<Vec<u8>>> = q
        .arrows()
        .iter()
        .map(|a| vec![vec![0u8; dims[a.src]]; dims[a.tgt]])
        .collect();
    for (k, x) in w.letters().iter().enumerate() {
        // letter k joins basis vectors k and k + 1
        let (from, to) = if x.inverse { (k + 1, k) } else { (k, k + 1) };
        actions[x.arrow][local[to]][local[from]] = 1;
    }
    Ok(StringModule { basis, dims, actions })
}

/// Counts of D-letters (D-arrows and the loop) in a string.
pub fn d_letter_count(p: &Presentation, w: &StringWord) -> usize {
    w.letters()
        .iter()
        .filter(|x| {
            matches!(p.quiver().arrow(x.arrow).kind, Some(ArrowKind::D) | Some(ArrowKind::Loop))
        })
        .count()
}

pub fn contains_loop(p: &Presentation, w: &StringWord) -> bool {
    w.letters().iter().any(|x| p.quiver().arrow(x.arrow).is_loop())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Presentation, Quiver};

    fn lambda_n3() -> Presentation {
        let mut q = Quiver::new(2);
        let w = q.add_arrow("w", 0, 0, Some(ArrowKind::Loop)).unwrap();
        q.add_arrow("a", 0, 1, Some(ArrowKind::T)).unwrap();
        Presentation::new(q, [(w, w)]).unwrap()
    }

    fn names(p: &Presentation, e: &StringEnumeration) -> BTreeSet<String> {
        e.strings.iter().map(|s| s.display(p).to_string()).collect()
    }

    #[test]
    fn rank_three_strings() {
        let p = lambda_n3();
        let e = enumerate_strings(&p, default_cap(&p)).unwrap();
        assert!(!e.has_bands());
        assert_eq!(e.strings.len(), 7);
        // each written up to inversion; compare against both readings
        let expected = [
            vec!["e1"],
            vec!["e2"],
            vec!["a"],
            vec!["w"],
            vec!["a", "w"],
            vec!["a", "w^-1"],
            vec!["a", "w", "a^-1"],
        ];
        for word in expected {
            let found = e.strings.iter().any(|s| {
                s.names(&p) == word || s.inverse().names(&p) == word
            });
            assert!(found, "{word:?} missing from {:?}", names(&p, &e));
        }
        assert_eq!(count_indecomposables(&p).unwrap(), 7);
    }

    #[test]
    fn rank_two_and_linear() {
        let mut q = Quiver::new(1);
        let w = q.add_arrow("w", 0, 0, Some(ArrowKind::Loop)).unwrap();
        let p = Presentation::new(q, [(w, w)]).unwrap();
        assert_eq!(count_indecomposables(&p).unwrap(), 2);
        let a3 = Presentation::without_relations(Quiver::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(count_indecomposables(&a3).unwrap(), 6);
    }

    #[test]
    fn kronecker_has_a_band() {
        let p = Presentation::without_relations(Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap());
        let e = enumerate_strings(&p, 8).unwrap();
        assert!(e.truncated);
        assert_eq!(e.bands.len(), 1);
        assert_eq!(e.bands[0].len(), Some(2));
        assert!(matches!(count_indecomposables(&p), Err(Error::InfiniteType(_))));
    }

    #[test]
    fn tiny_cap_without_band() {
        let a4 = Presentation::without_relations(
            Quiver::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
        );
        assert_eq!(enumerate_strings(&a4, 1), Err(Error::CapExceeded { cap: 1 }));
        assert_eq!(enumerate_strings(&a4, 3).unwrap().strings.len(), 10);
    }

    #[test]
    fn modules() {
        let p = lambda_n3();
        let (w, a) = (0, 1);
        let simple = string_module(&p, &StringWord::Trivial(1)).unwrap();
        assert_eq!(simple.dims, vec![0, 1]);
        // a w a^-1: traversal a^-1, w, a
        let s = StringWord::from_letters(vec![Letter::inverse(a), Letter::direct(w), Letter::direct(a)]);
        let m = string_module(&p, &s).unwrap();
        assert_eq!(m.basis, vec![1, 0, 0, 1]);
        assert_eq!(m.dims, vec![2, 2]);
        assert_eq!(m.total_dim(), s.len().unwrap() + 1);
        assert!(m.respects_relations(&p));
        // w a^-1
        let s = StringWord::from_letters(vec![Letter::inverse(a), Letter::direct(w)]);
        assert_eq!(string_module(&p, &s).unwrap().dims, vec![2, 1]);
        // w w is not a string
        let bad = StringWord::from_letters(vec![Letter::direct(w), Letter::direct(w)]);
        assert!(matches!(string_module(&p, &bad), Err(Error::NotAString(_))));
        let back = StringWord::from_letters(vec![Letter::direct(a), Letter::inverse(a)]);
        assert!(!back.is_string_of(&p));
    }

    #[test]
    fn canonical_form() {
        let s = StringWord::from_letters(vec![Letter::inverse(1), Letter::direct(0)]);
        let c = s.canonical();
        assert_eq!(c.canonical(), c);
        assert_eq!(s.inverse().canonical(), c);
        assert_eq!(StringWord::Trivial(3).canonical(), StringWord::Trivial(3));
    }

    #[test]
    fn json_shape() {
        let p = lambda_n3();
        let s = StringWord::from_letters(vec![Letter::inverse(1), Letter::direct(0)]);
        assert_eq!(s.to_json(&p), serde_json::json!(["w", "a^-1"]));
        let m = string_module(&p, &s).unwrap();
        let j = serde_json::to_value(m.to_json(&p)).unwrap();
        assert_eq!(j["dims"], serde_json::json!({"1": 2, "2": 1}));
        assert_eq!(j["actions"]["a"], serde_json::json!([[1, 0]]));
    }
}
