//! Walks, strings and their positioned substrings.
//!
//! A walk is stored as its start vertex plus a letter sequence; vertex
//! positions along a walk are numbered `0..=len`, letter `i` joining
//! positions `i` and `i + 1`. Substrings are vertex-position intervals.

mod epi;
mod ext;
mod hom;

pub use epi::{is_reduced_cover, kernel_of_min_epi, minimal_epis_onto, reduced_epis_onto, MinEpi};
pub use ext::{arrow_extensions, ext_basis, overlap_extensions, ExtKind, ShortExactSeq};
pub use hom::{hom_basis, HomPair};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::quiver::{GentleQuiver, Letter, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    letters: Vec<Letter>,
    start: VertexId,
}

impl Walk {
    pub fn lazy(v: VertexId) -> Self {
        Walk { letters: Vec::new(), start: v }
    }

    /// Builds a walk from composable letters; `None` if empty or not composable.
    pub fn from_letters(q: &GentleQuiver, letters: Vec<Letter>) -> Option<Self> {
        let start = q.letter_start(*letters.first()?);
        let w = Walk { letters, start };
        w.is_composable(q).then_some(w)
    }

    pub fn new(q: &GentleQuiver, start: VertexId, letters: Vec<Letter>) -> Option<Self> {
        if letters.is_empty() {
            return Some(Walk::lazy(start));
        }
        if q.letter_start(letters[0]) != start {
            return None;
        }
        Walk::from_letters(q, letters)
    }

    fn is_composable(&self, q: &GentleQuiver) -> bool {
        self.letters.windows(2).all(|w| q.letter_end(w[0]) == q.letter_start(w[1]))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self, q: &GentleQuiver) -> VertexId {
        self.letters.last().map_or(self.start, |&l| q.letter_end(l))
    }

    /// The vertex sequence `v0 .. vk`.
    pub fn vertices(&self, q: &GentleQuiver) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        out.push(self.start);
        out.extend(self.letters.iter().map(|&l| q.letter_end(l)));
        out
    }

    pub fn inverse(&self, q: &GentleQuiver) -> Walk {
        Walk { letters: self.letters.iter().rev().map(|l| l.inv()).collect(), start: self.end(q) }
    }

    /// The sub-walk between vertex positions `a <= b`.
    pub fn slice(&self, q: &GentleQuiver, a: usize, b: usize) -> Walk {
        assert!(a <= b && b <= self.letters.len());
        let start = if a == 0 { self.start } else { q.letter_end(self.letters[a - 1]) };
        Walk { letters: self.letters[a..b].to_vec(), start }
    }

    /// `self` followed by `other`; the walks must meet.
    pub fn concat(&self, q: &GentleQuiver, other: &Walk) -> Walk {
        assert_eq!(self.end(q), other.start, "walks do not meet");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Walk { letters, start: self.start }
    }

    /// `self` followed by one more letter.
    pub fn push(&self, q: &GentleQuiver, l: Letter) -> Walk {
        assert_eq!(self.end(q), q.letter_start(l), "letter does not compose");
        let mut letters = self.letters.clone();
        letters.push(l);
        Walk { letters, start: self.start }
    }

    pub fn to_text(&self, q: &GentleQuiver) -> String {
        if self.letters.is_empty() {
            return format!("e({})", q.vertex_name(self.start));
        }
        self.letters
            .iter()
            .map(|l| format!("{}{}", q.arrow_name(l.arrow), if l.inverse { '-' } else { '+' }))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Reduced and relation-avoiding in both reading directions.
pub fn is_string(q: &GentleQuiver, w: &Walk) -> bool {
    if let Some(&first) = w.letters.first() {
        if q.letter_start(first) != w.start {
            return false;
        }
    }
    w.letters.windows(2).all(|p| q.can_follow(p[0], p[1]))
}

/// A string in canonical orientation; stands for one string module.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringWord(Walk);

impl StringWord {
    pub fn walk(&self) -> &Walk {
        &self.0
    }

    pub fn lazy(v: VertexId) -> Self {
        StringWord(Walk::lazy(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.0.is_lazy()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Both orientation representatives, deduplicated.
    pub fn orientations(&self, q: &GentleQuiver) -> Vec<Walk> {
        let inv = self.0.inverse(q);
        if inv == self.0 {
            vec![self.0.clone()]
        } else {
            vec![self.0.clone(), inv]
        }
    }

    pub fn to_text(&self, q: &GentleQuiver) -> String {
        self.0.to_text(q)
    }

    /// Parses `"a+ b-"` or `"e(v)"` and canonicalizes.
    pub fn parse(q: &GentleQuiver, text: &str) -> Result<Self, Error> {
        let bad = |reason: &str| Error::BadString { text: text.to_string(), reason: reason.into() };
        let t = text.trim();
        if let Some(inner) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let v = q.vertex_by_name(inner).ok_or_else(|| bad("unknown vertex"))?;
            return Ok(StringWord::lazy(v));
        }
        let mut letters = Vec::new();
        for tok in t.split_whitespace() {
            let (name, inverse) = if let Some(n) = tok.strip_suffix('+') {
                (n, false)
            } else if let Some(n) = tok.strip_suffix('-') {
                (n, true)
            } else {
                return Err(bad("letters must end in '+' or '-'"));
            };
            let arrow = q.arrow_by_name(name).ok_or_else(|| bad("unknown arrow"))?;
            letters.push(Letter { arrow, inverse });
        }
        let w = Walk::from_letters(q, letters).ok_or_else(|| bad("letters do not compose"))?;
        if !is_string(q, &w) {
            return Err(bad("walk is not reduced or passes through a relation"));
        }
        Ok(canonicalize(q, &w))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e[{}]", self.start.0);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "#{}{}", l.arrow.0, if l.inverse { '-' } else { '+' })?;
        }
        Ok(())
    }
}

/// The lexicographically smaller of `w` and its inverse.
pub fn canonicalize(q: &GentleQuiver, w: &Walk) -> StringWord {
    debug_assert!(is_string(q, w));
    let inv = w.inverse(q);
    if inv.letters < w.letters {
        StringWord(inv)
    } else {
        StringWord(w.clone())
    }
}

/// All strings of a representation-finite gentle quiver, sorted.
pub fn enumerate_strings(q: &GentleQuiver) -> Result<Vec<StringWord>, Error> {
    if !q.is_representation_finite() {
        return Err(Error::NotRepFinite);
    }
    let mut out: BTreeSet<StringWord> = q.vertex_ids().map(StringWord::lazy).collect();
    let mut stack: Vec<Walk> = q
        .all_letters()
        .into_iter()
        .map(|l| Walk { letters: vec![l], start: q.letter_start(l) })
        .collect();
    while let Some(w) = stack.pop() {
        let last = *w.letters.last().unwrap();
        for next in q.letters_from(q.letter_end(last)) {
            if q.can_follow(last, next) {
                stack.push(w.push(q, next));
            }
        }
        out.insert(canonicalize(q, &w));
    }
    Ok(out.into_iter().collect())
}

/// Multiplicity of every vertex along the string.
pub fn dim_vector(q: &GentleQuiver, s: &StringWord) -> Vec<usize> {
    let mut d = vec![0; q.num_vertices()];
    for v in s.0.vertices(q) {
        d[v.0] += 1;
    }
    d
}

pub fn total_dim(s: &StringWord) -> usize {
    s.len() + 1
}

/// A positioned substring: vertex positions `start..=end` of a parent walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substring {
    pub start: usize,
    pub end: usize,
}

impl Substring {
    pub fn is_lazy(&self) -> bool {
        self.start == self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same positions read on the inverse of a parent of length `k`.
    pub fn mirrored(&self, k: usize) -> Substring {
        Substring { start: k - self.end, end: k - self.start }
    }
}

/// Whether the letters bordering `[a, b]` in `w` both point away from it.
pub fn is_on_top(w: &Walk, sub: Substring) -> bool {
    let l = w.letters();
    (sub.start == 0 || l[sub.start - 1].inverse) && (sub.end == l.len() || !l[sub.end].inverse)
}

/// Whether the letters bordering `[a, b]` in `w` both point into it.
pub fn is_at_bottom(w: &Walk, sub: Substring) -> bool {
    let l = w.letters();
    (sub.start == 0 || !l[sub.start - 1].inverse) && (sub.end == l.len() || l[sub.end].inverse)
}

pub(crate) fn substrings_where(w: &Walk, pred: impl Fn(&Walk, Substring) -> bool) -> Vec<Substring> {
    let k = w.len();
    let mut out = Vec::new();
    for start in 0..=k {
        for end in start..=k {
            let s = Substring { start, end };
            if pred(w, s) {
                out.push(s);
            }
        }
    }
    out
}

pub fn top_substrings(s: &StringWord) -> Vec<Substring> {
    substrings_where(&s.0, is_on_top)
}

pub fn bottom_substrings(s: &StringWord) -> Vec<Substring> {
    substrings_where(&s.0, is_at_bottom)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::quiver::{parse_quiver, GentleQuiver};

    pub fn a2() -> GentleQuiver {
        parse_quiver("vertices: 1 2\narrows: a: 1 -> 2\nrelations:").unwrap()
    }

    pub fn a3() -> GentleQuiver {
        parse_quiver("vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3\nrelations:").unwrap()
    }

    pub fn a3_rel() -> GentleQuiver {
        parse_quiver("vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3\nrelations: b a").unwrap()
    }

    pub fn sink() -> GentleQuiver {
        parse_quiver("vertices: 1 2 3\narrows: a: 1 -> 2; b: 3 -> 2\nrelations:").unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn s(q: &GentleQuiver, t: &str) -> StringWord {
        StringWord::parse(q, t).unwrap()
    }

    #[test]
    fn is_string_examples() {
        let q = a3();
        let w = Walk::from_letters(&q, vec![Letter::direct(q.arrow_by_name("a").unwrap()), Letter::direct(q.arrow_by_name("b").unwrap())]).unwrap();
        assert!(is_string(&q, &w));
        let r = a3_rel();
        assert!(!is_string(&r, &w));
        let a = q.arrow_by_name("a").unwrap();
        let back = Walk::from_letters(&q, vec![Letter::direct(a), Letter::inverse_of(a)]).unwrap();
        assert!(!is_string(&q, &back));
    }

    #[test]
    fn canonical_forms() {
        let q = a2();
        assert_eq!(s(&q, "a+"), s(&q, "a-"));
        assert_eq!(s(&q, "a-").to_text(&q), "a+");
        assert_eq!(s(&q, "e(1)").to_text(&q), "e(1)");
        let k = sink();
        assert_eq!(s(&k, "b+ a-"), s(&k, "a+ b-"));
        assert_eq!(s(&k, "b+ a-").to_text(&k), "a+ b-");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_strings(&a2()).unwrap().len(), 3);
        assert_eq!(enumerate_strings(&a3()).unwrap().len(), 6);
        let r = a3_rel();
        let all = enumerate_strings(&r).unwrap();
        assert_eq!(all.len(), 5);
        assert!(StringWord::parse(&r, "a+ b+").is_err());
    }

    #[test]
    fn kronecker_is_gated() {
        let q = crate::quiver::parse_quiver("vertices: 1 2\narrows: a: 1 -> 2; b: 1 -> 2\nrelations:").unwrap();
        assert_eq!(enumerate_strings(&q), Err(Error::NotRepFinite));
    }

    #[test]
    fn dim_vectors() {
        let q = a2();
        assert_eq!(dim_vector(&q, &s(&q, "e(1)")), vec![1, 0]);
        assert_eq!(dim_vector(&q, &s(&q, "a+")), vec![1, 1]);
        let q3 = a3();
        assert_eq!(dim_vector(&q3, &s(&q3, "a+ b+")), vec![1, 1, 1]);
    }

    #[test]
    fn top_and_bottom_of_alpha() {
        let q = a2();
        let alpha = s(&q, "a+");
        let tops = top_substrings(&alpha);
        assert_eq!(tops, vec![Substring { start: 0, end: 0 }, Substring { start: 0, end: 1 }]);
        let bottoms = bottom_substrings(&alpha);
        assert_eq!(bottoms, vec![Substring { start: 0, end: 1 }, Substring { start: 1, end: 1 }]);
        assert_eq!(top_substrings(&s(&q, "e(2)")), vec![Substring { start: 0, end: 0 }]);
    }

    #[test]
    fn parse_rejects_garbage() {
        let q = a2();
        assert!(StringWord::parse(&q, "z+").is_err());
        assert!(StringWord::parse(&q, "a").is_err());
        assert!(StringWord::parse(&q, "e(9)").is_err());
        assert!(StringWord::parse(&q, "a+ a+").is_err());
    }
}
