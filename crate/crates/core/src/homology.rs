//! Projective strings, covers, syzygies and projective resolutions.

use std::fmt;

use crate::error::Error;
use crate::quiver::{ArrowId, GentleQuiver, Letter, VertexId};
use crate::strings::{canonicalize, enumerate_strings, hom_basis, kernel_of_min_epi, MinEpi, StringWord, Substring, Walk};

/// Projective (or global) dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => write!(f, "infinite"),
        }
    }
}

fn maximal_free_path(q: &GentleQuiver, first: ArrowId) -> Vec<ArrowId> {
    let mut path = vec![first];
    while let Some(next) = q.free_successor(*path.last().unwrap()) {
        path.push(next);
    }
    path
}

/// The string `p q⁻¹` of the projective at `v`, where `p` and `q` are the
/// maximal relation-free paths leaving `v`.
pub fn projective_string(q: &GentleQuiver, v: VertexId) -> StringWord {
    let out = q.outgoing(v);
    let mut letters: Vec<Letter> = Vec::new();
    if let Some(&b) = out.get(1) {
        letters.extend(maximal_free_path(q, b).into_iter().rev().map(Letter::inverse_of));
    }
    if let Some(&a) = out.first() {
        letters.extend(maximal_free_path(q, a).into_iter().map(Letter::direct));
    }
    let w = Walk::new(q, if letters.is_empty() { v } else { q.letter_start(letters[0]) }, letters)
        .expect("projective walk does not compose");
    canonicalize(q, &w)
}

/// Projective strings indexed by vertex.
pub fn projective_strings(q: &GentleQuiver) -> Vec<StringWord> {
    q.vertex_ids().map(|v| projective_string(q, v)).collect()
}

pub fn is_projective(q: &GentleQuiver, s: &StringWord) -> bool {
    q.vertex_ids().any(|v| projective_string(q, v) == *s)
}

/// Positions of `s` spanning the top of `M(s)`.
fn peaks(s: &StringWord) -> Vec<usize> {
    let l = s.walk().letters();
    (0..=l.len())
        .filter(|&i| (i == 0 || l[i - 1].inverse) && (i == l.len() || !l[i].inverse))
        .collect()
}

/// The projective cover of `M(s)`: one projective per top position, each
/// mapping onto the descending substring around that position.
pub fn projective_cover(q: &GentleQuiver, s: &StringWord) -> MinEpi {
    let l = s.walk().letters();
    let verts = s.walk().vertices(q);
    let mut sources = Vec::new();
    for i in peaks(s) {
        let mut end = i;
        while end < l.len() && !l[end].inverse {
            end += 1;
        }
        let mut start = i;
        while start > 0 && l[start - 1].inverse {
            start -= 1;
        }
        let image = Substring { start, end };
        let p = projective_string(q, verts[i]);
        let h = hom_basis(q, &p, s)
            .into_iter()
            .find(|h| h.bottom == image)
            .expect("projective does not reach its image");
        sources.push((p, h));
    }
    MinEpi { sources, target: s.clone() }
}

/// `Ω(M(s))` as a sorted multiset; empty iff `s` is projective.
pub fn syzygy(q: &GentleQuiver, s: &StringWord) -> Vec<StringWord> {
    kernel_of_min_epi(q, &projective_cover(q, s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjResolution {
    pub target: StringWord,
    /// Term `i` is the projective cover of the `i`-th syzygy.
    pub terms: Vec<Vec<StringWord>>,
}

impl ProjResolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }
}

/// Minimal projective resolution; fails once more than `cap + 1` terms
/// would be needed.
pub fn min_proj_resolution(q: &GentleQuiver, s: &StringWord, cap: usize) -> Result<ProjResolution, Error> {
    let mut terms = Vec::new();
    let mut current = vec![s.clone()];
    while !current.is_empty() {
        if terms.len() > cap {
            return Err(Error::CapExceeded(cap));
        }
        let mut term = Vec::new();
        let mut next = Vec::new();
        for x in &current {
            let cover = projective_cover(q, x);
            term.extend(cover.source_strings());
            next.extend(kernel_of_min_epi(q, &cover));
        }
        term.sort();
        next.sort();
        terms.push(term);
        current = next;
    }
    Ok(ProjResolution { target: s.clone(), terms })
}

/// The syzygy chain `Ω¹, Ω², ...` up to the first empty one.
pub fn syzygy_chain(q: &GentleQuiver, s: &StringWord, cap: usize) -> Result<Vec<Vec<StringWord>>, Error> {
    let mut out = Vec::new();
    let mut current = vec![s.clone()];
    loop {
        let next: Vec<StringWord> = {
            let mut n: Vec<StringWord> = current.iter().flat_map(|x| syzygy(q, x)).collect();
            n.sort();
            n
        };
        if next.is_empty() {
            return Ok(out);
        }
        if out.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        out.push(next.clone());
        current = next;
    }
}

pub fn default_cap(q: &GentleQuiver) -> Result<usize, Error> {
    Ok(enumerate_strings(q)?.len() + 1)
}

pub fn pdim(q: &GentleQuiver, s: &StringWord) -> Result<Dim, Error> {
    match min_proj_resolution(q, s, default_cap(q)?) {
        Ok(r) => Ok(Dim::Finite(r.length())),
        Err(Error::CapExceeded(_)) => Ok(Dim::Infinite),
        Err(e) => Err(e),
    }
}

/// Maximum of `pdim` over all indecomposables.
pub fn gldim(q: &GentleQuiver) -> Result<Dim, Error> {
    let mut best = Dim::Finite(0);
    for s in enumerate_strings(q)? {
        best = best.max(pdim(q, &s)?);
        if best == Dim::Infinite {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::fixtures::*;

    fn s(q: &GentleQuiver, t: &str) -> StringWord {
        StringWord::parse(q, t).unwrap()
    }

    fn v(q: &GentleQuiver, name: &str) -> VertexId {
        q.vertex_by_name(name).unwrap()
    }

    #[test]
    fn projective_strings_examples() {
        let q = a2();
        assert_eq!(projective_string(&q, v(&q, "1")), s(&q, "a+"));
        let q3 = a3();
        assert_eq!(projective_string(&q3, v(&q3, "1")), s(&q3, "a+ b+"));
        let r = a3_rel();
        assert_eq!(projective_string(&r, v(&r, "1")), s(&r, "a+"));
        assert!(is_projective(&q3, &s(&q3, "e(3)")));
        assert!(!is_projective(&q, &s(&q, "e(1)")));
        assert!(is_projective(&q, &s(&q, "a+")));
    }

    #[test]
    fn covers() {
        let q = a2();
        assert_eq!(projective_cover(&q, &s(&q, "e(1)")).source_strings(), vec![s(&q, "a+")]);
        let q3 = a3();
        assert_eq!(projective_cover(&q3, &s(&q3, "a+")).source_strings(), vec![s(&q3, "a+ b+")]);
        let k = sink();
        let c = projective_cover(&k, &s(&k, "a+ b-"));
        assert_eq!(c.source_strings(), vec![s(&k, "a+"), s(&k, "b+")]);
    }

    #[test]
    fn syzygies() {
        let q = a2();
        assert_eq!(syzygy(&q, &s(&q, "e(1)")), vec![s(&q, "e(2)")]);
        let q3 = a3();
        assert_eq!(syzygy(&q3, &s(&q3, "e(1)")), vec![s(&q3, "b+")]);
        for p in projective_strings(&q3) {
            assert!(syzygy(&q3, &p).is_empty());
        }
    }

    #[test]
    fn resolutions() {
        let r = a3_rel();
        let res = min_proj_resolution(&r, &s(&r, "e(1)"), 10).unwrap();
        assert_eq!(res.terms, vec![vec![s(&r, "a+")], vec![s(&r, "b+")], vec![s(&r, "e(3)")]]);
        assert_eq!(res.length(), 2);
        let q = a2();
        let res = min_proj_resolution(&q, &s(&q, "e(1)"), 10).unwrap();
        assert_eq!(res.terms, vec![vec![s(&q, "a+")], vec![s(&q, "e(2)")]]);
        let p = min_proj_resolution(&q, &s(&q, "a+"), 10).unwrap();
        assert_eq!(p.length(), 0);
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(gldim(&a3_rel()).unwrap(), Dim::Finite(2));
        assert_eq!(gldim(&a2()).unwrap(), Dim::Finite(1));
        let cyc = crate::quiver::parse_quiver(
            "vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3; c: 3 -> 1\nrelations: b a; c b; a c\n",
        )
        .unwrap();
        assert_eq!(gldim(&cyc).unwrap(), Dim::Infinite);
        assert!(matches!(
            min_proj_resolution(&cyc, &s(&cyc, "e(1)"), 5),
            Err(Error::CapExceeded(5))
        ));
    }
}
