use super::{canonicalize, hom_basis, is_string, HomPair, StringWord, Substring, Walk};
use crate::quiver::GentleQuiver;

/// An epimorphism `⊕ M(ρᵢ) ↠ M(target)` whose components are hom-basis
/// elements; sources are listed in cover order along the target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinEpi {
    pub sources: Vec<(StringWord, HomPair)>,
    pub target: StringWord,
}

impl MinEpi {
    pub fn source_strings(&self) -> Vec<StringWord> {
        self.sources.iter().map(|(s, _)| s.clone()).collect()
    }

    /// Whether this is an isomorphism onto the target.
    pub fn is_identity(&self) -> bool {
        self.sources.len() == 1 && self.sources[0].0 == self.target
    }
}

fn covers(parts: &[Substring], k: usize) -> bool {
    let mut sorted = parts.to_vec();
    sorted.sort();
    let mut reach: Option<usize> = None;
    for p in sorted {
        match reach {
            None if p.start != 0 => return false,
            Some(r) if p.start > r => return false,
            _ => {}
        }
        reach = Some(reach.map_or(p.end, |r| r.max(p.end)));
    }
    reach == Some(k)
}

/// Whether the positioned substrings cover `μ` by overlapping pieces and
/// no proper subfamily does.
pub fn is_reduced_cover(parts: &[Substring], mu: &StringWord) -> bool {
    let k = mu.len();
    if parts.iter().any(|p| p.end > k) || !covers(parts, k) {
        return false;
    }
    (0..parts.len()).all(|i| {
        let rest: Vec<Substring> =
            parts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
        rest.is_empty() || !covers(&rest, k)
    })
}

/// All epimorphisms onto `b` from at most `max_sources` pool members whose
/// components are hom-basis elements forming a reduced cover and whose
/// kernel shares no summand with the source.
pub fn minimal_epis_onto(
    q: &GentleQuiver,
    b: &StringWord,
    pool: &[StringWord],
    max_sources: usize,
) -> Vec<MinEpi> {
    reduced_epis_onto(q, b, pool, max_sources)
        .into_iter()
        .filter(|e| {
            let kernel = kernel_of_min_epi(q, e);
            e.sources.iter().all(|(s, _)| !kernel.contains(s))
        })
        .collect()
}

/// Like [`minimal_epis_onto`] without the kernel condition.
pub fn reduced_epis_onto(
    q: &GentleQuiver,
    b: &StringWord,
    pool: &[StringWord],
    max_sources: usize,
) -> Vec<MinEpi> {
    let mut cands: Vec<(Substring, StringWord, HomPair)> = Vec::new();
    for a in pool {
        for h in hom_basis(q, a, b) {
            cands.push((h.bottom, a.clone(), h));
        }
    }
    cands.sort();
    let k = b.len();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    extend_cover(&cands, k, max_sources, 0, None, &mut chosen, &mut |sel| {
        let parts: Vec<Substring> = sel.iter().map(|&i| cands[i].0).collect();
        let target = b.clone();
        if is_reduced_cover(&parts, &target) {
            out.push(MinEpi {
                sources: sel.iter().map(|&i| (cands[i].1.clone(), cands[i].2)).collect(),
                target,
            });
        }
    });
    out.sort();
    out
}

/// Depth-first search over candidate parts sorted by start position; each
/// new part must overlap the covered prefix and extend it.
fn extend_cover(
    cands: &[(Substring, StringWord, HomPair)],
    k: usize,
    max: usize,
    from: usize,
    reach: Option<usize>,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if reach == Some(k) {
        emit(chosen);
        return;
    }
    if chosen.len() == max {
        return;
    }
    for i in from..cands.len() {
        let p = cands[i].0;
        let ok = match reach {
            None => p.start == 0,
            Some(r) => p.start <= r && p.end > r,
        };
        if ok {
            chosen.push(i);
            extend_cover(cands, k, max, i + 1, Some(p.end), chosen, emit);
            chosen.pop();
        }
    }
}

/// A source walk oriented along the target, with its top substring.
fn oriented(q: &GentleQuiver, s: &StringWord, h: &HomPair) -> (Walk, Substring) {
    if h.flip {
        (s.walk().inverse(q), h.top.mirrored(s.len()))
    } else {
        (s.walk().clone(), h.top)
    }
}

/// The kernel of an epimorphism given by a reduced cover, as a sorted
/// multiset of strings.
pub fn kernel_of_min_epi(q: &GentleQuiver, e: &MinEpi) -> Vec<StringWord> {
    let b = e.target.walk();
    let pieces: Vec<(Walk, Substring, Substring)> = e
        .sources
        .iter()
        .map(|(s, h)| {
            let (w, top) = oriented(q, s, h);
            (w, top, h.bottom)
        })
        .collect();
    let mut out = Vec::new();
    let (first, first_top, _) = &pieces[0];
    if first_top.start > 0 {
        out.push(first.slice(q, 0, first_top.start - 1));
    }
    let (last, last_top, _) = &pieces[pieces.len() - 1];
    if last_top.end < last.len() {
        out.push(last.slice(q, last_top.end + 1, last.len()));
    }
    for pair in pieces.windows(2) {
        let (wi, topi, boti) = &pair[0];
        let (wj, topj, botj) = &pair[1];
        assert!(botj.start <= boti.end, "cover pieces do not overlap");
        let glued = wj
            .slice(q, 0, topj.start)
            .concat(q, &b.slice(q, botj.start, boti.end))
            .concat(q, &wi.slice(q, topi.end, wi.len()));
        out.push(glued);
    }
    let mut out: Vec<StringWord> = out
        .into_iter()
        .map(|w| {
            debug_assert!(is_string(q, &w), "kernel piece is not a string");
            canonicalize(q, &w)
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::fixtures::*;
    use crate::strings::enumerate_strings;

    fn s(q: &GentleQuiver, t: &str) -> StringWord {
        StringWord::parse(q, t).unwrap()
    }

    #[test]
    fn cover_shapes() {
        let q = a3();
        let mu = s(&q, "a+ b+");
        let whole = Substring { start: 0, end: 2 };
        assert!(is_reduced_cover(&[whole], &mu));
        let left = Substring { start: 0, end: 0 };
        let right = Substring { start: 2, end: 2 };
        assert!(!is_reduced_cover(&[left, right], &mu));
        let l2 = Substring { start: 0, end: 1 };
        let r2 = Substring { start: 1, end: 2 };
        assert!(is_reduced_cover(&[l2, r2], &mu));
        assert!(!is_reduced_cover(&[l2, r2, whole], &mu));
    }

    #[test]
    fn a2_epi_onto_simple() {
        let q = a2();
        let epis = minimal_epis_onto(&q, &s(&q, "e(1)"), &[s(&q, "a+")], 2);
        assert_eq!(epis.len(), 1);
        assert_eq!(kernel_of_min_epi(&q, &epis[0]), vec![s(&q, "e(2)")]);
    }

    #[test]
    fn a3_projective_onto_alpha() {
        let q = a3();
        let epis = minimal_epis_onto(&q, &s(&q, "a+"), &[s(&q, "a+ b+")], 2);
        assert_eq!(epis.len(), 1);
        assert_eq!(kernel_of_min_epi(&q, &epis[0]), vec![s(&q, "e(3)")]);
    }

    #[test]
    fn sink_two_cover() {
        let q = sink();
        let full = s(&q, "a+ b-");
        let epis = minimal_epis_onto(&q, &full, &[s(&q, "a+"), s(&q, "b+")], 2);
        assert_eq!(epis.len(), 1);
        assert_eq!(epis[0].sources.len(), 2);
        assert_eq!(kernel_of_min_epi(&q, &epis[0]), vec![s(&q, "e(2)")]);
    }

    #[test]
    fn projective_pool_of_itself_gives_identity() {
        let q = a3();
        let p1 = s(&q, "a+ b+");
        let epis = minimal_epis_onto(&q, &p1, std::slice::from_ref(&p1), 2);
        assert_eq!(epis.len(), 1);
        assert!(epis[0].is_identity());
        assert!(kernel_of_min_epi(&q, &epis[0]).is_empty());
    }

    #[test]
    fn kernel_dimension_balance() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            let all = enumerate_strings(&q).unwrap();
            for b in &all {
                for e in minimal_epis_onto(&q, b, &all, 3) {
                    let src: usize = e.sources.iter().map(|(x, _)| x.len() + 1).sum();
                    let ker: usize = kernel_of_min_epi(&q, &e).iter().map(|x| x.len() + 1).sum();
                    assert_eq!(src, b.len() + 1 + ker);
                }
            }
        }
    }
}
