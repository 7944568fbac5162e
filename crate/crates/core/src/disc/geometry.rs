//! Kernels, extensions and syzygies computed on chords.

use super::accordion::{Accordion, DiscModel};
use super::chords::{chords_cross, offset, strictly_between};
use crate::error::Error;
use crate::homology::projective_cover;
use crate::strings::ExtKind;

/// A nonsplit extension with quotient `δ` and sub `η`, as middle chords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoExtension {
    pub kind: ExtKind,
    pub middle: Vec<Accordion>,
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn shared_end(a: &Accordion, b: &Accordion) -> Option<usize> {
    [a.ends.0, a.ends.1].into_iter().find(|&p| b.has_end(p))
}

/// Middle chords must be accordions whose crossed arcs add up to those of
/// the two ends.
fn middle_of(m: &DiscModel, chords: &[(usize, usize)], d: &Accordion, e: &Accordion) -> Option<Vec<Accordion>> {
    let mut mid = Vec::new();
    for &(a, b) in chords {
        mid.push(m.accordion_with_ends(a, b)?.clone());
    }
    let mut lhs: Vec<_> = d.crossings.iter().chain(&e.crossings).copied().collect();
    let mut rhs: Vec<_> = mid.iter().flat_map(|a| a.crossings.iter().copied()).collect();
    lhs.sort();
    rhs.sort();
    if lhs != rhs {
        return None;
    }
    mid.sort();
    Some(mid)
}

/// Extensions of `δ` by `η`. Crossing chords smooth into the pair joining
/// each end of `δ` to the end of `η` just counterclockwise of it; chords
/// with a common end glue into the chord through their other ends when `η`
/// comes first clockwise at that end.
pub fn geo_extensions(m: &DiscModel, d: &Accordion, e: &Accordion) -> Vec<GeoExtension> {
    let n = m.disc().size();
    if chords_cross(n, d.ends, e.ends) {
        let before = |p: usize| {
            if strictly_between(n, e.ends.0, p, e.ends.1) {
                e.ends.1
            } else {
                e.ends.0
            }
        };
        let chords = [sorted(d.ends.0, before(d.ends.0)), sorted(d.ends.1, before(d.ends.1))];
        return middle_of(m, &chords, d, e)
            .map(|middle| GeoExtension { kind: ExtKind::Overlap, middle })
            .into_iter()
            .collect();
    }
    let Some(p) = shared_end(d, e) else {
        return Vec::new();
    };
    let (x, y) = (d.other_end(p), e.other_end(p));
    if x == y || offset(n, p, y) > offset(n, p, x) {
        return Vec::new();
    }
    middle_of(m, &[sorted(x, y)], d, e)
        .map(|middle| GeoExtension { kind: ExtKind::Arrow, middle })
        .into_iter()
        .collect()
}

/// The two ends of a source on either side of `η = (e1, e2)`: first the one
/// on the clockwise run from `e1` to `e2`, then the other. A source sharing
/// `e1` or `e2` uses it on the matching side.
fn sides(n: usize, (e1, e2): (usize, usize), s: &Accordion) -> (usize, usize) {
    let (a, b) = s.ends;
    if a == e1 || b == e1 {
        return (e1, s.other_end(e1));
    }
    if a == e2 || b == e2 {
        return (s.other_end(e2), e2);
    }
    if strictly_between(n, e1, e2, a) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Kernel of a minimal epimorphism from `sources` onto `eta`, each source
/// meeting `eta` once. Sources are ordered along `eta` from its first end;
/// the kernel chords join each source to the next across `eta`, and the
/// outer sources to the ends of `eta`.
pub fn geo_kernel(m: &DiscModel, sources: &[Accordion], eta: &Accordion) -> Result<Vec<Accordion>, Error> {
    if sources.is_empty() {
        return Err(Error::BadDisc("a cover needs at least one source".into()));
    }
    let n = m.disc().size();
    let (e1, e2) = eta.ends;
    let mut sd: Vec<(usize, usize)> = sources.iter().map(|s| sides(n, eta.ends, s)).collect();
    sd.sort_by_key(|&(a, b)| (offset(n, e1, a), std::cmp::Reverse(offset(n, e1, b))));
    let mut chords = vec![(e1, sd[0].0)];
    for w in sd.windows(2) {
        chords.push((w[0].1, w[1].0));
    }
    chords.push((sd[sd.len() - 1].1, e2));
    let mut out = Vec::new();
    for (a, b) in chords.into_iter().filter(|(a, b)| a != b) {
        match m.accordion_with_ends(a, b) {
            Some(k) => out.push(k.clone()),
            None => return Err(Error::BadDisc(format!("kernel chord ({a}, {b}) is not an accordion"))),
        }
    }
    out.sort();
    Ok(out)
}

/// The syzygies of `η` as chords: each step covers the current chords by
/// their projective covers and keeps the kernel chords, until only
/// projectives remain.
pub fn geo_syzygy_fan(m: &DiscModel, eta: &Accordion, cap: usize) -> Result<Vec<Vec<Accordion>>, Error> {
    let q = m.quiver();
    let mut out = Vec::new();
    let mut current = vec![eta.clone()];
    loop {
        let mut next = Vec::new();
        for x in &current {
            let cover = projective_cover(q, &m.accordion_to_string(x));
            if cover.is_identity() {
                continue;
            }
            let sources: Vec<Accordion> = cover
                .source_strings()
                .iter()
                .map(|s| m.string_to_accordion(s).cloned())
                .collect::<Result<_, _>>()?;
            next.extend(geo_kernel(m, &sources, x)?);
        }
        next.sort();
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
