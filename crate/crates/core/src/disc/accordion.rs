//! Accordions: red chords that thread through the green cells one corner at
//! a time. They index the string modules of the tree.

use std::collections::BTreeMap;

use super::chords::{chords_cross, other_end, strictly_between, Dissection};
use super::{build_disc, MarkedDisc};
use crate::error::Error;
use crate::homology::projective_strings;
use crate::quiver::{GentleQuiver, Letter, VertexId};
use crate::strings::{canonicalize, enumerate_strings, StringWord, Walk};

/// A red chord with sorted endpoints and the green arcs it crosses, read
/// from the first endpoint to the second.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Accordion {
    pub ends: (usize, usize),
    pub crossings: Vec<VertexId>,
}

impl Accordion {
    pub fn has_end(&self, p: usize) -> bool {
        self.ends.0 == p || self.ends.1 == p
    }

    pub fn other_end(&self, p: usize) -> usize {
        other_end(self.ends, p)
    }
}

/// Green arcs crossed by the chord `(a, b)` between red points, in order.
fn crossed(d: &MarkedDisc, a: usize, b: usize) -> Vec<VertexId> {
    let g = d.dissection();
    g.dual_path(g.cell_of_point(a), g.cell_of_point(b)).into_iter().map(VertexId).collect()
}

/// Whether the chord `(a, b)` satisfies the accordion rules: consecutive
/// crossed arcs meet at a corner of the cell between them, and that cell's
/// red point lies on the far side of the chord from the corner.
fn follows_rules(d: &MarkedDisc, a: usize, b: usize, cr: &[VertexId]) -> bool {
    let g = d.dissection();
    let n = g.size;
    let cells = {
        let mut c = vec![g.cell_of_point(a)];
        for e in cr {
            let (s, t) = g.sides[e.0];
            c.push(if s == *c.last().unwrap() { t } else { s });
        }
        c
    };
    cr.windows(2).enumerate().all(|(i, w)| {
        let Some(x) = corner_between(g, w[0].0, w[1].0) else {
            return false;
        };
        let mid = cells[i + 1];
        let corner = g.dart_cell(x, first_at(g, x, w[0].0, w[1].0));
        corner == mid && strictly_between(n, a, b, x) != strictly_between(n, a, b, g.cells[mid].point)
    })
}

/// A node where the two chords are consecutive.
fn corner_between(g: &Dissection, e: usize, f: usize) -> Option<usize> {
    g.adjacent_at(e, f)
}

/// The one of `e`, `f` that comes first clockwise at `x`.
fn first_at(g: &Dissection, x: usize, e: usize, f: usize) -> usize {
    if g.rank_at(x, e) < g.rank_at(x, f) {
        e
    } else {
        f
    }
}

/// All accordions, found by testing every red chord against the green
/// dissection.
pub fn enumerate_accordions(d: &MarkedDisc) -> Vec<Accordion> {
    let reds: Vec<usize> = d.red_points().collect();
    let mut out = Vec::new();
    for (i, &a) in reds.iter().enumerate() {
        for &b in &reds[i + 1..] {
            let cr = crossed(d, a, b);
            if follows_rules(d, a, b, &cr) {
                out.push(Accordion { ends: (a, b), crossings: cr });
            }
        }
    }
    out
}

/// Which red point on a projective cell counts as the distinguished one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distinguished {
    /// The red point just clockwise-after the cell's green point.
    After,
    /// The red point just clockwise-before it.
    Before,
}

/// The distinguished red point of the projective cell around green point `p`.
pub fn distinguished_point(size: usize, p: usize, rule: Distinguished) -> usize {
    match rule {
        Distinguished::After => (p + 1) % size,
        Distinguished::Before => (p + size - 1) % size,
    }
}

/// Sides of cell `c` that share a node with side `e` on its boundary, with
/// that node.
fn cell_neighbours(prj: &Dissection, c: usize, e: usize) -> Vec<(usize, usize)> {
    let cell = &prj.cells[c];
    let k = cell.chords.len();
    let mut out = Vec::new();
    for (i, &f) in cell.chords.iter().enumerate() {
        if f != e {
            continue;
        }
        // Side i runs from nodes[i] to nodes[i+1].
        if i > 0 {
            out.push((cell.chords[i - 1], cell.nodes[i]));
        }
        if i + 1 < k {
            out.push((cell.chords[i + 1], cell.nodes[i + 1]));
        }
    }
    out
}

/// The far end of the side just before `e` along the traced boundary of
/// cell `c`.
fn far_end_before(prj: &Dissection, c: usize, e: usize) -> Option<usize> {
    let cell = &prj.cells[c];
    let i = cell.chords.iter().position(|&f| f == e)?;
    (i > 0).then(|| cell.nodes[i - 1])
}

/// Accordions read off the projective dissection: a red chord is an
/// accordion when it is projective, or when it turns through adjacent
/// projective arcs in every cell it passes and ends either at the
/// distinguished point of its end cells or at the far end of an arc next to
/// the one it last crossed.
pub fn enumerate_accordions_via_projectives(
    d: &MarkedDisc,
    prj: &Dissection,
    rule: Distinguished,
) -> Vec<(usize, usize)> {
    let n = d.size();
    let reds: Vec<usize> = d.red_points().collect();
    let proj: Vec<(usize, usize)> = prj.chords.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut out = Vec::new();
    for (i, &a) in reds.iter().enumerate() {
        for &b in &reds[i + 1..] {
            if proj.contains(&(a, b)) {
                out.push((a, b));
                continue;
            }
            let start = prj.corner_cell(a, b);
            let end = prj.corner_cell(b, a);
            let path = prj.dual_path(start, end);
            let ok = if path.is_empty() {
                let m = distinguished_point(n, prj.cells[start].point, rule);
                a == m || b == m
            } else {
                let mut cells = vec![start];
                for &e in &path {
                    let (s, t) = prj.sides[e];
                    cells.push(if s == *cells.last().unwrap() { t } else { s });
                }
                let ends_ok = |cell: usize, via: usize, p: usize| {
                    p == distinguished_point(n, prj.cells[cell].point, rule) || far_end_before(prj, cell, via) == Some(p)
                };
                let turns_ok = path.windows(2).enumerate().all(|(i, w)| {
                    cell_neighbours(prj, cells[i + 1], w[0]).iter().any(|&(f, _)| f == w[1])
                });
                turns_ok && ends_ok(start, path[0], a) && ends_ok(end, *path.last().unwrap(), b)
            };
            if ok {
                out.push((a, b));
            }
        }
    }
    out
}

/// A tree together with its disc and the accordion/string dictionary.
#[derive(Clone, Debug)]
pub struct DiscModel {
    quiver: GentleQuiver,
    disc: MarkedDisc,
    accordions: Vec<Accordion>,
    strings: Vec<StringWord>,
    by_ends: BTreeMap<(usize, usize), usize>,
    by_string: BTreeMap<StringWord, usize>,
    projective: Vec<usize>,
    prj: Dissection,
}

impl DiscModel {
    pub fn new(q: &GentleQuiver) -> Result<Self, Error> {
        let disc = build_disc(q)?;
        let accordions = enumerate_accordions(&disc);
        let strings: Vec<StringWord> = accordions.iter().map(|a| read_string(q, &disc, a)).collect();
        let by_ends = accordions.iter().enumerate().map(|(i, a)| (a.ends, i)).collect();
        let by_string: BTreeMap<StringWord, usize> = strings.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        if by_string.len() != strings.len() {
            return Err(Error::BadDisc("two accordions read as the same string".into()));
        }
        let mut projective = Vec::new();
        for p in projective_strings(q) {
            match by_string.get(&p) {
                Some(&i) => projective.push(i),
                None => return Err(Error::Projective(p.to_text(q))),
            }
        }
        let prj = Dissection::new(disc.size(), projective.iter().map(|&i| accordions[i].ends).collect(), 1)?;
        Ok(DiscModel { quiver: q.clone(), disc, accordions, strings, by_ends, by_string, projective, prj })
    }

    pub fn quiver(&self) -> &GentleQuiver {
        &self.quiver
    }

    pub fn disc(&self) -> &MarkedDisc {
        &self.disc
    }

    pub fn accordions(&self) -> &[Accordion] {
        &self.accordions
    }

    pub fn index_of_ends(&self, ends: (usize, usize)) -> Option<usize> {
        self.by_ends.get(&(ends.0.min(ends.1), ends.0.max(ends.1))).copied()
    }

    pub fn accordion_with_ends(&self, a: usize, b: usize) -> Option<&Accordion> {
        self.index_of_ends((a, b)).map(|i| &self.accordions[i])
    }

    pub fn accordion_to_string(&self, a: &Accordion) -> StringWord {
        match self.by_ends.get(&a.ends) {
            Some(&i) => self.strings[i].clone(),
            None => read_string(&self.quiver, &self.disc, a),
        }
    }

    /// The accordion of a string: its ends are the red points of the cells
    /// beyond the first and last arc of the walk.
    pub fn string_to_accordion(&self, s: &StringWord) -> Result<&Accordion, Error> {
        let g = self.disc.dissection();
        let vs = s.walk().vertices(&self.quiver);
        let end_cell = |v: VertexId, w: Option<VertexId>, pick: usize| -> usize {
            let (x, y) = g.sides[v.0];
            match w {
                None => [x, y][pick],
                Some(w) => {
                    let (u, z) = g.sides[w.0];
                    if x == u || x == z {
                        y
                    } else {
                        x
                    }
                }
            }
        };
        let first = end_cell(vs[0], vs.get(1).copied(), 0);
        let last = end_cell(vs[vs.len() - 1], if vs.len() > 1 { Some(vs[vs.len() - 2]) } else { None }, 1);
        let (a, b) = (g.cells[first].point, g.cells[last].point);
        let i = self
            .index_of_ends((a, b))
            .ok_or_else(|| Error::BadString { text: s.to_text(&self.quiver), reason: "no accordion".into() })?;
        if self.strings[i] != *s {
            return Err(Error::BadString { text: s.to_text(&self.quiver), reason: "not a string of this tree".into() });
        }
        Ok(&self.accordions[i])
    }

    pub fn string_of(&self, i: usize) -> &StringWord {
        &self.strings[i]
    }

    pub fn index_of_string(&self, s: &StringWord) -> Option<usize> {
        self.by_string.get(s).copied()
    }

    pub fn projective_indices(&self) -> &[usize] {
        &self.projective
    }

    pub fn is_projective_index(&self, i: usize) -> bool {
        self.projective.contains(&i)
    }

    /// The projective accordions, indexed by vertex.
    pub fn projective_dissection(&self) -> Vec<&Accordion> {
        self.projective.iter().map(|&i| &self.accordions[i]).collect()
    }

    pub(crate) fn prj(&self) -> &Dissection {
        &self.prj
    }

    /// Accordion index of the projective chord `c` of the projective
    /// dissection.
    pub(crate) fn prj_accordion(&self, c: usize) -> usize {
        self.projective[c]
    }

    pub fn prj_cells(&self) -> Vec<(usize, Vec<usize>)> {
        self.prj.cells.iter().map(|c| (c.point, c.nodes.clone())).collect()
    }

    pub fn inside_prj_cell(&self, (a, b): (usize, usize)) -> Option<usize> {
        let s = self.prj.corner_cell(a, b);
        (s == self.prj.corner_cell(b, a)).then(|| self.prj.cells[s].point)
    }

    /// Accordion ends read off the projective dissection alone.
    pub fn via_projectives(&self, rule: Distinguished) -> Vec<(usize, usize)> {
        enumerate_accordions_via_projectives(&self.disc, &self.prj, rule)
    }

    pub fn num_projective_cells(&self) -> usize {
        self.prj.cells.len()
    }

    /// Strings of the tree that have no accordion, or accordions whose string
    /// is missing from the tree; both empty when the dictionary is a bijection.
    pub fn bijection_defects(&self) -> Result<(Vec<StringWord>, Vec<Accordion>), Error> {
        let all = enumerate_strings(&self.quiver)?;
        let missing = all.iter().filter(|s| !self.by_string.contains_key(s)).cloned().collect();
        let extra = self
            .accordions
            .iter()
            .zip(&self.strings)
            .filter(|(_, s)| all.binary_search(s).is_err())
            .map(|(a, _)| a.clone())
            .collect();
        Ok((missing, extra))
    }

    /// Transversal intersections of two accordions in the interior of the
    /// disc: chords meet at most once, so this is 0 or 1.
    pub fn crossing_count(&self, a: &Accordion, b: &Accordion) -> usize {
        usize::from(chords_cross(self.disc.size(), a.ends, b.ends))
    }
}

/// The string read along an accordion: the crossed arcs in order, with a
/// direct letter when the next arc follows clockwise at the shared corner.
fn read_string(q: &GentleQuiver, d: &MarkedDisc, a: &Accordion) -> StringWord {
    let g = d.dissection();
    let mut letters = Vec::new();
    for w in a.crossings.windows(2) {
        let (u, v) = (w[0], w[1]);
        let x = g.adjacent_at(u.0, v.0).expect("accordion turns through a corner");
        let direct = g.rank_at(x, v.0) > g.rank_at(x, u.0);
        let (s, t) = if direct { (u, v) } else { (v, u) };
        let arrow = q
            .outgoing(s)
            .iter()
            .copied()
            .find(|&ar| q.target(ar) == t)
            .expect("adjacent arcs are joined by an arrow");
        letters.push(if direct { Letter::direct(arrow) } else { Letter::inverse_of(arrow) });
    }
    let w = Walk::new(q, a.crossings[0], letters).expect("accordion reads as a walk");
    canonicalize(q, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::fixtures::*;

    fn s(q: &GentleQuiver, t: &str) -> StringWord {
        StringWord::parse(q, t).unwrap()
    }

    #[test]
    fn a2_accordions() {
        let q = a2();
        let m = DiscModel::new(&q).unwrap();
        let ends: Vec<_> = m.accordions().iter().map(|a| a.ends).collect();
        assert_eq!(ends, vec![(1, 3), (1, 5), (3, 5)]);
        assert_eq!(m.string_to_accordion(&s(&q, "e(1)")).unwrap().ends, (1, 3));
        assert_eq!(m.string_to_accordion(&s(&q, "a+")).unwrap().ends, (1, 5));
        let mut prj: Vec<_> = m.projective_dissection().iter().map(|a| a.ends).collect();
        prj.sort();
        assert_eq!(prj, vec![(1, 5), (3, 5)]);
    }

    #[test]
    fn a3_counts() {
        let q = a3();
        let m = DiscModel::new(&q).unwrap();
        assert_eq!(m.accordions().len(), 6);
        assert_eq!(m.num_projective_cells(), 4);
    }

    #[test]
    fn trapped_red_point_is_excluded() {
        // Four red points give six chords; the one running across the
        // relation keeps a red point in its turning corner.
        let m = DiscModel::new(&a3_rel()).unwrap();
        assert_eq!(m.disc().red_points().count(), 4);
        assert_eq!(m.accordions().len(), 5);
        assert_eq!(m.accordions().len(), enumerate_strings(&a3_rel()).unwrap().len());
    }

    #[test]
    fn lazy_strings_cross_one_arc() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            let m = DiscModel::new(&q).unwrap();
            for v in q.vertex_ids() {
                let a = m.string_to_accordion(&StringWord::lazy(v)).unwrap();
                assert_eq!(a.crossings, vec![v]);
            }
        }
    }
}
