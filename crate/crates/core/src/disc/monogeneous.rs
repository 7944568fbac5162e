//! Neighbouring projectives, colorations and the monogeneous geometric
//! resolving sets.

use std::collections::{BTreeMap, BTreeSet};

use super::accordion::{Accordion, DiscModel};
use super::chords::{chords_cross, offset, strictly_between};
use crate::error::Error;
use crate::quiver::VertexId;
use crate::homology::{default_cap, min_proj_resolution, syzygy_chain};
use crate::strings::ext_basis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Orange,
    Green,
    Pink,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Orange => "orange",
            Color::Green => "green",
            Color::Pink => "pink",
        }
    }
}

/// Colors of the endpoints of the neighbouring projectives of `δ`, with
/// `δ` running from `source` to `target` and the red side clockwise after
/// the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloration {
    pub size: usize,
    pub source: usize,
    pub target: usize,
    pub colors: BTreeMap<usize, Color>,
    /// Green arcs crossed by `δ`, with their boundary ends.
    crossed: Vec<(VertexId, (usize, usize))>,
}

impl Coloration {
    /// Whether `p` lies on the red side of `δ`.
    pub fn on_red_side(&self, p: usize) -> bool {
        strictly_between(self.size, self.source, self.target, p)
    }

    /// Position of `p` from left to right along `δ`: the source, then each
    /// side in order towards the target.
    fn key(&self, p: usize) -> (u8, usize) {
        if p == self.source {
            (0, 0)
        } else if p == self.target {
            (3, 0)
        } else if self.on_red_side(p) {
            (1, offset(self.size, self.source, p))
        } else {
            (2, offset(self.size, p, self.source))
        }
    }

    /// Ends of `a` as (source, target). A chord across `δ` runs the same
    /// way as `δ` through a green arc they both cross; otherwise the end
    /// nearer the source of `δ` comes first.
    pub fn orient(&self, a: &Accordion) -> (usize, usize) {
        let (x, y) = a.ends;
        if chords_cross(self.size, a.ends, (self.source, self.target)) {
            if let Some(&(_, (p, q))) = self.crossed.iter().find(|(v, _)| a.crossings.contains(v)) {
                let side = |z: usize| strictly_between(self.size, p, q, z);
                return if side(x) == side(self.source) { (x, y) } else { (y, x) };
            }
        }
        let (kx, ky) = (self.key(x), self.key(y));
        let x_first = match (kx.0, ky.0) {
            (0, _) | (_, 3) => true,
            (_, 0) | (3, _) => false,
            (1, 2) => true,
            (2, 1) => false,
            _ => kx.1 < ky.1,
        };
        if x_first {
            (x, y)
        } else {
            (y, x)
        }
    }

    pub fn color(&self, p: usize) -> Option<Color> {
        self.colors.get(&p).copied()
    }

    /// Source red or orange, target green or orange.
    pub fn admits(&self, a: &Accordion) -> bool {
        let (s, t) = self.orient(a);
        matches!(self.color(s), Some(Color::Red | Color::Orange))
            && matches!(self.color(t), Some(Color::Green | Color::Orange))
    }
}

/// Projective accordion indices of `Nproj(δ)` from the algebra: projectives
/// in the minimal projective resolution of `M(δ)` or with a nonzero
/// `Extⁱ(M(δ), P)`.
pub fn nproj_algebraic(m: &DiscModel, d: usize) -> Result<Vec<usize>, Error> {
    let q = m.quiver();
    let s = m.string_of(d);
    let cap = default_cap(q)?;
    let mut out = BTreeSet::new();
    for term in min_proj_resolution(q, s, cap)?.terms {
        for p in term {
            out.insert(m.index_of_string(&p).expect("projective has an accordion"));
        }
    }
    let mut layers = vec![vec![s.clone()]];
    layers.extend(syzygy_chain(q, s, cap)?);
    for &p in m.projective_indices() {
        let ps = m.string_of(p);
        if layers.iter().flatten().any(|x| !ext_basis(q, x, ps).is_empty()) {
            out.insert(p);
        }
    }
    Ok(out.into_iter().collect())
}

/// `Nproj(δ)` read off the disc: projective chords crossing `δ`, the
/// projective sides of an end cell on the way from the end of `δ` to the
/// crossed arc (or to the other end), and projective chords sharing an end
/// with `δ` when every projective chord there comes before `δ`
/// counterclockwise.
pub fn nproj(m: &DiscModel, d: usize) -> Vec<usize> {
    let n = m.disc().size();
    let delta = &m.accordions()[d];
    let (s, t) = delta.ends;
    let mut out = BTreeSet::new();
    for &p in m.projective_indices() {
        if chords_cross(n, m.accordions()[p].ends, delta.ends) {
            out.insert(p);
        }
    }
    let (cl, cr) = end_cells(m, d);
    let mut walk = |from: usize, e: &EndCell, to: Option<usize>| {
        let mut path = vec![from];
        path.extend(&e.intermediate);
        path.extend(to);
        for w in path.windows(2) {
            if let Some(i) = m.index_of_ends((w[0].min(w[1]), w[0].max(w[1]))) {
                if m.is_projective_index(i) {
                    out.insert(i);
                }
            }
        }
    };
    if cl.arc.is_none() {
        walk(s, &cl, Some(t));
    } else {
        walk(s, &cl, None);
        walk(t, &cr, None);
    }
    for (v, other) in [(s, t), (t, s)] {
        let o = offset(n, v, other);
        let prj = m.prj();
        let at: Vec<usize> = prj.at[v].iter().map(|&c| super::chords::other_end(prj.chords[c], v)).collect();
        if at.iter().all(|&z| offset(n, v, z) < o) {
            for z in at {
                out.insert(m.index_of_ends((v.min(z), v.max(z))).expect("projective chord"));
            }
        }
    }
    out.into_iter().collect()
}

/// The cell of the projective dissection holding one end of `δ`, with the
/// projective arc `δ` crosses to leave it (none when `δ` stays in the cell).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndCell {
    pub arc: Option<usize>,
    /// Green point of the cell.
    pub cell: usize,
    /// Cell corners after the end of `δ` up to the crossed arc's nearer end
    /// (or strictly before the other end of `δ`), read from the end of `δ`
    /// along projective arcs.
    pub intermediate: Vec<usize>,
}

/// Corners of projective cell `c` from node `from` to node `to` along its
/// projective sides, both excluded.
fn corners_between(m: &DiscModel, c: usize, from: usize, to: usize) -> Vec<usize> {
    let nodes = &m.prj().cells[c].nodes;
    let i = nodes.iter().position(|&x| x == from).expect("node on cell");
    let j = nodes.iter().position(|&x| x == to).expect("node on cell");
    if i < j {
        nodes[i + 1..j].to_vec()
    } else {
        nodes[j + 1..i].iter().rev().copied().collect()
    }
}

/// End cells of `δ` at its first and second end.
pub fn end_cells(m: &DiscModel, d: usize) -> (EndCell, EndCell) {
    let prj = m.prj();
    let (s, t) = m.accordions()[d].ends;
    let cs = prj.corner_cell(s, t);
    let ct = prj.corner_cell(t, s);
    let path = prj.dual_path(cs, ct);
    let end = |c: usize, p: usize, arc: Option<usize>, other: usize| -> EndCell {
        let intermediate = match arc {
            None => corners_between(m, c, p, other),
            Some(e) => {
                let (a, b) = prj.chords[e];
                let near = |x: usize| corners_between(m, c, p, x).len();
                let x = if near(a) <= near(b) { a } else { b };
                let mut v = corners_between(m, c, p, x);
                v.push(x);
                v
            }
        };
        EndCell { arc: arc.map(|e| m.prj_accordion(e)), cell: prj.cells[c].point, intermediate }
    };
    (end(cs, s, path.first().copied(), t), end(ct, t, path.last().copied(), s))
}

/// Other end of the projective chord at `x` next to the direction of `y`,
/// turning clockwise or counterclockwise.
fn next_projective(m: &DiscModel, x: usize, y: usize, clockwise: bool) -> Option<usize> {
    let prj = m.prj();
    let n = prj.size;
    let o = offset(n, x, y);
    let ends = prj.at[x].iter().map(|&c| super::chords::other_end(prj.chords[c], x));
    if clockwise {
        ends.filter(|&z| offset(n, x, z) > o).min_by_key(|&z| offset(n, x, z))
    } else {
        ends.filter(|&z| offset(n, x, z) < o).max_by_key(|&z| offset(n, x, z))
    }
}

/// The corner points `(w_L, w_R)`: at each end of `δ`, the far end of the
/// projective chord next to `δ` counterclockwise.
pub fn w_points(m: &DiscModel, d: usize) -> (Option<usize>, Option<usize>) {
    let (s, t) = m.accordions()[d].ends;
    (next_projective(m, s, t, false), next_projective(m, t, s, false))
}

/// The coloration of `Nproj(δ)₀`.
pub fn coloration(m: &DiscModel, d: usize) -> Coloration {
    let delta = &m.accordions()[d];
    let np = nproj(m, d);
    let (source, target) = delta.ends;
    let crossed = delta.crossings.iter().map(|&v| (v, m.disc().arc(v))).collect();
    let mut c = Coloration { size: m.disc().size(), source, target, colors: BTreeMap::new(), crossed };
    let mut points = BTreeSet::new();
    for &i in &np {
        let a = &m.accordions()[i];
        points.insert(a.ends.0);
        points.insert(a.ends.1);
    }
    for &p in &points {
        let color = if c.on_red_side(p) { Color::Red } else { Color::Green };
        c.colors.insert(p, color);
    }
    let others_at = |p: usize| -> Vec<usize> {
        np.iter().map(|&i| &m.accordions()[i]).filter(|a| a.has_end(p)).map(|a| a.other_end(p)).collect()
    };
    let src = if others_at(source).iter().all(|&x| x != target && !c.on_red_side(x)) { Color::Red } else { Color::Orange };
    let tgt = if others_at(target).iter().all(|&x| x != source && c.on_red_side(x)) { Color::Green } else { Color::Orange };
    c.colors.insert(source, src);
    c.colors.insert(target, tgt);
    let (cl, cr) = end_cells(m, d);
    let (wl, wr) = w_points(m, d);
    // In a large end cell every intermediate corner turns orange, except
    // the corner point which turns pink.
    for e in if cl.arc.is_none() { vec![&cl] } else { vec![&cl, &cr] } {
        if e.intermediate.len() < 2 {
            continue;
        }
        for &p in e.intermediate.iter().filter(|p| points.contains(p)) {
            let pink = Some(p) == wl || Some(p) == wr;
            c.colors.insert(p, if pink { Color::Pink } else { Color::Orange });
        }
    }
    c
}

/// Indices of the accordions in the monogeneous geometric resolving set of
/// `δ`, projectives included.
pub fn geo_res_set(m: &DiscModel, d: usize) -> Vec<usize> {
    let c = coloration(m, d);
    let mut out: BTreeSet<usize> = m.projective_indices().iter().copied().collect();
    for (i, a) in m.accordions().iter().enumerate() {
        if c.admits(a) {
            out.insert(i);
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::fixtures::*;
    use crate::strings::StringWord;

    fn nonproj_members(m: &DiscModel, d: usize) -> Vec<usize> {
        geo_res_set(m, d).into_iter().filter(|&i| !m.is_projective_index(i)).collect()
    }

    #[test]
    fn a2_simple_top() {
        let q = a2();
        let m = DiscModel::new(&q).unwrap();
        let d = m.index_of_string(&StringWord::lazy(VertexId(0))).unwrap();
        assert!(!m.is_projective_index(d));
        // Both projectives neighbour the simple at the source.
        assert_eq!(nproj(&m, d).len(), 2);
        assert_eq!(nonproj_members(&m, d), vec![d]);
        let mut all = geo_res_set(&m, d);
        all.retain(|&i| i != d);
        assert_eq!(all, m.projective_indices().iter().copied().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn a3_middle_simple() {
        let q = a3();
        let m = DiscModel::new(&q).unwrap();
        let d = m.index_of_string(&StringWord::lazy(VertexId(1))).unwrap();
        assert_eq!(nonproj_members(&m, d), vec![d]);
    }

    #[test]
    fn end_cells_inside_one_cell() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            let m = DiscModel::new(&q).unwrap();
            for (i, a) in m.accordions().iter().enumerate() {
                if m.inside_prj_cell(a.ends).is_some() && !m.is_projective_index(i) {
                    let (l, r) = end_cells(&m, i);
                    assert_eq!((l.arc, r.arc), (None, None));
                    assert_eq!(l.cell, r.cell);
                }
            }
        }
    }

    #[test]
    fn delta_is_a_member() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            let m = DiscModel::new(&q).unwrap();
            for i in (0..m.accordions().len()).filter(|&i| !m.is_projective_index(i)) {
                assert!(geo_res_set(&m, i).contains(&i));
            }
        }
    }
}
