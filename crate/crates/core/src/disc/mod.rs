//! Dissected marked discs for gentle trees: the green dissection, accordions
//! for string modules, the projective dissection and the geometric
//! resolving sets.
//!
//! Boundary points are numbered `0..size` clockwise; even points are green
//! and odd points are red. Each green arc is labelled by a vertex.

mod accordion;
mod chords;
mod geometry;
mod monogeneous;
mod svg;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use accordion::{
    distinguished_point, enumerate_accordions, enumerate_accordions_via_projectives, Accordion, DiscModel, Distinguished,
};
pub use chords::{chords_cross, offset, strictly_between};
pub use monogeneous::{coloration, end_cells, geo_res_set, nproj, nproj_algebraic, w_points, Color, Coloration, EndCell};
pub use geometry::{geo_extensions, geo_kernel, geo_syzygy_fan, GeoExtension};
pub use svg::{render_svg, Overlay, Role};

use crate::error::Error;
use crate::quiver::{GentleQuiver, QuiverData, VertexId};
use chords::Dissection;

#[derive(Clone, Debug)]
pub struct MarkedDisc {
    green: Dissection,
    labels: Vec<String>,
}

impl PartialEq for MarkedDisc {
    fn eq(&self, other: &Self) -> bool {
        self.green.size == other.green.size && self.green.chords == other.green.chords && self.labels == other.labels
    }
}

impl Eq for MarkedDisc {}

/// JSON shape: `{"boundary": ["green", "red", ...], "arcs": [[i, j, "v"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscJson {
    pub boundary: Vec<String>,
    pub arcs: Vec<(usize, usize, String)>,
}

impl MarkedDisc {
    /// Builds a disc from green arcs between even points, one per label.
    pub fn new(size: usize, arcs: Vec<(usize, usize)>, labels: Vec<String>) -> Result<Self, Error> {
        if arcs.len() != labels.len() {
            return Err(Error::BadDisc("one label per arc is required".into()));
        }
        let arcs = arcs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Ok(MarkedDisc { green: Dissection::new(size, arcs, 0)?, labels })
    }

    pub fn size(&self) -> usize {
        self.green.size
    }

    pub fn num_arcs(&self) -> usize {
        self.green.chords.len()
    }

    pub fn arc(&self, v: VertexId) -> (usize, usize) {
        self.green.chords[v.0]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn green_points(&self) -> impl Iterator<Item = usize> {
        (0..self.size()).step_by(2)
    }

    pub fn red_points(&self) -> impl Iterator<Item = usize> {
        (1..self.size()).step_by(2)
    }

    pub fn num_cells(&self) -> usize {
        self.green.cells.len()
    }

    /// Arcs at a green point in clockwise order.
    pub fn arcs_at(&self, g: usize) -> Vec<VertexId> {
        self.green.at[g].iter().map(|&c| VertexId(c)).collect()
    }

    pub(crate) fn dissection(&self) -> &Dissection {
        &self.green
    }

    pub fn to_json(&self) -> DiscJson {
        DiscJson {
            boundary: (0..self.size()).map(|p| if p % 2 == 0 { "green" } else { "red" }.to_string()).collect(),
            arcs: self.green.chords.iter().zip(&self.labels).map(|(&(a, b), l)| (a, b, l.clone())).collect(),
        }
    }

    pub fn from_json(j: &DiscJson) -> Result<Self, Error> {
        for (p, c) in j.boundary.iter().enumerate() {
            let want = if p % 2 == 0 { "green" } else { "red" };
            if c != want {
                return Err(Error::BadDisc(format!("point {p} should be {want}; colours must alternate from green")));
            }
        }
        MarkedDisc::new(
            j.boundary.len(),
            j.arcs.iter().map(|&(a, b, _)| (a, b)).collect(),
            j.arcs.iter().map(|(_, _, l)| l.clone()).collect(),
        )
    }
}

/// Maximal relation-free paths, as vertex sequences.
fn threads(q: &GentleQuiver) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for a in q.arrow_ids() {
        if q.free_predecessor(a).is_some() {
            continue;
        }
        let mut t = vec![q.source(a), q.target(a)];
        let mut cur = a;
        while let Some(b) = q.free_successor(cur) {
            t.push(q.target(b));
            cur = b;
        }
        out.push(t);
    }
    let mut count = vec![0; q.num_vertices()];
    for t in &out {
        for v in t {
            count[v.0] += 1;
        }
    }
    for v in q.vertex_ids() {
        for _ in count[v.0]..2 {
            out.push(vec![v]);
        }
    }
    out
}

/// The disc of a gentle tree. Green points are the maximal relation-free
/// paths, padded with trivial paths so every arc has two ends; the arcs at
/// a green point run clockwise along the path, and the boundary order comes
/// from walking around the cells.
pub fn build_disc(q: &GentleQuiver) -> Result<MarkedDisc, Error> {
    if !q.is_tree() {
        return Err(Error::NotATree);
    }
    let th = threads(q);
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); q.num_vertices()];
    for (g, t) in th.iter().enumerate() {
        for v in t {
            ends[v.0].push(g);
        }
    }
    let other = |v: VertexId, g: usize| if ends[v.0][0] == g { ends[v.0][1] } else { ends[v.0][0] };
    let next = |g: usize| -> usize {
        let mut e = th[g][0];
        let mut cur = other(e, g);
        loop {
            let k = th[cur].iter().position(|&v| v == e).unwrap();
            if k + 1 == th[cur].len() {
                return cur;
            }
            e = th[cur][k + 1];
            cur = other(e, cur);
        }
    };
    let mut order = vec![0];
    loop {
        let g = next(*order.last().unwrap());
        if g == 0 {
            break;
        }
        if order.contains(&g) || order.len() > th.len() {
            return Err(Error::BadDisc("boundary walk does not close up".into()));
        }
        order.push(g);
    }
    if order.len() != th.len() {
        return Err(Error::BadDisc("boundary walk misses green points".into()));
    }
    let mut pos = vec![0; th.len()];
    for (i, &g) in order.iter().enumerate() {
        pos[g] = 2 * i;
    }
    let arcs: Vec<(usize, usize)> = q.vertex_ids().map(|v| (pos[ends[v.0][0]], pos[ends[v.0][1]])).collect();
    let labels = q.vertex_ids().map(|v| q.vertex_name(v).to_string()).collect();
    let d = MarkedDisc::new(2 * th.len(), arcs, labels)?;
    for (g, t) in th.iter().enumerate() {
        if d.arcs_at(pos[g]) != *t {
            return Err(Error::BadDisc(format!("clockwise order at green point {} disagrees", pos[g])));
        }
    }
    Ok(d)
}

/// Reads the quiver: an arrow `j → i` whenever `i` follows `j` clockwise at
/// a green point, and a relation when two such arrows compose through
/// corners of one cell.
pub fn quiver_of_disc(d: &MarkedDisc) -> Result<GentleQuiver, Error> {
    let g = d.dissection();
    // (green point, from, to)
    let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
    for p in d.green_points() {
        for w in g.at[p].windows(2) {
            arrows.push((p, w[0], w[1]));
        }
    }
    let name = |i: usize| format!("x{}", i + 1);
    let mut relations = Vec::new();
    for (i, &(p, u, v)) in arrows.iter().enumerate() {
        for (j, &(p2, v2, _)) in arrows.iter().enumerate() {
            if v2 == v && g.dart_cell(p, u) == g.dart_cell(p2, v) {
                relations.push((name(i), name(j)));
            }
        }
    }
    let data = QuiverData {
        vertices: d.labels.clone(),
        arrows: arrows
            .iter()
            .enumerate()
            .map(|(i, &(_, u, v))| (name(i), d.labels[u].clone(), d.labels[v].clone()))
            .collect(),
        relations,
    };
    Ok(GentleQuiver::from_data(&data)?)
}

/// Whether two quivers agree up to renaming arrows, matching vertices by
/// name. Arrows are compared by endpoints, so this is meant for trees.
pub fn same_up_to_arrow_names(a: &GentleQuiver, b: &GentleQuiver) -> bool {
    let key = |q: &GentleQuiver, x| (q.vertex_name(q.source(x)).to_string(), q.vertex_name(q.target(x)).to_string());
    let arrows = |q: &GentleQuiver| -> BTreeMap<_, usize> {
        let mut m = BTreeMap::new();
        for x in q.arrow_ids() {
            *m.entry(key(q, x)).or_insert(0) += 1;
        }
        m
    };
    let rels = |q: &GentleQuiver| -> Vec<_> {
        let mut r: Vec<_> = q.relations().map(|(x, y)| (key(q, x), key(q, y))).collect();
        r.sort();
        r
    };
    let names = |q: &GentleQuiver| -> Vec<String> { q.vertex_ids().map(|v| q.vertex_name(v).to_string()).collect() };
    names(a) == names(b) && arrows(a) == arrows(b) && rels(a) == rels(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::fixtures::*;

    #[test]
    fn a2_disc() {
        let d = build_disc(&a2()).unwrap();
        assert_eq!(d.size(), 6);
        assert_eq!(d.num_arcs(), 2);
        assert_eq!(d.num_cells(), 3);
        assert_eq!(d.arc(VertexId(0)), (0, 2));
        assert_eq!(d.arc(VertexId(1)), (0, 4));
    }

    #[test]
    fn green_point_valences() {
        let valence = |q: &GentleQuiver| -> Vec<usize> {
            let d = build_disc(q).unwrap();
            let mut v: Vec<usize> = d.green_points().map(|p| d.arcs_at(p).len()).collect();
            v.sort();
            v
        };
        // Without relations the whole path is one relation-free thread.
        assert_eq!(valence(&a3()), vec![1, 1, 1, 3]);
        assert_eq!(valence(&a3_rel()), vec![1, 1, 2, 2]);
    }

    #[test]
    fn roundtrip_small() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            let d = build_disc(&q).unwrap();
            assert_eq!(d.num_cells(), q.num_vertices() + 1);
            assert!(same_up_to_arrow_names(&quiver_of_disc(&d).unwrap(), &q));
        }
    }

    #[test]
    fn two_arcs_sharing_an_end_read_as_a2() {
        let d = MarkedDisc::new(6, vec![(0, 2), (0, 4)], vec!["1".into(), "2".into()]).unwrap();
        assert!(same_up_to_arrow_names(&quiver_of_disc(&d).unwrap(), &a2()));
    }

    #[test]
    fn three_arcs_at_one_green_point_read_as_linear_a3() {
        // Consecutive arcs at a green point form one relation-free path.
        let d = MarkedDisc::new(8, vec![(0, 2), (0, 4), (0, 6)], vec!["1".into(), "2".into(), "3".into()]).unwrap();
        assert!(same_up_to_arrow_names(&quiver_of_disc(&d).unwrap(), &a3()));
    }

    #[test]
    fn json_roundtrip() {
        let d = build_disc(&a3_rel()).unwrap();
        let j = d.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: DiscJson = serde_json::from_str(&text).unwrap();
        assert_eq!(MarkedDisc::from_json(&back).unwrap(), d);
    }

    #[test]
    fn non_tree_is_rejected() {
        let q = crate::corpus::fixtures().remove(1).1;
        assert!(matches!(build_disc(&q), Err(Error::NotATree)));
    }

    #[test]
    fn roundtrip_corpus() {
        for q in crate::corpus::gentle_trees_up_to(6) {
            let d = build_disc(&q).unwrap();
            assert_eq!(d.size(), 2 * (q.num_vertices() + 1));
            assert!(same_up_to_arrow_names(&quiver_of_disc(&d).unwrap(), &q), "{}", q.serialize());
        }
    }
}
