//! Test corpora: every gentle tree up to isomorphism, seeded random trees,
//! and a few non-tree fixtures.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::{parse_quiver, GentleQuiver, QuiverData};

const ARROW_NAMES: [&str; 12] = ["a", "b", "c", "d", "f", "g", "h", "i", "j", "k", "l", "m"];

/// Edge `(source, target)` list on vertices `0..n`.
type Edges = Vec<(usize, usize)>;

/// A gentle tree under construction: oriented edges plus relations as
/// `(first, second)` edge indices.
#[derive(Clone, Debug)]
struct Shape {
    n: usize,
    edges: Edges,
    relations: BTreeSet<(usize, usize)>,
}

impl Shape {
    fn to_quiver(&self) -> GentleQuiver {
        let data = QuiverData {
            vertices: (1..=self.n).map(|v| v.to_string()).collect(),
            arrows: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| (ARROW_NAMES[i].to_string(), (s + 1).to_string(), (t + 1).to_string()))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(a, b)| (ARROW_NAMES[a].to_string(), ARROW_NAMES[b].to_string()))
                .collect(),
        };
        GentleQuiver::from_data(&data).expect("corpus shape is gentle")
    }

    /// Canonical code: minimum over roots of a rooted encoding that
    /// minimizes over child orders at every vertex.
    fn canonical(&self) -> String {
        (0..self.n).map(|r| self.rooted_code(r, None)).min().unwrap_or_default()
    }

    fn rooted_code(&self, v: usize, parent_edge: Option<usize>) -> String {
        let children: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != parent_edge)
            .filter_map(|(i, &(s, t))| {
                if s == v {
                    Some((i, t))
                } else if t == v {
                    Some((i, s))
                } else {
                    None
                }
            })
            .collect();
        let codes: Vec<String> = children.iter().map(|&(e, c)| self.rooted_code(c, Some(e))).collect();
        let rel = |x: usize, y: usize| self.relations.contains(&(x, y));
        let mut best: Option<String> = None;
        for perm in permutations(children.len()) {
            let mut s = String::from("(");
            for &k in &perm {
                let (e, _) = children[k];
                s.push(if self.edges[e].0 == v { '>' } else { '<' });
                if let Some(p) = parent_edge {
                    s.push(if rel(p, e) { 'R' } else if rel(e, p) { 'r' } else { '.' });
                }
                s.push_str(&codes[k]);
            }
            for (i, &ki) in perm.iter().enumerate() {
                for (j, &kj) in perm.iter().enumerate() {
                    if rel(children[ki].0, children[kj].0) {
                        s.push_str(&format!("{i}{j}"));
                    }
                }
            }
            s.push(')');
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
        best.unwrap()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn prufer_to_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![];
    }
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Unoriented trees on `n` vertices with maximum degree 4, one per
/// isomorphism class.
fn free_trees(n: usize) -> Vec<Edges> {
    let mut seen = BTreeMap::new();
    let total = if n <= 2 { 1 } else { n.pow(n as u32 - 2) };
    for code in 0..total {
        let mut seq = Vec::with_capacity(n.saturating_sub(2));
        let mut c = code;
        for _ in 0..n.saturating_sub(2) {
            seq.push(c % n);
            c /= n;
        }
        let edges = prufer_to_edges(&seq, n);
        let mut deg = vec![0; n];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d > 4) {
            continue;
        }
        let shape = Shape { n, edges: edges.clone(), relations: BTreeSet::new() };
        seen.entry(shape.canonical()).or_insert(edges);
    }
    seen.into_values().collect()
}

fn degrees_ok(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut ins = vec![0; n];
    let mut outs = vec![0; n];
    for &(s, t) in edges {
        outs[s] += 1;
        ins[t] += 1;
    }
    ins.iter().chain(&outs).all(|&d| d <= 2)
}

/// Admissible relation sets at one vertex: pairs `(incoming, outgoing)`
/// such that each arrow has at most one relation partner and at most one
/// free partner on that side.
fn local_relation_choices(v: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let ins: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].1 == v).collect();
    let outs: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].0 == v).collect();
    let pairs: Vec<(usize, usize)> = ins.iter().flat_map(|&a| outs.iter().map(move |&b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let ok = ins.iter().all(|&a| {
            let r = outs.iter().filter(|&&b| chosen.contains(&(a, b))).count();
            r <= 1 && outs.len() - r <= 1
        }) && outs.iter().all(|&b| {
            let r = ins.iter().filter(|&&a| chosen.contains(&(a, b))).count();
            r <= 1 && ins.len() - r <= 1
        });
        if ok {
            out.push(chosen);
        }
    }
    out
}

fn all_relation_sets(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<(usize, usize)>> {
    let mut acc = vec![BTreeSet::new()];
    for v in 0..n {
        let choices = local_relation_choices(v, edges);
        acc = acc
            .into_iter()
            .flat_map(|base| {
                choices.iter().map(move |c| {
                    let mut b = base.clone();
                    b.extend(c.iter().copied());
                    b
                })
            })
            .collect();
    }
    acc
}

/// Every gentle tree with exactly `n` vertices, up to isomorphism, in a
/// deterministic order.
pub fn gentle_trees(n: usize) -> Vec<GentleQuiver> {
    assert!((1..=ARROW_NAMES.len() + 1).contains(&n));
    let mut seen: BTreeMap<String, Shape> = BTreeMap::new();
    for edges in free_trees(n) {
        for mask in 0u32..(1 << edges.len()) {
            let oriented: Edges = edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            if !degrees_ok(n, &oriented) {
                continue;
            }
            for relations in all_relation_sets(n, &oriented) {
                let shape = Shape { n, edges: oriented.clone(), relations };
                seen.entry(shape.canonical()).or_insert(shape);
            }
        }
    }
    seen.values().map(Shape::to_quiver).collect()
}

/// Every gentle tree with at most `max` vertices.
pub fn gentle_trees_up_to(max: usize) -> Vec<GentleQuiver> {
    (1..=max).flat_map(gentle_trees).collect()
}

/// `count` random gentle trees with between `min` and `max` vertices.
pub fn random_gentle_trees(count: usize, min: usize, max: usize, seed: u64) -> Vec<GentleQuiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(min..=max);
        let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
        let edges: Edges = prufer_to_edges(&seq, n)
            .into_iter()
            .map(|(a, b)| if rng.gen_bool(0.5) { (b, a) } else { (a, b) })
            .collect();
        if !degrees_ok(n, &edges) {
            continue;
        }
        let mut relations = BTreeSet::new();
        for v in 0..n {
            let choices = local_relation_choices(v, &edges);
            relations.extend(choices[rng.gen_range(0..choices.len())].iter().copied());
        }
        out.push(Shape { n, edges, relations }.to_quiver());
    }
    out
}

/// Isomorphism-invariant code of a tree; `None` for non-trees.
pub fn tree_canonical_form(q: &GentleQuiver) -> Option<String> {
    if !q.is_tree() {
        return None;
    }
    let edges = q.arrow_ids().map(|a| (q.source(a).0, q.target(a).0)).collect();
    let relations = q.relations().map(|(a, b)| (a.0, b.0)).collect();
    Some(Shape { n: q.num_vertices(), edges, relations }.canonical())
}

/// Named non-tree fixtures.
pub fn fixtures() -> Vec<(&'static str, GentleQuiver)> {
    let parse = |t: &str| parse_quiver(t).expect("fixture parses");
    vec![
        (
            "relation-3-cycle",
            parse("vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3; c: 3 -> 1\nrelations: b a; c b; a c\n"),
        ),
        ("3-cycle-one-relation", parse("vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3; c: 3 -> 1\nrelations: b a\n")),
        ("kronecker", parse("vertices: 1 2\narrows: a: 1 -> 2; b: 1 -> 2\nrelations:\n")),
        (
            "double-arrows",
            parse("vertices: 1 2 3\narrows: a1: 1 -> 2; b1: 1 -> 2; a2: 2 -> 3; b2: 2 -> 3\nrelations: a2 b1; b2 a1\n"),
        ),
    ]
}
