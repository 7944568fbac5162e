//! Independent linear-algebra oracle over exact rationals.
//!
//! Nothing here uses the string combinatorics beyond reading a string's
//! vertex sequence to build its matrix representation. Projectives are built
//! from relation-free paths, covers by lifting a basis of the top, and
//! `Ext¹` as degree-one cohomology of `Hom(P•, N)`.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{is_nonneg_integer, q_int, rank_of, Matrix, Q};
use crate::quiver::{ArrowId, GentleQuiver, VertexId};
use crate::strings::{HomPair, MinEpi, StringWord};

/// A representation: a vector space per vertex and a matrix per arrow
/// (`dim target × dim source`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// One matrix per vertex, `dim target × dim source`.
pub type Morphism = Vec<Matrix>;

impl Representation {
    pub fn zero(q: &GentleQuiver) -> Self {
        Representation {
            dims: vec![0; q.num_vertices()],
            maps: q.arrow_ids().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Checks matrix shapes and that every relation acts as zero.
    pub fn is_valid(&self, q: &GentleQuiver) -> bool {
        q.arrow_ids().all(|a| {
            let m = &self.maps[a.0];
            m.rows() == self.dims[q.target(a).0] && m.cols() == self.dims[q.source(a).0]
        }) && q.relations().all(|(a, b)| self.maps[b.0].mul(&self.maps[a.0]).is_zero())
    }
}

/// The standard matrix representation of a string module.
pub fn matrix_realization(q: &GentleQuiver, s: &StringWord) -> Representation {
    let verts = s.walk().vertices(q);
    let mut dims = vec![0; q.num_vertices()];
    let local: Vec<usize> = verts
        .iter()
        .map(|v| {
            dims[v.0] += 1;
            dims[v.0] - 1
        })
        .collect();
    let mut maps: Vec<Matrix> =
        q.arrow_ids().map(|a| Matrix::zeros(dims[q.target(a).0], dims[q.source(a).0])).collect();
    for (i, l) in s.walk().letters().iter().enumerate() {
        let (from, to) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        maps[l.arrow.0].set(local[to], local[from], Q::one());
    }
    Representation { dims, maps }
}

fn var_offsets(q: &GentleQuiver, m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(q.num_vertices());
    let mut total = 0;
    for v in 0..q.num_vertices() {
        offs.push(total);
        total += n.dims[v] * m.dims[v];
    }
    (offs, total)
}

/// Basis of `Hom(M, N)` from the intertwiner system `N_a f_s = f_t M_a`.
pub fn hom_space(q: &GentleQuiver, m: &Representation, n: &Representation) -> Vec<Morphism> {
    let (offs, nvars) = var_offsets(q, m, n);
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| offs[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for a in q.arrow_ids() {
        let (s, t) = (q.source(a).0, q.target(a).0);
        let (ma, na) = (&m.maps[a.0], &n.maps[a.0]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![Q::zero(); nvars];
                for k in 0..n.dims[s] {
                    row[var(s, k, j)] += na.get(i, k);
                }
                for k in 0..m.dims[t] {
                    row[var(t, i, k)] -= ma.get(k, j);
                }
                rows.push(row);
            }
        }
    }
    let mut sys = Matrix::zeros(rows.len(), nvars);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            sys.set(i, j, x);
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|x| {
            (0..q.num_vertices())
                .map(|v| {
                    let mut f = Matrix::zeros(n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            f.set(r, c, x[var(v, r, c)].clone());
                        }
                    }
                    f
                })
                .collect()
        })
        .collect()
}

pub fn is_morphism(q: &GentleQuiver, m: &Representation, n: &Representation, f: &Morphism) -> bool {
    q.arrow_ids().all(|a| {
        let (s, t) = (q.source(a).0, q.target(a).0);
        n.maps[a.0].mul(&f[s]) == f[t].mul(&m.maps[a.0])
    })
}

pub fn compose(f: &Morphism, g: &Morphism) -> Morphism {
    f.iter().zip(g).map(|(a, b)| a.mul(b)).collect()
}

fn flatten(f: &Morphism) -> Vec<Q> {
    f.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

pub fn oracle_hom_dim(q: &GentleQuiver, m: &Representation, n: &Representation) -> usize {
    hom_space(q, m, n).len()
}

/// Relation-free paths starting at `v`, as arrow sequences.
fn paths_from(q: &GentleQuiver, v: VertexId) -> Vec<Vec<ArrowId>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        let p: Vec<ArrowId> = out[i].clone();
        let end = p.last().map_or(v, |&a| q.target(a));
        for &b in q.outgoing(end) {
            if p.last().is_none_or(|&a| !q.is_relation(a, b)) {
                let mut np = p.clone();
                np.push(b);
                out.push(np);
            }
        }
        i += 1;
    }
    out
}

fn path_end(q: &GentleQuiver, v: VertexId, p: &[ArrowId]) -> VertexId {
    p.last().map_or(v, |&a| q.target(a))
}

/// The indecomposable projective at `v`, with the path basis.
pub fn projective_rep(q: &GentleQuiver, v: VertexId) -> Representation {
    let paths = paths_from(q, v);
    let mut dims = vec![0; q.num_vertices()];
    let local: Vec<usize> = paths
        .iter()
        .map(|p| {
            let e = path_end(q, v, p).0;
            dims[e] += 1;
            dims[e] - 1
        })
        .collect();
    let mut maps: Vec<Matrix> =
        q.arrow_ids().map(|a| Matrix::zeros(dims[q.target(a).0], dims[q.source(a).0])).collect();
    for (i, p) in paths.iter().enumerate() {
        for (j, p2) in paths.iter().enumerate() {
            if p2.len() == p.len() + 1 && p2[..p.len()] == p[..] {
                let b = *p2.last().unwrap();
                maps[b.0].set(local[j], local[i], Q::one());
            }
        }
    }
    Representation { dims, maps }
}

fn direct_sum(q: &GentleQuiver, parts: &[Representation]) -> Representation {
    let mut dims = vec![0; q.num_vertices()];
    for p in parts {
        for (d, x) in dims.iter_mut().zip(&p.dims) {
            *d += x;
        }
    }
    let maps = q
        .arrow_ids()
        .map(|a| {
            let (s, t) = (q.source(a).0, q.target(a).0);
            let mut m = Matrix::zeros(dims[t], dims[s]);
            let (mut ro, mut co) = (0, 0);
            for p in parts {
                let pm = &p.maps[a.0];
                for i in 0..pm.rows() {
                    for j in 0..pm.cols() {
                        m.set(ro + i, co + j, pm.get(i, j).clone());
                    }
                }
                ro += p.dims[t];
                co += p.dims[s];
            }
            m
        })
        .collect();
    Representation { dims, maps }
}

/// Morphism from a direct sum given by its components.
fn hstack_morphism(q: &GentleQuiver, target: &Representation, parts: &[(&Representation, Morphism)]) -> Morphism {
    (0..q.num_vertices())
        .map(|v| {
            let cols: usize = parts.iter().map(|(r, _)| r.dims[v]).sum();
            let mut m = Matrix::zeros(target.dims[v], cols);
            let mut co = 0;
            for (r, f) in parts {
                for i in 0..target.dims[v] {
                    for j in 0..r.dims[v] {
                        m.set(i, co + j, f[v].get(i, j).clone());
                    }
                }
                co += r.dims[v];
            }
            m
        })
        .collect()
}

fn path_matrix(m: &Representation, v: VertexId, p: &[ArrowId]) -> Matrix {
    let mut acc = Matrix::identity(m.dims[v.0]);
    for &a in p {
        acc = m.maps[a.0].mul(&acc);
    }
    acc
}

/// A projective cover `P ↠ M` obtained by lifting a basis of the top of `M`.
pub fn projective_cover_rep(q: &GentleQuiver, m: &Representation) -> (Representation, Morphism) {
    let mut parts: Vec<(Representation, Morphism)> = Vec::new();
    for v in q.vertex_ids() {
        let d = m.dims[v.0];
        if d == 0 {
            continue;
        }
        let mut span: Vec<Vec<Q>> = Vec::new();
        for &a in q.incoming(v) {
            let ma = &m.maps[a.0];
            for j in 0..ma.cols() {
                span.push(ma.column(j));
            }
        }
        let mut rank = rank_of(&span);
        for i in 0..d {
            let mut e = vec![Q::zero(); d];
            e[i] = Q::one();
            span.push(e.clone());
            let r = rank_of(&span);
            if r == rank {
                span.pop();
                continue;
            }
            rank = r;
            let p = projective_rep(q, v);
            let paths = paths_from(q, v);
            let mut cols: Vec<Vec<Vec<Q>>> = vec![Vec::new(); q.num_vertices()];
            for path in &paths {
                let w = path_end(q, v, path);
                let pm = path_matrix(m, v, path);
                let img: Vec<Q> = (0..m.dims[w.0])
                    .map(|r| (0..d).map(|c| pm.get(r, c) * &e[c]).fold(Q::zero(), |x, y| x + y))
                    .collect();
                cols[w.0].push(img);
            }
            let f: Morphism = q
                .vertex_ids()
                .map(|w| Matrix::from_columns(m.dims[w.0], &cols[w.0]))
                .collect();
            debug_assert!(is_morphism(q, &p, m, &f));
            parts.push((p, f));
        }
    }
    let reps: Vec<Representation> = parts.iter().map(|(p, _)| p.clone()).collect();
    let sum = direct_sum(q, &reps);
    let comps: Vec<(&Representation, Morphism)> = parts.iter().map(|(p, f)| (p, f.clone())).collect();
    let f = hstack_morphism(q, m, &comps);
    (sum, f)
}

/// The kernel of `f: P → M` as a representation with its inclusion into `P`.
pub fn kernel_rep(q: &GentleQuiver, p: &Representation, f: &Morphism) -> (Representation, Morphism) {
    let bases: Vec<Matrix> = q
        .vertex_ids()
        .map(|v| {
            Matrix::from_columns(p.dims[v.0], &f[v.0].nullspace())
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = q
        .arrow_ids()
        .map(|a| {
            let (s, t) = (q.source(a).0, q.target(a).0);
            let img = p.maps[a.0].mul(&bases[s]);
            let cols: Vec<Vec<Q>> = (0..img.cols())
                .map(|j| bases[t].solve_unique(&img.column(j)).expect("kernel not a subrepresentation"))
                .collect();
            Matrix::from_columns(dims[t], &cols)
        })
        .collect();
    (Representation { dims, maps }, bases)
}

/// `dim Ext¹(M, N)` from `P2 → P1 → P0 → M` built by repeated covers.
pub fn oracle_ext_dim(q: &GentleQuiver, m: &Representation, n: &Representation) -> usize {
    let (p0, f0) = projective_cover_rep(q, m);
    let (k0, i0) = kernel_rep(q, &p0, &f0);
    if k0.is_zero() {
        return 0;
    }
    let (p1, g1) = projective_cover_rep(q, &k0);
    let d1 = compose(&i0, &g1);
    let (k1, i1) = kernel_rep(q, &p1, &g1);
    let hom1 = hom_space(q, &p1, n);
    let boundary: Vec<Vec<Q>> = hom_space(q, &p0, n).iter().map(|h| flatten(&compose(h, &d1))).collect();
    let cycles = if k1.is_zero() {
        hom1.len()
    } else {
        let (_, g2) = projective_cover_rep(q, &k1);
        let d2 = compose(&i1, &g2);
        let images: Vec<Vec<Q>> = hom1.iter().map(|h| flatten(&compose(h, &d2))).collect();
        hom1.len() - rank_of(&images)
    };
    cycles - rank_of(&boundary)
}

/// The graph map of a hom-basis element.
pub fn hom_pair_morphism(q: &GentleQuiver, rho: &StringWord, rho2: &StringWord, h: &HomPair) -> Morphism {
    let local = |s: &StringWord| {
        let mut seen = vec![0usize; q.num_vertices()];
        s.walk()
            .vertices(q)
            .into_iter()
            .map(|v| {
                seen[v.0] += 1;
                (v, seen[v.0] - 1)
            })
            .collect::<Vec<_>>()
    };
    let (src, dst) = (local(rho), local(rho2));
    let m = matrix_realization(q, rho);
    let n = matrix_realization(q, rho2);
    let mut f: Morphism = q.vertex_ids().map(|v| Matrix::zeros(n.dims[v.0], m.dims[v.0])).collect();
    for pos in h.top.start..=h.top.end {
        let (v, i) = src[pos];
        let (w, j) = dst[h.image_of(pos)];
        assert_eq!(v, w, "hom pair does not preserve vertices");
        f[v.0].set(j, i, Q::one());
    }
    f
}

/// Decomposes the explicit kernel of `e` by solving the multiplicity system
/// `dim Hom(M(ν), Ker) = Σ_μ m_μ dim Hom(M(ν), M(μ))` over all strings.
pub fn oracle_kernel_decomposition(
    q: &GentleQuiver,
    e: &MinEpi,
    all: &[StringWord],
) -> Result<Vec<StringWord>, Error> {
    let target = matrix_realization(q, &e.target);
    let reps: Vec<Representation> = e.sources.iter().map(|(s, _)| matrix_realization(q, s)).collect();
    let comps: Vec<(&Representation, Morphism)> = e
        .sources
        .iter()
        .zip(&reps)
        .map(|((s, h), r)| {
            let f = hom_pair_morphism(q, s, &e.target, h);
            assert!(is_morphism(q, r, &target, &f), "hom pair is not a morphism");
            (r, f)
        })
        .collect();
    let sum = direct_sum(q, &reps);
    let f = hstack_morphism(q, &target, &comps);
    for v in q.vertex_ids() {
        assert_eq!(f[v.0].rank(), target.dims[v.0], "map is not onto");
    }
    let (ker, _) = kernel_rep(q, &sum, &f);
    decompose(q, &ker, all)
}

/// Multiplicities of the indecomposable summands of `m`.
pub fn decompose(q: &GentleQuiver, m: &Representation, all: &[StringWord]) -> Result<Vec<StringWord>, Error> {
    let mats: Vec<Representation> = all.iter().map(|s| matrix_realization(q, s)).collect();
    let n = all.len();
    let mut h = Matrix::zeros(n, n);
    let mut rhs = Vec::with_capacity(n);
    for (i, nu) in mats.iter().enumerate() {
        for (j, mu) in mats.iter().enumerate() {
            h.set(i, j, q_int(oracle_hom_dim(q, nu, mu) as i64));
        }
        rhs.push(q_int(oracle_hom_dim(q, nu, m) as i64));
    }
    let mult = h.solve_unique(&rhs).ok_or(Error::SingularSystem)?;
    let mut out = Vec::new();
    for (s, x) in all.iter().zip(mult) {
        if !is_nonneg_integer(&x) {
            return Err(Error::SingularSystem);
        }
        let k: usize = x.to_integer().try_into().map_err(|_| Error::SingularSystem)?;
        out.extend(std::iter::repeat_n(s.clone(), k));
    }
    Ok(out)
}

/// `M` is indecomposable iff `End(M)` is local iff the trace form on
/// `End(M)` has rank one (characteristic zero).
pub fn is_indecomposable(q: &GentleQuiver, m: &Representation) -> bool {
    let end = hom_space(q, m, m);
    let trace = |f: &Morphism| f.iter().map(Matrix::trace).fold(Q::zero(), |a, b| a + b);
    let gram: Vec<Vec<Q>> = end
        .iter()
        .map(|x| end.iter().map(|y| trace(&compose(x, y))).collect())
        .collect();
    rank_of(&gram) == 1
}

/// For indecomposable `M`, `N`: isomorphic iff some composite `N → M → N`
/// has non-zero trace.
pub fn are_isomorphic(q: &GentleQuiver, m: &Representation, n: &Representation) -> bool {
    if m.dims != n.dims {
        return false;
    }
    let mn = hom_space(q, m, n);
    let nm = hom_space(q, n, m);
    mn.iter().any(|f| nm.iter().any(|g| !compose(f, g).iter().map(Matrix::trace).fold(Q::zero(), |a, b| a + b).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{enumerate_strings, fixtures::*, minimal_epis_onto};

    fn s(q: &GentleQuiver, t: &str) -> StringWord {
        StringWord::parse(q, t).unwrap()
    }

    #[test]
    fn realizations() {
        let q = a2();
        let r = matrix_realization(&q, &s(&q, "a+"));
        assert_eq!(r.dims, vec![1, 1]);
        assert_eq!(r.maps[0].get(0, 0), &Q::one());
        let q3 = a3();
        let e2 = matrix_realization(&q3, &s(&q3, "e(2)"));
        assert_eq!(e2.dims, vec![0, 1, 0]);
        assert!(e2.maps.iter().all(Matrix::is_zero));
        let p1 = matrix_realization(&q3, &s(&q3, "a+ b+"));
        assert_eq!(p1.dims, vec![1, 1, 1]);
        assert!(p1.maps.iter().all(|m| m.get(0, 0) == &Q::one()));
    }

    #[test]
    fn hom_and_ext_examples() {
        let q = a2();
        let alpha = matrix_realization(&q, &s(&q, "a+"));
        let s1 = matrix_realization(&q, &s(&q, "e(1)"));
        assert_eq!(oracle_hom_dim(&q, &alpha, &s1), 1);
        let q3 = a3();
        let s1 = matrix_realization(&q3, &s(&q3, "e(1)"));
        let p2 = matrix_realization(&q3, &s(&q3, "b+"));
        assert_eq!(oracle_ext_dim(&q3, &s1, &p2), 1);
        let a = matrix_realization(&q3, &s(&q3, "a+"));
        let b = matrix_realization(&q3, &s(&q3, "b+"));
        assert_eq!(oracle_ext_dim(&q3, &a, &b), 1);
    }

    #[test]
    fn projectives_match_strings() {
        let q = a3_rel();
        assert_eq!(projective_rep(&q, VertexId(0)), matrix_realization(&q, &s(&q, "a+")));
    }

    #[test]
    fn kernel_of_simple_cover() {
        let q = a2();
        let all = enumerate_strings(&q).unwrap();
        let e = &minimal_epis_onto(&q, &s(&q, "e(1)"), &[s(&q, "a+")], 1)[0];
        assert_eq!(oracle_kernel_decomposition(&q, e, &all).unwrap(), vec![s(&q, "e(2)")]);
    }

    #[test]
    fn strings_are_pairwise_distinct_indecomposables() {
        for q in [a2(), a3(), a3_rel(), sink()] {
            let all = enumerate_strings(&q).unwrap();
            let reps: Vec<Representation> = all.iter().map(|x| matrix_realization(&q, x)).collect();
            for (i, r) in reps.iter().enumerate() {
                assert!(r.is_valid(&q));
                assert!(is_indecomposable(&q, r));
                for r2 in &reps[..i] {
                    assert!(!are_isomorphic(&q, r, r2));
                }
            }
        }
    }

    #[test]
    fn decomposable_is_detected() {
        let q = a2();
        let sum = direct_sum(&q, &[matrix_realization(&q, &s(&q, "e(1)")), matrix_realization(&q, &s(&q, "e(2)"))]);
        assert!(!is_indecomposable(&q, &sum));
    }
}
