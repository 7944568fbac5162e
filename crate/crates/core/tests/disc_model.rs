//! The disc model against the string algebra on the tree corpus.

use std::collections::BTreeSet;

use gentle_core::corpus::{gentle_trees_up_to, random_gentle_trees};
use gentle_core::disc::*;
use gentle_core::homology::{syzygy_chain, default_cap};
use gentle_core::resolving::Catalog;
use gentle_core::strings::*;
use gentle_core::GentleQuiver;

fn models(max: usize) -> Vec<(GentleQuiver, DiscModel)> {
    gentle_trees_up_to(max)
        .into_iter()
        .map(|q| {
            let m = DiscModel::new(&q).unwrap();
            (q, m)
        })
        .collect()
}

fn sorted(mut v: Vec<Accordion>) -> Vec<Accordion> {
    v.sort();
    v
}

#[test]
fn accordions_biject_with_strings() {
    for (q, m) in models(6) {
        let (missing, extra) = m.bijection_defects().unwrap();
        assert!(missing.is_empty() && extra.is_empty(), "{}", q.serialize());
        assert_eq!(m.accordions().len(), enumerate_strings(&q).unwrap().len());
        for (i, a) in m.accordions().iter().enumerate() {
            let s = m.accordion_to_string(a);
            assert_eq!(&s, m.string_of(i));
            assert_eq!(m.string_to_accordion(&s).unwrap(), a);
        }
    }
}

#[test]
fn projective_side_enumeration_agrees() {
    for (q, m) in models(6) {
        let ends: Vec<_> = m.accordions().iter().map(|a| a.ends).collect();
        assert_eq!(m.via_projectives(Distinguished::After), ends, "{}", q.serialize());
    }
}

#[test]
fn projective_dissection_is_a_dissection() {
    for (q, m) in models(6) {
        let prj = m.projective_dissection();
        assert_eq!(prj.len(), q.num_vertices());
        assert_eq!(m.num_projective_cells(), q.num_vertices() + 1);
        let n = m.disc().size();
        for a in &prj {
            for b in &prj {
                assert!(!chords_cross(n, a.ends, b.ends));
            }
        }
    }
}

#[test]
fn crossings_count_morphisms() {
    for (q, m) in models(5) {
        let acc = m.accordions();
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in acc.iter().enumerate().skip(i + 1) {
                assert_eq!(m.crossing_count(a, b), m.crossing_count(b, a));
                if a.ends.0 == b.ends.0 || a.ends.0 == b.ends.1 || a.ends.1 == b.ends.0 || a.ends.1 == b.ends.1 {
                    continue;
                }
                let h = hom_basis(&q, m.string_of(i), m.string_of(j)).len()
                    + hom_basis(&q, m.string_of(j), m.string_of(i)).len();
                assert_eq!(m.crossing_count(a, b), h, "{} {:?} {:?}", q.serialize(), a.ends, b.ends);
            }
        }
    }
}

#[test]
fn geometric_extensions_match_algebra() {
    for (q, m) in models(5) {
        let all = enumerate_strings(&q).unwrap();
        let acc = |s: &StringWord| m.string_to_accordion(s).unwrap().clone();
        for r in &all {
            for u in &all {
                let alg: Vec<_> = ext_basis(&q, r, u)
                    .into_iter()
                    .map(|e| (e.kind, sorted(e.middle.iter().map(acc).collect())))
                    .collect();
                let geo: Vec<_> = geo_extensions(&m, &acc(r), &acc(u)).into_iter().map(|g| (g.kind, g.middle)).collect();
                assert_eq!(alg, geo, "{} {} {}", q.serialize(), r.to_text(&q), u.to_text(&q));
            }
        }
    }
}

#[test]
fn geometric_kernels_match_algebra() {
    for (q, m) in models(5) {
        let all = enumerate_strings(&q).unwrap();
        let acc = |s: &StringWord| m.string_to_accordion(s).unwrap().clone();
        for b in &all {
            for e in minimal_epis_onto(&q, b, &all, 3) {
                let sources: Vec<_> = e.source_strings().iter().map(&acc).collect();
                let alg = sorted(kernel_of_min_epi(&q, &e).iter().map(acc).collect());
                assert_eq!(geo_kernel(&m, &sources, &acc(b)).unwrap(), alg);
            }
        }
    }
}

#[test]
fn syzygy_fans_match_algebra() {
    for (q, m) in models(5) {
        let cap = default_cap(&q).unwrap();
        for (i, a) in m.accordions().iter().enumerate() {
            let alg: Vec<_> = syzygy_chain(&q, m.string_of(i), cap)
                .unwrap()
                .iter()
                .map(|t| sorted(t.iter().map(|s| m.string_to_accordion(s).unwrap().clone()).collect()))
                .collect();
            assert_eq!(geo_syzygy_fan(&m, a, cap).unwrap(), alg);
        }
    }
}

#[test]
fn neighbouring_projectives_geometric_equals_algebraic() {
    let qs = gentle_trees_up_to(5).into_iter().chain(random_gentle_trees(30, 6, 7, 3));
    for q in qs {
        let m = DiscModel::new(&q).unwrap();
        for i in 0..m.accordions().len() {
            if !m.is_projective_index(i) {
                assert_eq!(nproj(&m, i), nproj_algebraic(&m, i).unwrap(), "{}", q.serialize());
            }
        }
    }
}

#[test]
fn coloration_shape() {
    for (_, m) in models(5) {
        for (i, d) in m.accordions().iter().enumerate() {
            if m.is_projective_index(i) {
                continue;
            }
            let c = coloration(&m, i);
            let points: BTreeSet<usize> =
                nproj(&m, i).iter().flat_map(|&j| [m.accordions()[j].ends.0, m.accordions()[j].ends.1]).collect();
            assert_eq!(c.colors.keys().copied().collect::<BTreeSet<_>>(), points);
            for end in [d.ends.0, d.ends.1] {
                assert_ne!(c.color(end), Some(Color::Pink));
            }
            let (wl, wr) = w_points(&m, i);
            for (&p, &col) in &c.colors {
                if col == Color::Pink {
                    assert!(Some(p) == wl || Some(p) == wr);
                }
            }
        }
    }
}

#[test]
fn geometric_resolving_sets_on_small_trees() {
    for (q, m) in models(4) {
        let cat = Catalog::new(&q).unwrap();
        for i in 0..m.accordions().len() {
            if m.is_projective_index(i) {
                continue;
            }
            let truth: BTreeSet<usize> = cat
                .res_closure(&[m.string_of(i).clone()])
                .unwrap()
                .nonproj
                .iter()
                .map(|s| m.index_of_string(s).unwrap())
                .collect();
            let geo: BTreeSet<usize> = geo_res_set(&m, i).into_iter().filter(|&j| !m.is_projective_index(j)).collect();
            assert_eq!(geo, truth, "{} {:?}", q.serialize(), m.accordions()[i].ends);
            assert!(geo.contains(&i));
        }
    }
}
