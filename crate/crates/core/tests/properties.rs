//! Property tests for exact invariants on random gentle trees.

use proptest::prelude::*;

use gentle_core::corpus::{fixtures, random_gentle_trees, tree_canonical_form};
use gentle_core::homology::{default_cap, min_proj_resolution};
use gentle_core::resolving::Catalog;
use gentle_core::strings::{dim_vector, enumerate_strings, ext_basis};
use gentle_core::{Error, GentleQuiver, QuiverData, StringWord};

fn tree(seed: u64) -> GentleQuiver {
    random_gentle_trees(1, 2, 6, seed).remove(0)
}

fn pick(all: &[StringWord], mask: u64) -> Vec<StringWord> {
    all.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, s)| s.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>(), mx in any::<u64>(), my in any::<u64>()) {
        let q = tree(seed);
        let cat = Catalog::new(&q).unwrap();
        let np = cat.nonprojectives();
        let x = pick(&np, mx);
        let y = pick(&np, mx | my);
        let cx = cat.res_closure(&x).unwrap();
        prop_assert!(x.iter().all(|s| cx.contains(s)));
        prop_assert_eq!(&cat.res_closure(&cx.nonproj).unwrap(), &cx);
        prop_assert!(cx.is_subset(&cat.res_closure(&y).unwrap()));
    }

    #[test]
    fn extensions_have_at_most_two_middles(seed in any::<u64>(), i in any::<usize>(), j in any::<usize>()) {
        let q = tree(seed);
        let all = enumerate_strings(&q).unwrap();
        let (a, b) = (&all[i % all.len()], &all[j % all.len()]);
        for e in ext_basis(&q, a, b) {
            prop_assert!((1..=2).contains(&e.middle.len()));
            let outer: Vec<usize> =
                dim_vector(&q, &e.sub).iter().zip(dim_vector(&q, &e.quot)).map(|(x, y)| x + y).collect();
            let mut mid = vec![0; q.num_vertices()];
            for m in &e.middle {
                for (x, y) in mid.iter_mut().zip(dim_vector(&q, m)) {
                    *x += y;
                }
            }
            prop_assert_eq!(outer, mid);
        }
    }

    #[test]
    fn canonical_form_ignores_names_and_order(seed in any::<u64>(), rot in 0usize..8) {
        let q = tree(seed);
        let QuiverData { mut vertices, mut arrows, relations } = q.to_data();
        let rename = |v: &str| format!("v{v}");
        let k = rot % vertices.len();
        vertices.rotate_left(k);
        let vertices = vertices.iter().map(|v| rename(v)).collect();
        if !arrows.is_empty() {
            let k = rot % arrows.len();
            arrows.rotate_left(k);
        }
        let arrows = arrows.into_iter().map(|(a, s, t)| (a, rename(&s), rename(&t))).collect();
        let p = GentleQuiver::from_data(&QuiverData { vertices, arrows, relations }).unwrap();
        prop_assert_eq!(tree_canonical_form(&p), tree_canonical_form(&q));
    }

    #[test]
    fn trees_have_finite_global_dimension(seed in any::<u64>()) {
        let q = tree(seed);
        let cap = default_cap(&q).unwrap();
        for s in enumerate_strings(&q).unwrap() {
            prop_assert!(min_proj_resolution(&q, &s, cap).is_ok());
        }
    }
}

#[test]
fn relation_cycle_resolutions_diverge() {
    let (_, q) = fixtures().into_iter().find(|(n, _)| *n == "relation-3-cycle").unwrap();
    assert!(q.has_relation_cycle() && q.is_representation_finite());
    let cap = default_cap(&q).unwrap();
    let diverging = enumerate_strings(&q)
        .unwrap()
        .iter()
        .filter(|s| matches!(min_proj_resolution(&q, s, cap), Err(Error::CapExceeded(_))))
        .count();
    assert!(diverging > 0);
}
