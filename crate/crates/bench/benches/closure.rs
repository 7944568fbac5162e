use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use gentle_core::corpus::{gentle_trees_up_to, random_gentle_trees};
use gentle_core::disc::{geo_res_set, DiscModel};
use gentle_core::resolving::Catalog;

fn closures(c: &mut Criterion) {
    let trees = random_gentle_trees(10, 6, 7, 7);
    let catalogs: Vec<Catalog> = trees.iter().map(|q| Catalog::new(q).unwrap()).collect();

    c.bench_function("catalog/6-7 vertices", |b| {
        b.iter(|| {
            for q in &trees {
                black_box(Catalog::new(q).unwrap());
            }
        })
    });

    c.bench_function("res_closure/monogeneous", |b| {
        b.iter(|| {
            for cat in &catalogs {
                for s in cat.nonprojectives() {
                    black_box(cat.res_closure(std::slice::from_ref(&s)).unwrap());
                }
            }
        })
    });

    let models: Vec<DiscModel> = trees.iter().map(|q| DiscModel::new(q).unwrap()).collect();
    c.bench_function("geo_res_set/monogeneous", |b| {
        b.iter(|| {
            for m in &models {
                for i in (0..m.accordions().len()).filter(|&i| !m.is_projective_index(i)) {
                    black_box(geo_res_set(m, i));
                }
            }
        })
    });
}

fn lattices(c: &mut Criterion) {
    let catalogs: Vec<Catalog> = gentle_trees_up_to(4).iter().map(|q| Catalog::new(q).unwrap()).collect();
    c.bench_function("all_resolving/trees up to 4", |b| {
        b.iter(|| {
            for cat in &catalogs {
                black_box(cat.all_resolving());
            }
        })
    });
}

criterion_group!(benches, closures, lattices);
criterion_main!(benches);
