//! The acceptance suite: exact checks of the algebraic and geometric layers
//! against each other and against the linear-algebra oracle. Each criterion
//! returns a report with a case count and counterexample dumps.

use std::collections::BTreeSet;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::{fixtures, gentle_trees_up_to, random_gentle_trees};
use crate::disc::{
    geo_extensions, geo_kernel, geo_res_set, geo_syzygy_fan, Accordion, DiscModel, Distinguished,
};
use crate::error::Error;
use crate::homology::{default_cap, min_proj_resolution, syzygy_chain};
use crate::oracle::{matrix_realization, oracle_ext_dim, oracle_hom_dim, oracle_kernel_decomposition};
use crate::quiver::GentleQuiver;
use crate::resolving::{Catalog, ResolvingSet};
use crate::strings::{
    dim_vector, enumerate_strings, ext_basis, hom_basis, kernel_of_min_epi, minimal_epis_onto, StringWord,
};

/// Failure dumps kept per criterion; the count is always exact.
const MAX_DUMPS: usize = 5;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub cases: usize,
    pub failed: usize,
    pub dumps: Vec<String>,
}

impl CriterionReport {
    fn new(id: u8, title: &'static str) -> Self {
        CriterionReport { id, title, cases: 0, failed: 0, dumps: Vec::new() }
    }

    /// A criterion with no cases does not pass.
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failed == 0
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {verdict}: {} ({} cases, {} failed)", self.id, self.title, self.cases, self.failed)
    }

    fn fail(&mut self, dump: impl FnOnce() -> String) {
        self.failed += 1;
        if self.dumps.len() < MAX_DUMPS {
            self.dumps.push(dump());
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failed += other.failed;
        for d in other.dumps {
            if self.dumps.len() < MAX_DUMPS {
                self.dumps.push(d);
            }
        }
    }
}

/// Per-quiver partial result, merged in corpus order.
#[derive(Default)]
struct Tally {
    cases: usize,
    failed: usize,
    dumps: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, dump: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.dumps.len() < MAX_DUMPS {
                self.dumps.push(dump());
            }
        }
    }

    fn error(&mut self, q: &GentleQuiver, e: Error) {
        self.check(false, || format!("{}\nerror: {e}", q.serialize()));
    }
}

fn run_per_quiver(report: &mut CriterionReport, qs: &[GentleQuiver], f: impl Fn(&GentleQuiver) -> Tally + Sync + Send) {
    let tallies: Vec<Tally> = qs.par_iter().map(f).collect();
    for t in tallies {
        report.absorb(t);
    }
}

/// Quivers the suite runs on.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    /// Trees with at most 5 vertices.
    pub small_trees: Vec<GentleQuiver>,
    /// Trees with 6 or 7 vertices.
    pub large_trees: Vec<GentleQuiver>,
    /// Gentle quivers that are not trees.
    pub non_trees: Vec<GentleQuiver>,
}

impl Corpus {
    /// Every tree up to 5 vertices, 100 seeded random trees with 6 or 7
    /// vertices and the non-tree fixtures.
    pub fn standard() -> Self {
        Corpus {
            small_trees: gentle_trees_up_to(5),
            large_trees: random_gentle_trees(100, 6, 7, 7),
            non_trees: fixtures().into_iter().map(|(_, q)| q).collect(),
        }
    }

    /// Sorts arbitrary quivers into the three groups; trees with more than 7
    /// vertices are ignored.
    pub fn from_quivers(qs: Vec<GentleQuiver>) -> Self {
        let mut c = Corpus::default();
        for q in qs {
            if !q.is_tree() {
                c.non_trees.push(q);
            } else if q.num_vertices() <= 5 {
                c.small_trees.push(q);
            } else if q.num_vertices() <= 7 {
                c.large_trees.push(q);
            }
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        self.small_trees.is_empty() && self.large_trees.is_empty() && self.non_trees.is_empty()
    }

    fn trees(&self) -> Vec<GentleQuiver> {
        self.small_trees.iter().chain(&self.large_trees).cloned().collect()
    }

    /// Quivers with at most 4 vertices whose strings can be enumerated.
    fn tiny(&self) -> Vec<GentleQuiver> {
        self.small_trees
            .iter()
            .chain(&self.non_trees)
            .filter(|q| q.num_vertices() <= 4 && q.is_representation_finite())
            .cloned()
            .collect()
    }
}

fn set_text(q: &GentleQuiver, xs: &BTreeSet<StringWord>) -> String {
    let parts: Vec<String> = xs.iter().map(|s| s.to_text(q)).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Geometric resolving set of accordion `d`, as accordion indices.
pub type GeoResFn = dyn Fn(&DiscModel, usize) -> Vec<usize> + Sync;

pub fn criterion_1(c: &Corpus) -> CriterionReport {
    criterion_1_with(c, &geo_res_set)
}

/// Criterion 1 with a replaceable geometric side, so a corrupted version
/// can be checked to fail.
pub fn criterion_1_with(c: &Corpus, geo: &GeoResFn) -> CriterionReport {
    let mut r = CriterionReport::new(1, "geometric resolving set = resolving closure");
    run_per_quiver(&mut r, &c.trees(), |q| {
        let mut t = Tally::default();
        let (m, cat) = match (DiscModel::new(q), Catalog::new(q)) {
            (Ok(m), Ok(cat)) => (m, cat),
            (Err(e), _) | (_, Err(e)) => {
                t.error(q, e);
                return t;
            }
        };
        for i in (0..m.accordions().len()).filter(|&i| !m.is_projective_index(i)) {
            let delta = m.string_of(i);
            let truth: BTreeSet<StringWord> = match cat.res_closure(std::slice::from_ref(delta)) {
                Ok(s) => s.nonproj.into_iter().collect(),
                Err(e) => {
                    t.error(q, e);
                    continue;
                }
            };
            let found: BTreeSet<StringWord> = geo(&m, i)
                .into_iter()
                .filter(|&j| !m.is_projective_index(j))
                .map(|j| m.string_of(j).clone())
                .collect();
            t.check(found == truth, || {
                format!(
                    "{}\ndelta: {}\nresolving closure: {}\ngeometric set:     {}",
                    q.serialize(),
                    delta.to_text(q),
                    set_text(q, &truth),
                    set_text(q, &found)
                )
            });
        }
        t
    });
    r
}

pub fn criterion_2(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(2, "join-irreducibles = monogeneous closures");
    run_per_quiver(&mut r, &c.small_trees, |q| {
        let mut t = Tally::default();
        match Catalog::new(q) {
            Ok(cat) => {
                let ji = cat.all_resolving().join_irreducibles();
                let mono = cat.monogeneous();
                t.check(ji == mono, || {
                    let show = |s: &BTreeSet<ResolvingSet>| s.iter().map(|x| x.to_text(q)).collect::<Vec<_>>().join(" ");
                    format!("{}\njoin-irreducibles: {}\nmonogeneous:       {}", q.serialize(), show(&ji), show(&mono))
                });
            }
            Err(e) => t.error(q, e),
        }
        t
    });
    r
}

pub fn criterion_3(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(3, "closure by syzygies = closure by kernels on trees");
    run_per_quiver(&mut r, &c.small_trees, |q| {
        let mut t = Tally::default();
        let cat = match Catalog::new(q) {
            Ok(cat) => cat,
            Err(e) => {
                t.error(q, e);
                return t;
            }
        };
        let np = cat.nonprojectives();
        let mut seeds: Vec<Vec<StringWord>> = vec![Vec::new()];
        for (i, a) in np.iter().enumerate() {
            seeds.push(vec![a.clone()]);
            for b in &np[i + 1..] {
                seeds.push(vec![a.clone(), b.clone()]);
            }
        }
        for s in seeds {
            match (cat.res_closure(&s), cat.res_closure_tree(&s)) {
                (Ok(x), Ok(y)) => t.check(x == y, || {
                    let seeds: Vec<String> = s.iter().map(|w| w.to_text(q)).collect();
                    format!("{}\nseeds: {}\nkernels:  {}\nsyzygies: {}", q.serialize(), seeds.join(", "), x.to_text(q), y.to_text(q))
                }),
                (Err(e), _) | (_, Err(e)) => t.error(q, e),
            }
        }
        t
    });
    r
}

pub fn criterion_4(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(4, "extensions have at most two middle summands and add up");
    run_per_quiver(&mut r, &c.trees(), |q| {
        let mut t = Tally::default();
        let all = match enumerate_strings(q) {
            Ok(all) => all,
            Err(e) => {
                t.error(q, e);
                return t;
            }
        };
        for a in &all {
            for b in &all {
                for e in ext_basis(q, a, b) {
                    let mut lhs = dim_vector(q, &e.sub);
                    for (x, y) in lhs.iter_mut().zip(dim_vector(q, &e.quot)) {
                        *x += y;
                    }
                    let mut rhs = vec![0; q.num_vertices()];
                    for m in &e.middle {
                        for (x, y) in rhs.iter_mut().zip(dim_vector(q, m)) {
                            *x += y;
                        }
                    }
                    t.check((1..=2).contains(&e.middle.len()) && lhs == rhs, || {
                        let mid: Vec<String> = e.middle.iter().map(|m| m.to_text(q)).collect();
                        format!(
                            "{}\n0 -> {} -> {} -> {} -> 0",
                            q.serialize(),
                            e.sub.to_text(q),
                            mid.join(" + "),
                            e.quot.to_text(q)
                        )
                    });
                }
            }
        }
        t
    });
    r
}

pub fn criterion_5(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(5, "hom and ext dimensions match the oracle");
    run_per_quiver(&mut r, &c.tiny(), |q| {
        let mut t = Tally::default();
        let all = match enumerate_strings(q) {
            Ok(all) => all,
            Err(e) => {
                t.error(q, e);
                return t;
            }
        };
        let reps: Vec<_> = all.iter().map(|s| matrix_realization(q, s)).collect();
        for (a, ra) in all.iter().zip(&reps) {
            for (b, rb) in all.iter().zip(&reps) {
                let (h, oh) = (hom_basis(q, a, b).len(), oracle_hom_dim(q, ra, rb));
                let (e, oe) = (ext_basis(q, a, b).len(), oracle_ext_dim(q, ra, rb));
                t.check(h == oh && e == oe, || {
                    format!(
                        "{}\n({}, {}): hom {h} vs oracle {oh}, ext {e} vs oracle {oe}",
                        q.serialize(),
                        a.to_text(q),
                        b.to_text(q)
                    )
                });
            }
        }
        t
    });
    r
}

/// Widest cover enumerated for the kernel checks.
const EPI_SOURCES: usize = 3;

pub fn criterion_6(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(6, "kernels of minimal epimorphisms match the oracle");
    run_per_quiver(&mut r, &c.tiny(), |q| {
        let mut t = Tally::default();
        let all = match enumerate_strings(q) {
            Ok(all) => all,
            Err(e) => {
                t.error(q, e);
                return t;
            }
        };
        for b in &all {
            for e in minimal_epis_onto(q, b, &all, EPI_SOURCES) {
                let mut mine = kernel_of_min_epi(q, &e);
                mine.sort();
                match oracle_kernel_decomposition(q, &e, &all) {
                    Ok(mut theirs) => {
                        theirs.sort();
                        t.check(mine == theirs, || {
                            let show = |v: &[StringWord]| v.iter().map(|s| s.to_text(q)).collect::<Vec<_>>().join(" + ");
                            format!(
                                "{}\nepi onto {} from {}\nkernel {} vs oracle {}",
                                q.serialize(),
                                b.to_text(q),
                                show(&e.source_strings()),
                                show(&mine),
                                show(&theirs)
                            )
                        });
                    }
                    Err(err) => t.error(q, err),
                }
            }
        }
        t
    });
    r
}

pub fn criterion_7(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(7, "infinite global dimension iff a relation cycle");
    let qs: Vec<GentleQuiver> =
        c.trees().into_iter().chain(c.non_trees.iter().filter(|q| q.is_representation_finite()).cloned()).collect();
    run_per_quiver(&mut r, &qs, |q| {
        let mut t = Tally::default();
        let (all, cap) = match (enumerate_strings(q), default_cap(q)) {
            (Ok(all), Ok(cap)) => (all, cap),
            (Err(e), _) | (_, Err(e)) => {
                t.error(q, e);
                return t;
            }
        };
        let mut diverges = false;
        for s in &all {
            match min_proj_resolution(q, s, cap) {
                Ok(_) => {}
                Err(Error::CapExceeded(_)) => diverges = true,
                Err(e) => t.error(q, e),
            }
        }
        t.check(diverges == q.has_relation_cycle(), || {
            format!("{}\nrelation cycle: {}, some resolution diverges: {diverges}", q.serialize(), q.has_relation_cycle())
        });
        t
    });
    r
}

fn sorted_accordions(m: &DiscModel, xs: &[StringWord]) -> Result<Vec<Accordion>, Error> {
    let mut v: Vec<Accordion> = xs.iter().map(|s| m.string_to_accordion(s).cloned()).collect::<Result<_, _>>()?;
    v.sort();
    Ok(v)
}

fn check_disc(q: &GentleQuiver, t: &mut Tally) -> Result<(), Error> {
    let m = DiscModel::new(q)?;
    let all = enumerate_strings(q)?;
    let head = || q.serialize();
    let (missing, extra) = m.bijection_defects()?;
    t.check(missing.is_empty() && extra.is_empty() && m.accordions().len() == all.len(), || {
        format!("{}\n{} strings without accordion, {} extra accordions", head(), missing.len(), extra.len())
    });
    for (i, a) in m.accordions().iter().enumerate() {
        let back = m.string_to_accordion(&m.accordion_to_string(a))?;
        t.check(back == a && m.string_of(i) == &m.accordion_to_string(a), || {
            format!("{}\naccordion {:?} does not round-trip", head(), a.ends)
        });
    }
    let ends: Vec<(usize, usize)> = m.accordions().iter().map(|a| a.ends).collect();
    t.check(m.via_projectives(Distinguished::After) == ends, || {
        format!("{}\nprojective-side enumeration disagrees", head())
    });
    let prj = m.projective_dissection();
    let n = m.disc().size();
    let crossing = prj.iter().any(|a| prj.iter().any(|b| crate::disc::chords_cross(n, a.ends, b.ends)));
    t.check(
        prj.len() == q.num_vertices() && m.num_projective_cells() == q.num_vertices() + 1 && !crossing,
        || format!("{}\nprojective dissection is not a dissection", head()),
    );
    let acc = |s: &StringWord| m.string_to_accordion(s).cloned();
    for x in &all {
        for y in &all {
            let mut alg = Vec::new();
            for e in ext_basis(q, x, y) {
                alg.push((e.kind, sorted_accordions(&m, &e.middle)?));
            }
            let geo: Vec<_> = geo_extensions(&m, &acc(x)?, &acc(y)?).into_iter().map(|g| (g.kind, g.middle)).collect();
            t.check(alg == geo, || format!("{}\nextensions of {} by {} disagree", head(), x.to_text(q), y.to_text(q)));
        }
    }
    let cap = default_cap(q)?;
    for b in &all {
        for e in minimal_epis_onto(q, b, &all, EPI_SOURCES) {
            let sources: Vec<Accordion> = e.source_strings().iter().map(acc).collect::<Result<_, _>>()?;
            let alg = sorted_accordions(&m, &kernel_of_min_epi(q, &e))?;
            let geo = geo_kernel(&m, &sources, &acc(b)?);
            t.check(geo.as_ref() == Ok(&alg), || format!("{}\nkernel of an epi onto {} disagrees", head(), b.to_text(q)));
        }
        let mut alg = Vec::new();
        for layer in syzygy_chain(q, b, cap)? {
            alg.push(sorted_accordions(&m, &layer)?);
        }
        let geo = geo_syzygy_fan(&m, &acc(b)?, cap)?;
        t.check(geo == alg, || format!("{}\nsyzygies of {} disagree", head(), b.to_text(q)));
    }
    Ok(())
}

pub fn criterion_8(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(8, "disc model agrees with the string algebra");
    run_per_quiver(&mut r, &c.trees(), |q| {
        let mut t = Tally::default();
        if let Err(e) = check_disc(q, &mut t) {
            t.error(q, e);
        }
        t
    });
    r
}

/// Random subset pairs per quiver for the closure laws.
pub const CLOSURE_SAMPLES: usize = 1000;

pub fn criterion_9(c: &Corpus) -> CriterionReport {
    let mut r = CriterionReport::new(9, "resolving closure is a closure operator");
    run_per_quiver(&mut r, &c.small_trees, |q| {
        let mut t = Tally::default();
        let cat = match Catalog::new(q) {
            Ok(cat) => cat,
            Err(e) => {
                t.error(q, e);
                return t;
            }
        };
        let np = cat.nonprojectives();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..CLOSURE_SAMPLES {
            let x: Vec<StringWord> = np.iter().filter(|_| rng.gen_bool(0.25)).cloned().collect();
            let y: Vec<StringWord> = np.iter().filter(|s| x.contains(s) || rng.gen_bool(0.25)).cloned().collect();
            let laws = || -> Result<bool, Error> {
                let cx = cat.res_closure(&x)?;
                let cy = cat.res_closure(&y)?;
                let extensive = x.iter().all(|s| cx.contains(s));
                let idempotent = cat.res_closure(&cx.nonproj)? == cx;
                Ok(extensive && idempotent && cx.is_subset(&cy))
            };
            match laws() {
                Ok(ok) => t.check(ok, || {
                    let show = |v: &[StringWord]| v.iter().map(|s| s.to_text(q)).collect::<Vec<_>>().join(", ");
                    format!("{}\nX = {{{}}}\nY = {{{}}}", q.serialize(), show(&x), show(&y))
                }),
                Err(e) => t.error(q, e),
            }
        }
        t
    });
    r
}

/// The fixed lattices: linear A3 and A2, with the counts the criterion
/// expects.
pub fn criterion_10() -> CriterionReport {
    let mut r = CriterionReport::new(10, "fixed lattices of linear A3 (6 elements, 3 join-irreducible) and A2 (2, 1)");
    let cases = [
        ("vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3\nrelations:\n", 6, 3),
        ("vertices: 1 2\narrows: a: 1 -> 2\nrelations:\n", 2, 1),
    ];
    for (text, size, ji) in cases {
        r.cases += 1;
        let q = crate::quiver::parse_quiver(text).expect("fixture parses");
        let lat = Catalog::new(&q).expect("catalog").all_resolving();
        let (got_size, got_ji) = (lat.elements.len(), lat.join_irreducibles().len());
        if (got_size, got_ji) != (size, ji) {
            r.fail(|| {
                let elems: Vec<String> = lat.elements.iter().map(|e| e.to_text(&q)).collect();
                format!(
                    "{}\nexpected {size} elements and {ji} join-irreducibles, found {got_size} and {got_ji}: {}",
                    q.serialize(),
                    elems.join(" ")
                )
            });
        }
    }
    r
}

/// Runs every criterion on `c` in order.
pub fn run_all(c: &Corpus) -> Vec<CriterionReport> {
    vec![
        criterion_1(c),
        criterion_2(c),
        criterion_3(c),
        criterion_4(c),
        criterion_5(c),
        criterion_6(c),
        criterion_7(c),
        criterion_8(c),
        criterion_9(c),
        criterion_10(),
    ]
}

/// The pass/fail table followed by the counterexample dumps.
pub fn render(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{}", r.line());
    }
    for r in reports.iter().filter(|r| !r.dumps.is_empty()) {
        let _ = writeln!(out, "\ncounterexamples for criterion {}:", r.id);
        for d in &r.dumps {
            let _ = writeln!(out, "---\n{d}");
        }
    }
    out
}
