use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use serde_json::{json, Value};

use gentle_core::acceptance::{render, run_all, Corpus};
use gentle_core::corpus::{fixtures, gentle_trees_up_to};
use gentle_core::disc::{coloration, geo_res_set, render_svg, DiscModel, Overlay, Role};
use gentle_core::homology::{default_cap, gldim, min_proj_resolution};
use gentle_core::resolving::{Catalog, ResolvingSet};
use gentle_core::strings::{enumerate_strings, ext_basis, hom_basis, kernel_of_min_epi, minimal_epis_onto, ExtKind};
use gentle_core::{parse_quiver, Error, GentleQuiver, StringWord};

use crate::{Cli, Failure, Verb};

/// Widest cover listed by `kernel`.
const EPI_SOURCES: usize = 3;

const QUIVER_EXT: &str = "quiver";

pub fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match cli.verb {
        Verb::GenCorpus => return gen_corpus(cli),
        Verb::CheckOracle => return check_oracle(cli),
        _ => {}
    }
    let q = load(required_path(cli)?)?;
    match cli.verb {
        Verb::Validate => validate(&q),
        Verb::Strings => strings(cli, &q),
        Verb::Hom => hom(cli, &q),
        Verb::Ext => ext(cli, &q),
        Verb::Kernel => kernel(cli, &q),
        Verb::Resolve => resolve(cli, &q),
        Verb::ResClosure => res_closure(cli, &q),
        Verb::ResPoset => res_poset(cli, &q),
        Verb::JoinIrreducibles => join_irreducibles(cli, &q),
        Verb::Disc => disc(cli, &q),
        Verb::GeoRes => geo_res(cli, &q),
        Verb::CheckOracle | Verb::GenCorpus => unreachable!(),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn required_path(cli: &Cli) -> Result<&Path, Failure> {
    cli.path.as_deref().ok_or_else(|| Failure::Usage("missing quiver file".into()))
}

fn load(path: &Path) -> Result<GentleQuiver, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_quiver(&text).with_context(|| format!("in {}", path.display()))?)
}

fn seeds(cli: &Cli, q: &GentleQuiver, want: Option<usize>) -> Result<Vec<StringWord>, Failure> {
    match want {
        Some(n) if cli.seeds.len() != n => {
            return Err(Failure::Usage(format!("expected {n} --seed argument(s), got {}", cli.seeds.len())))
        }
        None if cli.seeds.is_empty() => return Err(Failure::Usage("expected at least one --seed".into())),
        _ => {}
    }
    Ok(cli.seeds.iter().map(|s| StringWord::parse(q, s)).collect::<Result<_, _>>()?)
}

fn texts(q: &GentleQuiver, xs: &[StringWord]) -> Vec<String> {
    xs.iter().map(|s| s.to_text(q)).collect()
}

fn write_json(cli: &Cli, v: &Value) -> Result<(), Failure> {
    if let Some(p) = &cli.json {
        fs::write(p, serde_json::to_string_pretty(v)? + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn write_file(path: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(q: &GentleQuiver) -> Result<(), Failure> {
    let finite = q.is_representation_finite();
    let gl = if finite {
        gldim(q)?.to_string()
    } else if q.has_relation_cycle() {
        "infinite".into()
    } else {
        "finite".into()
    };
    println!("gentle tree: {}; rep-finite: {}; gldim: {gl}", yes(q.is_tree()), yes(finite));
    Ok(())
}

fn strings(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let all = texts(q, &enumerate_strings(q)?);
    for s in &all {
        println!("{s}");
    }
    write_json(cli, &json!(all))
}

fn hom(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let s = seeds(cli, q, Some(2))?;
    let basis = hom_basis(q, &s[0], &s[1]);
    println!("dim Hom({}, {}) = {}", s[0].to_text(q), s[1].to_text(q), basis.len());
    let pairs: Vec<Value> = basis
        .iter()
        .map(|h| {
            let (t, b) = (h.top, h.bottom);
            println!("  top [{}, {}] -> bottom [{}, {}]{}", t.start, t.end, b.start, b.end, if h.flip { " reversed" } else { "" });
            json!({"top": [t.start, t.end], "bottom": [b.start, b.end], "reversed": h.flip})
        })
        .collect();
    write_json(cli, &json!({"source": s[0].to_text(q), "target": s[1].to_text(q), "dim": basis.len(), "basis": pairs}))
}

fn ext(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let s = seeds(cli, q, Some(2))?;
    let basis = ext_basis(q, &s[0], &s[1]);
    println!("dim Ext1({}, {}) = {}", s[0].to_text(q), s[1].to_text(q), basis.len());
    let seqs: Vec<Value> = basis
        .iter()
        .map(|e| {
            let kind = match e.kind {
                ExtKind::Arrow => "arrow",
                ExtKind::Overlap => "overlap",
            };
            let mid = texts(q, &e.middle);
            println!("  0 -> {} -> {} -> {} -> 0 ({kind})", e.sub.to_text(q), mid.join(" + "), e.quot.to_text(q));
            json!({"sub": e.sub.to_text(q), "middle": mid, "quot": e.quot.to_text(q), "kind": kind})
        })
        .collect();
    write_json(cli, &json!({"first": s[0].to_text(q), "second": s[1].to_text(q), "dim": basis.len(), "sequences": seqs}))
}

fn kernel(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let s = seeds(cli, q, Some(1))?;
    let all = enumerate_strings(q)?;
    let mut out = Vec::new();
    for e in minimal_epis_onto(q, &s[0], &all, EPI_SOURCES) {
        if e.is_identity() {
            continue;
        }
        let src = texts(q, &e.source_strings());
        let ker = texts(q, &kernel_of_min_epi(q, &e));
        let shown = if ker.is_empty() { "0".to_string() } else { ker.join(" + ") };
        println!("{} -> {}: kernel {shown}", src.join(" + "), s[0].to_text(q));
        out.push(json!({"sources": src, "kernel": ker}));
    }
    write_json(cli, &json!({"target": s[0].to_text(q), "epis": out}))
}

fn resolve(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let cap = default_cap(q)?;
    let mut out = Vec::new();
    for s in seeds(cli, q, None)? {
        println!("{}:", s.to_text(q));
        match min_proj_resolution(q, &s, cap) {
            Ok(r) => {
                for (i, t) in r.terms.iter().enumerate() {
                    println!("  P{i} = {}", texts(q, t).join(" + "));
                }
                println!("  pdim = {}", r.length());
                let terms: Vec<Vec<String>> = r.terms.iter().map(|t| texts(q, t)).collect();
                out.push(json!({"string": s.to_text(q), "terms": terms, "pdim": r.length()}));
            }
            Err(Error::CapExceeded(_)) => {
                println!("  infinite (no termination after {cap} steps)");
                out.push(json!({"string": s.to_text(q), "terms": null, "pdim": "infinite"}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    write_json(cli, &json!(out))
}

fn set_json(q: &GentleQuiver, s: &ResolvingSet) -> Value {
    json!(texts(q, &s.nonproj))
}

fn res_closure(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let s = seeds(cli, q, None)?;
    let r = Catalog::new(q)?.res_closure(&s)?;
    for x in &r.nonproj {
        println!("{}", x.to_text(q));
    }
    write_json(cli, &set_json(q, &r))
}

fn res_poset(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let lat = Catalog::new(q)?.all_resolving();
    let ji = lat.join_irreducible_indices();
    println!("{} resolving subcategories, {} join-irreducible", lat.elements.len(), ji.len());
    for (i, e) in lat.elements.iter().enumerate() {
        println!("  {i}: {}{}", e.to_text(q), if ji.contains(&i) { " (join-irreducible)" } else { "" });
    }
    for (a, b) in &lat.hasse {
        println!("  {a} < {b}");
    }
    write_file(&cli.dot, &lat.to_dot(q))?;
    let elems: Vec<Value> = lat.elements.iter().map(|e| set_json(q, e)).collect();
    write_json(cli, &json!({"elements": elems, "hasse": lat.hasse, "join_irreducible": ji}))
}

fn join_irreducibles(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let ji = Catalog::new(q)?.all_resolving().join_irreducibles();
    for e in &ji {
        println!("{}", e.to_text(q));
    }
    let v: Vec<Value> = ji.iter().map(|e| set_json(q, e)).collect();
    write_json(cli, &json!(v))
}

fn disc(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let m = DiscModel::new(q)?;
    let d = m.disc();
    println!("{} boundary points, {} green arcs, {} accordions", d.size(), d.num_arcs(), m.accordions().len());
    for v in q.vertex_ids() {
        let (a, b) = d.arc(v);
        println!("  arc {}: {a} - {b}", d.label(v));
    }
    for (i, a) in m.accordions().iter().enumerate() {
        let p = if m.is_projective_index(i) { " (projective)" } else { "" };
        println!("  accordion {} - {}: {}{p}", a.ends.0, a.ends.1, m.string_of(i).to_text(q));
    }
    let chords = m.projective_dissection().iter().map(|a| (a.ends, Role::Proj)).collect();
    write_file(&cli.svg, &render_svg(d, &Overlay { chords, coloration: None }))?;
    write_json(cli, &serde_json::to_value(d.to_json())?)
}

fn geo_res(cli: &Cli, q: &GentleQuiver) -> Result<(), Failure> {
    let s = seeds(cli, q, Some(1))?;
    let m = DiscModel::new(q)?;
    let i = m.index_of_string(&s[0]).context("string has no accordion")?;
    if m.is_projective_index(i) {
        return Err(Error::Projective(s[0].to_text(q)).into());
    }
    let c = coloration(&m, i);
    let set = geo_res_set(&m, i);
    let members: Vec<StringWord> =
        set.iter().filter(|&&j| !m.is_projective_index(j)).map(|&j| m.string_of(j).clone()).collect();
    for x in &members {
        println!("{}", x.to_text(q));
    }
    let colors: Vec<Value> = c.colors.iter().map(|(p, col)| json!([p, col.name()])).collect();
    let shown: Vec<String> = c.colors.iter().map(|(p, col)| format!("{p}:{}", col.name())).collect();
    println!("coloration: {}", shown.join(" "));

    let mut chords: Vec<_> = m.projective_dissection().iter().map(|a| (a.ends, Role::Proj)).collect();
    chords.extend(set.iter().filter(|&&j| j != i).map(|&j| (m.accordions()[j].ends, Role::ResMember)));
    chords.push((m.accordions()[i].ends, Role::Delta));
    write_file(&cli.svg, &render_svg(m.disc(), &Overlay { chords, coloration: Some(c) }))?;
    write_json(cli, &json!({"delta": s[0].to_text(q), "members": texts(q, &members), "coloration": colors}))
}

/// Quiver files in `path` (sorted), or `path` itself.
fn corpus_files(path: &Path) -> Result<Vec<PathBuf>, Failure> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(path).with_context(|| format!("reading {}", path.display()))? {
        let p = entry?.path();
        if p.extension().is_some_and(|e| e == QUIVER_EXT) {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}

fn check_oracle(cli: &Cli) -> Result<ExitCode, Failure> {
    let files = corpus_files(required_path(cli)?)?;
    let qs = files.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    let corpus = Corpus::from_quivers(qs);
    let reports = run_all(&corpus);
    println!("{} quiver files", files.len());
    print!("{}", render(&reports));
    let v: Vec<Value> = reports
        .iter()
        .map(|r| json!({"criterion": r.id, "title": r.title, "cases": r.cases, "failed": r.failed, "passed": r.passed(), "counterexamples": r.dumps}))
        .collect();
    write_json(cli, &json!(v))?;
    if !corpus.is_empty() && reports.iter().all(|r| r.passed()) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn gen_corpus(cli: &Cli) -> Result<ExitCode, Failure> {
    let dir = required_path(cli)?;
    if cli.max_vertices == 0 {
        return Err(Failure::Usage("--max-vertices must be at least 1".into()));
    }
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let trees = gentle_trees_up_to(cli.max_vertices);
    let mut count = [0usize; 64];
    for q in &trees {
        let n = q.num_vertices();
        count[n] += 1;
        let name = format!("tree-{n}v-{:04}.{QUIVER_EXT}", count[n]);
        fs::write(dir.join(name), q.serialize())?;
    }
    let fx = fixtures();
    for (name, q) in &fx {
        fs::write(dir.join(format!("fixture-{name}.{QUIVER_EXT}")), q.serialize())?;
    }
    println!("wrote {} trees and {} fixtures to {}", trees.len(), fx.len(), dir.display());
    Ok(ExitCode::SUCCESS)
}
