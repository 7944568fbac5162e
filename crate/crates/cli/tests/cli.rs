use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const A2: &str = "vertices: 1 2\narrows: a: 1 -> 2\nrelations:\n";
const A3: &str = "vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3\nrelations:\n";

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_a2() {
    let dir = tempfile::tempdir().unwrap();
    let o = gentle(&["validate", &file(dir.path(), "a2.quiver", A2)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "gentle tree: yes; rep-finite: yes; gldim: 1\n");
}

#[test]
fn validate_rejects_non_gentle() {
    let dir = tempfile::tempdir().unwrap();
    let bad = "vertices: 1 2 3 4\narrows: a: 1 -> 4; b: 2 -> 4; c: 3 -> 4\nrelations:\n";
    let o = gentle(&["validate", &file(dir.path(), "bad.quiver", bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a gentle quiver"));
}

#[test]
fn res_closure_of_e2_is_itself() {
    let dir = tempfile::tempdir().unwrap();
    let o = gentle(&["res-closure", &file(dir.path(), "a3.quiver", A3), "--seed", "e(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "e(2)\n");
}

#[test]
fn json_strings_feed_back_as_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let q = file(dir.path(), "a3.quiver", A3);
    let json = dir.path().join("s.json");
    let o = gentle(&["res-closure", &q, "--seed", "a+", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let strings: Vec<String> = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let mut args = vec!["res-closure".to_string(), q.clone()];
    for s in &strings {
        args.extend(["--seed".to_string(), s.clone()]);
    }
    let again = gentle(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn res_poset_dot_edges_go_up() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let o = gentle(&["res-poset", &file(dir.path(), "a3.quiver", A3), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dot).unwrap();
    // Linear A3 has 5 resolving subcategories, 3 of them join-irreducible.
    assert_eq!(text.matches("label=").count(), 5);
    assert_eq!(text.matches("joinirreducible=true").count(), 3);
    for line in text.lines().filter(|l| l.contains("->")) {
        let ids: Vec<usize> = line.trim().trim_end_matches(';').split(" -> ").map(|n| n[1..].parse().unwrap()).collect();
        assert!(ids[0] < ids[1]);
    }
}

#[test]
fn geo_res_writes_svg_with_roles() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("g.svg");
    let o = gentle(&["geo-res", &file(dir.path(), "a3.quiver", A3), "--seed", "a+", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("a+\ne(2)\n"));
    let text = fs::read_to_string(svg).unwrap();
    for class in ["proj", "delta", "resmember", "color-red", "color-green"] {
        assert!(text.contains(class), "{class}");
    }
}

#[test]
fn projective_seed_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = gentle(&["geo-res", &file(dir.path(), "a3.quiver", A3), "--seed", "a+b+"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gentle(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gentle(&["strings"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(gentle(&["hom", &file(dir.path(), "a3.quiver", A3)]).status.code(), Some(2));
}

#[test]
fn gen_corpus_two_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c");
    let o = gentle(&["gen-corpus", "--max-vertices", "2", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    let trees: Vec<_> = names.iter().filter(|n| n.starts_with("tree-")).collect();
    assert_eq!(trees, ["tree-1v-0001.quiver", "tree-2v-0001.quiver"]);
    assert!(names.iter().any(|n| n == "fixture-relation-3-cycle.quiver"));
    assert!(names.iter().any(|n| n == "fixture-kronecker.quiver"));
    for n in &names {
        let v = gentle(&["validate", out.join(n).to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{n}");
    }
}

#[test]
fn check_oracle_on_a_small_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c");
    gentle(&["gen-corpus", "--max-vertices", "3", out.to_str().unwrap()]);
    let o = gentle(&["check-oracle", out.to_str().unwrap(), "--jobs", "2"]);
    let text = stdout(&o);
    for id in 1..=9 {
        assert!(text.contains(&format!("criterion {id:>2} PASS")), "{text}");
    }
    // The fixed A3 lattice has 5 elements, so the run reports a failure.
    assert!(text.contains("criterion 10 FAIL"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_oracle_on_an_empty_corpus_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = gentle(&["check-oracle", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(0 cases, 0 failed)"));
}
