use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use combproof::bifib::verify_cp;
use combproof::calculus::cp_of_rproof;
use combproof_cli::check_document;
use combproof_cli::doc::CpDocument;
use combproof_testkit::proofs::{Fragment, ProofGen};
use combproof_testkit::rng;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combproof")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn graph_of_the_drinker() {
    let o = bin(&["graph", "ex x. (~p(x) \\/ all y. p(y))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("vertices: 4\n"), "{out}");
    assert!(out.contains("edges: 3\n  0 -- 1\n  0 -- 2\n  0 -- 3\n"), "{out}");
    assert!(out.contains("binding arcs: 2\n  0 -> 1\n  2 -> 3\n"), "{out}");
    assert!(out.contains("0 r ex x") && out.contains("2 r01 all y"), "{out}");
    assert!(stderr(&o).is_empty());
}

#[test]
fn graph_of_an_atom_and_unrectified_input() {
    let o = bin(&["graph", "p"]);
    assert!(stdout(&o).contains("vertices: 1\n"));
    let o = bin(&["graph", "(all x. p(x)) \\/ ex x. ~p(x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: formula is not rectified"), "{}", stderr(&o));
    assert!(stdout(&o).contains("ex x1. ~p(x1)"));
    let o = bin(&["graph", "--modal", "<>(~p \\/ []p)"]);
    assert!(stdout(&o).contains("vertices: 4\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["graph", "p &"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["check", "/nonexistent/file.cp"]).status.code(), Some(2));
    assert_eq!(bin(&["oracle", "all x. p(x)"]).status.code(), Some(2));
}

#[test]
fn check_accepts_and_refutes() {
    let o = bin(&["check", p(&data("drinker.cp")), p(&data("modal_drinker.cp"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cp");
    let text = fs::read_to_string(data("drinker.cp")).unwrap().replace("d 2", "d 0");
    fs::write(&bad, text).unwrap();
    let o = bin(&["check", "--jobs", "2", p(&data("drinker.cp")), p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("drinker.cp: accepted") && out.contains("bad.cp: rejected"), "{out}");
    assert!(out.contains("failed at ["), "{out}");
}

#[test]
fn check_with_a_cut() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cut.cp");
    // target `~p \/ p` plus the cut disjunct `q & ~q`
    fs::write(&f, "TARGET ~p \\/ p\nVERTICES\na\nb\nLINKS\na b\nMAP\na 0\nb 1\n").unwrap();
    assert_eq!(bin(&["check", "--cut", "q", p(&f)]).status.code(), Some(0));
    assert_eq!(bin(&["check", p(&f)]).status.code(), Some(0));
    // an axiom on the cut disjunct alone is not a proof
    fs::write(&f, "TARGET ~p \\/ p\nVERTICES\na\nb\nLINKS\na b\nMAP\na 2\nb 3\n").unwrap();
    let o = bin(&["check", "--cut", "p", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("skew-lifting"), "{}", stdout(&o));
    assert_eq!(bin(&["check", "--cut", "p", "--cut", "q", p(&data("drinker.cp"))]).status.code(), Some(0));
}

#[test]
fn compile_fixture_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["excluded_middle", "peirce", "drinker", "forall_distribution"] {
        let out = dir.path().join(format!("{name}.cp"));
        let o = bin(&["compile", p(&data(&format!("{name}.rp"))), "-o", p(&out)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let o = bin(&["check", p(&out)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
    let o = bin(&["compile", p(&data("excluded_middle.rp"))]);
    let doc = CpDocument::parse(&stdout(&o)).unwrap();
    assert_eq!(doc.vertices.len(), 2);
    assert_eq!(doc.links.len(), 1);
}

#[test]
fn ill_formed_proof_reports_its_node() {
    let o = bin(&["compile", p(&data("bad_exchange.rp"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("at node [0]"), "{}", stderr(&o));
}

#[test]
fn homogeneous_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let peirce = dir.path().join("peirce.cp");
    assert_eq!(bin(&["compile", p(&data("peirce.rp")), "-o", p(&peirce)]).status.code(), Some(0));
    for (input, mode) in [(peirce, "prop"), (data("drinker.cp"), "monadic"), (data("modal_drinker.cp"), "modal")] {
        let hom = dir.path().join(format!("{mode}.hom"));
        let back = dir.path().join(format!("{mode}.cp"));
        let o = bin(&["homog", "--mode", mode, p(&input), "-o", p(&hom)]);
        assert_eq!(o.status.code(), Some(0), "{mode}: {}", stderr(&o));
        let o = bin(&["homog", "--mode", mode, "--inverse", p(&hom), "-o", p(&back)]);
        assert_eq!(o.status.code(), Some(0), "{mode}: {}", stderr(&o));
        assert_eq!(bin(&["check", p(&back)]).status.code(), Some(0), "{mode}");
    }
    let o = bin(&["homog", "--mode", "prop", p(&data("drinker.cp"))]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["homog", "--mode", "modal", p(&data("drinker.cp"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_dot_counts() {
    let o = bin(&["render", p(&data("drinker.cp"))]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph cp {") && dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("subgraph cluster_").count(), 2);
    let nodes = |prefix: &str| dot.lines().filter(|l| l.trim_start().starts_with(prefix) && l.contains("[label=")).count();
    assert_eq!((nodes("s"), nodes("t")), (5, 4));
    let fills: std::collections::BTreeSet<&str> =
        dot.lines().filter_map(|l| l.split("fillcolor=").nth(1)).collect();
    assert_eq!(fills.len(), 1);
    assert_eq!(dot.matches("style=dotted").count(), 5);
    assert_eq!(dot.matches('{').count(), dot.matches('}').count());
}

#[test]
fn render_condensed_and_uncoloured() {
    let o = bin(&["render", "--format", "condensed", p(&data("drinker.cp"))]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[2], "ex x. ~p(x) \\/ (all y. p(y))");
    assert!(lines[1].contains("b:0") && lines[1].contains("e:0"));
    assert_eq!(lines[0].trim(), "c");
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("one.cp");
    fs::write(&f, "TARGET 1\nVERTICES\na\nMAP\na 0\n").unwrap();
    let o = bin(&["render", p(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("fillcolor"));
}

#[test]
fn oracle_verdicts() {
    let o = bin(&["oracle", "((~p \\/ q) & ~p) \\/ p"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "valid"));
    let o = bin(&["oracle", "p & ~p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid: p="));
}

#[test]
fn random_proofs_write_read_check() {
    let mut r = rng(23);
    let mut g = ProofGen::new(&mut r, Fragment::FirstOrder);
    for i in 0..200 {
        let proof = g.proof(8);
        let cp = cp_of_rproof(&proof).unwrap();
        assert!(verify_cp(&cp).accepted());
        let text = CpDocument::from_cp(&cp).render();
        let report = check_document(&text, &[]).unwrap();
        assert!(report.accepted(), "case {i}:\n{text}\n{report}");
    }
}
