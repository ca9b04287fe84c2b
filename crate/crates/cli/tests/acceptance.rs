//! Acceptance criteria. Each test prints one `[Cn] PASS|FAIL` line before asserting.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use combproof::bifib::{verify_cp, CheckReport, CombProof};
use combproof::calculus::{compile_checked, cp_of_rproof, fixtures, parse_rproof, RProof};
use combproof::fograph::{fusion, graph_of, FoLabel, Fograph, Quantifier};
use combproof::fonet::{replay_matches, verify_fonet};
use combproof::graphs::UGraph;
use combproof::homogeneous::*;
use combproof::syntax::{modal_to_fo, parse_formula, parse_modal, Formula};
use combproof::unify::{dependencies, dualizer_of, leap_graph_from, link_equations};
use combproof_cli::check_document;
use combproof_cli::doc::CpDocument;
use combproof_testkit::gen::{linked_fograph, modal_formula, rectified_formula};
use combproof_testkit::laws::laws;
use combproof_testkit::oracle::{cp_isomorphic, naive_dependencies, robinson};
use combproof_testkit::proofs::{Fragment, ProofGen};
use combproof_testkit::{rng, Rng};

const DRINKER: &str = "ex x. (~p(x) \\/ all y. p(y))";

fn data(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)).unwrap()
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn verdict(id: &str, what: &str, ok: bool, detail: String) {
    println!("[{id}] {} {what}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{id} {what}: {detail}");
}

/// Replaces one line of a section, or appends one when `old` is empty.
fn mutate(doc: &str, section: &str, old: &str, new: &str) -> String {
    let mut out = Vec::new();
    let mut inside = false;
    let mut done = false;
    for line in doc.lines() {
        let body = line.split('#').next().unwrap().trim();
        if body.chars().all(|c| c.is_ascii_uppercase() || c == ' ') && !body.is_empty() {
            if inside && !done && old.is_empty() {
                out.push(new.to_string());
                done = true;
            }
            inside = body == section;
            out.push(line.to_string());
            continue;
        }
        if inside && !done && !old.is_empty() && body == old {
            if !new.is_empty() {
                out.push(new.to_string());
            }
            done = true;
            continue;
        }
        out.push(line.to_string());
    }
    if inside && !done && old.is_empty() {
        out.push(new.to_string());
        done = true;
    }
    assert!(done, "mutation {section}: `{old}` -> `{new}` did not apply");
    out.join("\n") + "\n"
}

#[test]
fn c01_drinker_pipeline() {
    let start = Instant::now();
    let g = graph_of(&f(DRINKER));
    let edges: BTreeSet<(usize, usize)> = g.graph().edges().into_iter().collect();
    let arcs: BTreeSet<(usize, usize)> = g.binding_graph().arcs().collect();
    let labels: Vec<String> = (0..g.n()).map(|v| g.label(v).to_string()).collect();
    let shape = g.n() == 4
        && labels == ["x", "~p(x)", "y", "p(y)"]
        && edges == [(0, 1), (0, 2), (0, 3)].into_iter().collect()
        && arcs == [(0, 1), (2, 3)].into_iter().collect();

    let doc = data("drinker.cp");
    let base = check_document(&doc, &[]).unwrap();
    let cp = CpDocument::parse(&doc).unwrap().to_cp(&[]).unwrap().unwrap();
    let five = cp.source.n() == 5 && cp.source.graph().colour_classes().values().all(|c| c.len() == 2);

    // a: x', b: ~p(x'), c: x, d: y, e: p(y)
    let mutations: [(&str, &str, &str, &str); 12] = [
        ("delete edge a-b", "EDGES", "a b", ""),
        ("delete edge c-d", "EDGES", "c d", ""),
        ("delete edge c-e", "EDGES", "c e", ""),
        ("add edge a-c", "EDGES", "", "a c"),
        ("add edge a-d", "EDGES", "", "a d"),
        ("add edge b-e", "EDGES", "", "b e"),
        ("drop the link", "LINKS", "b e", ""),
        ("relink b with binder d", "LINKS", "b e", "b d"),
        ("relink e with binder a", "LINKS", "b e", "a e"),
        ("map x' to y", "MAP", "a 0", "a 2"),
        ("map y to x", "MAP", "d 2", "d 0"),
        ("map p(y) to ~p(x)", "MAP", "e 3", "e 1"),
    ];
    let mut caught = 0;
    let mut lines = Vec::new();
    for (name, section, old, new) in mutations {
        let text = mutate(&doc, section, old, new);
        let r: CheckReport = check_document(&text, &[]).unwrap();
        let localized = r.failures.iter().any(|x| !x.witness.is_empty());
        if !r.accepted() && localized {
            caught += 1;
        }
        let first = r.failures.first().map(|x| x.to_string()).unwrap_or_else(|| "accepted".into());
        lines.push(format!("{name}: {first}"));
    }
    for l in &lines {
        println!("      {l}");
    }
    let elapsed = start.elapsed();
    let ok = shape && base.accepted() && five && caught == 12 && elapsed < Duration::from_secs(1);
    verdict(
        "C1",
        "drinker pipeline",
        ok,
        format!("graph shape {shape}, document accepted {}, mutations caught {caught}/12, {elapsed:?}", base.accepted()),
    );
}

#[test]
fn c02_scope_and_binder_kinds() {
    let g = graph_of(&f(DRINKER));
    let (x, px, y, py) = (0, 1, 2, 3);
    let scope = |v: usize| g.scope(v).ones().collect::<Vec<_>>();
    let ok = scope(y) == vec![px, y, py]
        && scope(x) == vec![0, 1, 2, 3]
        && g.binder_kind(x) == Ok(Quantifier::Existential)
        && g.binder_kind(y) == Ok(Quantifier::Universal)
        && g.bound_literals(x) == vec![px]
        && g.bound_literals(y) == vec![py];
    verdict("C2", "scope and binder kinds", ok, format!("scope(y) = {:?}, scope(x) = {:?}", scope(y), scope(x)));
}

fn linked(src: &str, links: &[(usize, usize)]) -> Fograph {
    let g = graph_of(&f(src));
    let mut cols = vec![None; g.n()];
    for (i, &(a, b)) in links.iter().enumerate() {
        cols[a] = Some(i as u32);
        cols[b] = Some(i as u32);
    }
    g.with_colours(&cols)
}

#[test]
fn c03_two_link_dependencies() {
    // x ~p(x) y ~q(y) z p(z) q(f(z)); links ~p(x)-p(z) and ~q(y)-q(f(z))
    let g = linked("(ex x. ~p(x)) \\/ (ex y. ~q(y)) \\/ all z. (p(z) & q(f(z)))", &[(1, 5), (3, 6)]);
    let d = dualizer_of(&g).unwrap().unwrap();
    let assignment_ok = d.assignment["x"].to_string() == "z" && d.assignment["y"].to_string() == "f(z)";
    let deps = dependencies(&g).unwrap();
    let name = |v: usize| g.label(v).to_string();
    let named: Vec<(String, String)> = deps.iter().map(|&(a, b)| (name(a), name(b))).collect();
    let expected: BTreeSet<(usize, usize)> = [(2, 4)].into_iter().collect();
    let cert = verify_fonet(&g);
    let replay = cert.as_ref().map(|c| replay_matches(&c.trace, &c.rectified).is_ok()).unwrap_or(false);
    let ok = assignment_ok && deps == expected && cert.is_ok() && replay;
    verdict(
        "C3",
        "two-link dependencies",
        ok,
        format!(
            "dualizer x->{}, y->{}; dependencies {named:?} (expected exactly [(y, z)]); fonet {}, replay {replay}",
            d.assignment["x"],
            d.assignment["y"],
            cert.is_ok()
        ),
    );
}

/// Every vertex of `w` has exactly one neighbour in `w`.
fn induces_matching(adj: &impl Fn(usize, usize) -> bool, w: &[usize]) -> bool {
    w.iter().all(|&u| w.iter().filter(|&&v| v != u && adj(u, v)).count() == 1)
}

fn brute_force_fonet(g: &Fograph) -> bool {
    let r = g.rectify();
    let eqs = link_equations(r.graph()).unwrap();
    let ex: BTreeSet<String> =
        r.binders().into_iter().filter(|&b| r.binder_kind(b) == Ok(Quantifier::Existential)).map(|b| r.label(b).to_string()).collect();
    if robinson(&eqs, &ex, 1_000_000).unwrap().is_none() {
        return false;
    }
    let deps = naive_dependencies(&r, 1_000_000).unwrap().unwrap();
    let leaps = leap_graph_from(&r, &deps);
    let n = r.n();
    for mask in 1u32..(1 << n) {
        let w: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if w.len() % 2 == 1 {
            continue;
        }
        if induces_matching(&|a, b| r.graph().has_edge(a, b), &w) && induces_matching(&|a, b| leaps.has_edge(a, b), &w) {
            return false;
        }
    }
    true
}

#[test]
fn c04_fonet_oracle_equivalence() {
    let start = Instant::now();
    let mut r = rng(404);
    let (mut total, mut yes, mut bad) = (0, 0, Vec::new());
    while total < 10_000 {
        let g = linked_fograph(&mut r, 10);
        assert!(g.n() <= 10);
        let oracle = brute_force_fonet(&g);
        let fast = verify_fonet(&g).is_ok();
        total += 1;
        yes += usize::from(oracle);
        if oracle != fast {
            bad.push(g.formula().to_string());
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(300);
    verdict(
        "C4",
        "fonet oracle equivalence",
        ok,
        format!("{total} linked fographs, {yes} fonets, {} discrepancies {:?}, {elapsed:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    );
}

#[test]
fn c05_translation_equations() {
    let mut r = rng(505);
    let (mut checked, mut failed) = (0, Vec::new());
    for _ in 0..1000 {
        let atoms = r.random_range(1..5);
        let quants = r.random_range(0..3);
        let a = rectified_formula(&mut r, atoms, quants, "a", &["w"]);
        let b = rectified_formula(&mut r, atoms, quants, "b", &["x", "y", "w"]);
        let c = rectified_formula(&mut r, atoms, quants, "c", &["x", "w"]);
        for (name, lhs, rhs) in laws(&a, &b, &c) {
            checked += 1;
            if graph_of(&lhs).fingerprint() != graph_of(&rhs).fingerprint() {
                failed.push(format!("{name}: {lhs} vs {rhs}"));
            }
        }
    }
    verdict("C5", "translation equations", failed.is_empty() && checked == 8000, format!("{checked} equations, {} failures", failed.len()));
}

fn rename_preds(p: &RProof, from: &[&str], to: &[&str]) -> RProof {
    let mut text = p.to_string();
    for (a, b) in from.iter().zip(to) {
        text = text.replace(&format!("{a}("), &format!("{b}("));
    }
    parse_rproof(&text).unwrap()
}

#[test]
fn c06_compilation_soundness() {
    let dist = fixtures::forall_distribution();
    let mut corpus = vec![fixtures::excluded_middle(), fixtures::peirce(), fixtures::drinker(), dist.clone()];
    corpus.push(rename_preds(&dist, &["p", "q"], &["q", "p"]));
    corpus.push(rename_preds(&dist, &["p", "q"], &["r", "s"]));
    corpus.push(rename_preds(&dist, &["p", "q"], &["s", "s"]));
    let fixtures_n = corpus.len();
    let mut r = rng(606);
    let mut g = ProofGen::new(&mut r, Fragment::FirstOrder);
    for _ in 0..1000 {
        let p = g.proof(12);
        assert!(p.depth() <= 12);
        corpus.push(p);
    }
    let mut failures = Vec::new();
    for p in &corpus {
        if let Err(e) = compile_checked(p) {
            failures.push(format!("{p}: {e}"));
        }
    }
    verdict(
        "C6",
        "compilation soundness",
        failures.is_empty(),
        format!("{fixtures_n} fixtures + 1000 random proofs, {} failures", failures.len()),
    );
}

#[test]
fn c07_dualizing_nets_and_round_trips() {
    let (a, b, c, d) = (0, 1, 2, 3);
    let trio = [
        DualizingGraph::from_lists(4, &[(a, b)], &[(a, c), (b, d)]).unwrap(),
        DualizingGraph::from_lists(4, &[(a, b), (c, d)], &[(a, c), (b, d)]).unwrap(),
        DualizingGraph::from_lists(4, &[(a, b)], &[(a, d), (b, d)]).unwrap(),
    ];
    let verdicts: Vec<bool> = trio.iter().map(|n| verify_dualizing_net(n).accepted()).collect();
    let trio_ok = verdicts == [true, false, false];

    let peirce = cp_of_rproof(&fixtures::peirce()).unwrap();
    let h = to_homogeneous_prop(&peirce).unwrap();
    let peirce_ok = verify_homogeneous_cp_prop(&h).accepted() && verify_dualizing_net(&h.source).accepted();

    let mut bad = 0;
    let mut r = rng(707);
    let mut gen = ProofGen::new(&mut r, Fragment::Propositional);
    for _ in 0..200 {
        let cp = cp_of_rproof(&gen.closed_proof(12)).unwrap();
        let h = to_homogeneous_prop(&cp).unwrap();
        let back = from_homogeneous_prop(&h, cp.formula.as_ref().unwrap());
        if !verify_homogeneous_cp_prop(&h).accepted() || !back.is_ok_and(|b| verify_cp(&b).accepted()) {
            bad += 1;
        }
    }
    let mut r = rng(708);
    let mut gen = ProofGen::new(&mut r, Fragment::Monadic);
    for _ in 0..200 {
        let cp = cp_of_rproof(&gen.closed_proof(12)).unwrap();
        let h = to_homogeneous_monadic(&cp).unwrap();
        let back = from_homogeneous_monadic(&h, cp.formula.as_ref().unwrap());
        if !verify_homogeneous_cp_monadic(&h).accepted() || !back.is_ok_and(|b| verify_cp(&b).accepted()) {
            bad += 1;
        }
    }
    verdict(
        "C7",
        "dualizing nets and round trips",
        trio_ok && peirce_ok && bad == 0,
        format!("trio {verdicts:?}, Peirce homogeneous {peirce_ok}, 400 round trips with {bad} failures"),
    );
}

#[test]
fn c08_collapse_example() {
    let formula = f("all x. ex y. (~p(y) \\/ p(y))");
    let target = mograph_of_formula(&formula).unwrap();
    // two isolated universal binders onto x, then y joined to the linked pair
    let source = Mograph::from_lists(5, &[(2, 3), (2, 4)], &[(3, 4)], &[(2, 3), (2, 4)]).unwrap();
    let h = HomogeneousCp { source, target, map: vec![0, 0, 1, 2, 3] };
    let uncollapsed = verify_homogeneous_cp_monadic(&h).accepted();
    let c = collapse(&h).unwrap();
    let collapsed = verify_homogeneous_cp_monadic(&c).accepted() && c.source.n() == 4;
    let idempotent = collapse(&c).unwrap() == c;
    let standard = from_homogeneous_monadic(&c, &formula).map(|cp| verify_cp(&cp).accepted()).unwrap_or(false);
    verdict(
        "C8",
        "collapse example",
        uncollapsed && collapsed && idempotent && standard,
        format!("uncollapsed {uncollapsed}, collapsed {collapsed}, idempotent {idempotent}, standard CP {standard}"),
    );
}

/// `all y. ex x0. ... ex x{depth}.` over links r0(x0)/~r0(y) and r_i(x_i)/~r_i(g(x_{i-1},x_{i-1})).
fn chain(depth: usize) -> Fograph {
    let mut lits = vec!["r0(x0)".to_string(), "~r0(y)".to_string()];
    for i in 1..=depth {
        lits.push(format!("r{i}(x{i})"));
        lits.push(format!("~r{i}(g(x{},x{}))", i - 1, i - 1));
    }
    let mut text = lits.join(" \\/ ");
    for i in (0..=depth).rev() {
        text = format!("ex x{i}. ({text})");
    }
    let g = graph_of(&f(&format!("all y. ({text})")));
    let mut cols = vec![None; g.n()];
    let lit_ids: Vec<usize> = (0..g.n()).filter(|&v| g.label(v).is_literal()).collect();
    for (k, pair) in lit_ids.chunks(2).enumerate() {
        cols[pair[0]] = Some(k as u32);
        cols[pair[1]] = Some(k as u32);
    }
    g.with_colours(&cols)
}

#[test]
fn c09_dependency_trick() {
    let mut r = rng(909);
    let (mut compared, mut nontrivial, mut bad) = (0, 0, 0);
    let mut tries = 0;
    while compared < 1000 {
        tries += 1;
        assert!(tries < 100_000, "corpus too thin");
        let g = linked_fograph(&mut r, 12).rectify();
        let Ok(Some(naive)) = naive_dependencies(&g, 100_000) else { continue };
        compared += 1;
        nontrivial += usize::from(!naive.is_empty());
        if dependencies(&g).ok() != Some(naive) {
            bad += 1;
        }
    }
    let g = chain(30);
    let blown = naive_dependencies(&g, 1_000_000).is_err();
    let mut elapsed = Duration::MAX;
    let mut deps = BTreeSet::new();
    for _ in 0..5 {
        let start = Instant::now();
        deps = dependencies(&g).unwrap();
        elapsed = elapsed.min(start.elapsed());
    }
    let y = (0..g.n()).find(|&v| g.label(v) == &FoLabel::Binder("y".into())).unwrap();
    let all_on_y = deps.len() == 31 && deps.iter().all(|&(_, b)| b == y);
    let ok = bad == 0 && blown && all_on_y && elapsed < Duration::from_millis(100);
    verdict(
        "C9",
        "dependency trick",
        ok,
        format!(
            "{compared} nets compared ({nontrivial} with dependencies), {bad} mismatches; depth-30 chain: naive over budget {blown}, {} dependencies in {elapsed:?}",
            deps.len()
        ),
    );
}

/// `~p1 \/ (p1 & ~p2) \/ ... \/ (p{n-1} & ~pn) \/ pn`, built by fusing n axioms in a row.
fn fused_axioms(n: usize) -> CombProof {
    let axiom = |k: usize| linked(&format!("~p{k} \\/ p{k}"), &[(0, 1)]);
    let mut g = axiom(1);
    for k in 2..=n {
        let last = g.n() - 1;
        g = fusion(&g, &axiom(k), &[last].into_iter().collect(), &[0].into_iter().collect()).unwrap();
    }
    let mut parts = vec!["~p1".to_string()];
    for k in 1..n {
        parts.push(format!("(p{k} & ~p{})", k + 1));
    }
    parts.push(format!("p{n}"));
    let formula = f(&parts.join(" \\/ "));
    let target = graph_of(&formula);
    assert_eq!(target.fingerprint(), g.fingerprint());
    let mut src: UGraph<FoLabel> = target.graph().clone();
    for v in 0..src.n() {
        src.set_colour(v, Some((v / 2) as u32));
    }
    let source = Fograph::new(src).unwrap();
    let id = (0..source.n()).collect();
    CombProof::of_formula(formula, source, id)
}

#[test]
fn c10_polynomial_scaling() {
    let sizes = [25usize, 50, 100, 200];
    let mut times = Vec::new();
    let mut all_ok = true;
    for &n in &sizes {
        let cp = fused_axioms(n);
        let mut best = Duration::MAX;
        for _ in 0..3 {
            let start = Instant::now();
            all_ok &= verify_cp(&cp).accepted();
            best = best.min(start.elapsed());
        }
        times.push(best);
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = times.iter().map(|t| t.as_secs_f64().max(1e-6).ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    let last = times[3];
    let ok = all_ok && slope <= 4.0 && last < Duration::from_secs(2);
    verdict("C10", "polynomial scaling", ok, format!("times {times:?}, log-log slope {slope:.2}, all verified {all_ok}"));
}

#[test]
fn c11_modal() {
    let m = parse_modal("<>(~p \\/ []p)").unwrap();
    let translation_ok = modal_to_fo(&m) == f(DRINKER);
    let modal_cp = CpDocument::parse(&data("modal_drinker.cp")).unwrap().to_cp(&[]).unwrap().unwrap();
    let drinker_cp = cp_of_rproof(&fixtures::drinker()).unwrap();
    let verified = verify_cp(&modal_cp).accepted();
    let iso = cp_isomorphic(&modal_cp, &drinker_cp);

    let mut r = rng(1111);
    let (mut agree, mut total) = (0, 0);
    while total < 1000 {
        let size = r.random_range(1..7);
        let phi = modal_formula(&mut r, size);
        assert!(phi.is_closed() && phi.is_simple());
        total += 1;
        if modal_mograph(&phi).ok() == mograph_of_formula(&modal_to_fo(&phi)).ok() {
            agree += 1;
        }
    }
    verdict(
        "C11",
        "modal",
        translation_ok && verified && iso && agree == total,
        format!("translation is the drinker {translation_ok}, CP verifies {verified}, isomorphic to the drinker CP {iso}, mograph agreement {agree}/{total}"),
    );
}
