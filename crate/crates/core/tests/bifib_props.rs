use combproof::bifib::*;
use combproof::calculus::cp_of_rproof;
use combproof::fograph::{graph_of, FoLabel, Fograph, Quantifier};
use combproof::graphs::UGraph;
use combproof::syntax::Formula;
use combproof_testkit::gen::rectified_formula;
use combproof_testkit::proofs::{Fragment, ProofGen};
use combproof_testkit::{rng, Rng};
use proptest::prelude::*;

fn corpus(seed: u64, n: usize) -> Vec<CombProof> {
    let mut r = rng(seed);
    let mut g = ProofGen::new(&mut r, Fragment::FirstOrder);
    (0..n).map(|_| cp_of_rproof(&g.closed_proof(12)).unwrap()).collect()
}

#[test]
fn accepted_maps_preserve_universals() {
    for cp in corpus(31, 400) {
        assert!(is_skew_bifibration(&cp.map, &cp.source, &cp.target).accepted());
        for b in cp.source.binders() {
            if cp.source.binder_kind(b) == Ok(Quantifier::Universal) {
                assert_eq!(cp.target.binder_kind(cp.map[b]), Ok(Quantifier::Universal));
            }
        }
    }
}

#[test]
fn skew_bifibrations_compose() {
    let mut r = rng(32);
    let mut composed = 0;
    for cp in corpus(33, 300) {
        let phi = cp.formula.clone().unwrap();
        let extra = rectified_formula(&mut r, 2, 1, "zz", &[]);
        let bigger = [Formula::forall("zz0", phi.clone()), Formula::or(phi.clone(), extra)];
        for (k, psi) in bigger.iter().enumerate() {
            let u = graph_of(psi);
            let offset = usize::from(k == 0);
            let g: Vec<usize> = (0..cp.target.n()).map(|v| v + offset).collect();
            if (0..cp.target.n()).any(|v| cp.target.label(v) != u.label(g[v])) {
                continue;
            }
            assert!(is_skew_bifibration(&g, &cp.target, &u).accepted(), "{psi}");
            let gf: Vec<usize> = cp.map.iter().map(|&v| g[v]).collect();
            assert!(is_skew_bifibration(&gf, &cp.source, &u).accepted(), "{psi}");
            composed += 1;
        }
    }
    assert!(composed > 300, "{composed}");
}

fn small_graph<R: Rng>(r: &mut R, n: usize) -> UGraph<()> {
    let mut g = UGraph::new();
    for _ in 0..n {
        g.add_vertex(());
    }
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(0.5) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[test]
fn fibrations_are_skew_fibrations() {
    let mut r = rng(34);
    let mut fibrations = 0;
    for _ in 0..300 {
        let (n, m) = (r.random_range(1..5), r.random_range(1..4));
        let (g, h) = (small_graph(&mut r, n), small_graph(&mut r, m));
        for code in 0..m.pow(n as u32) {
            let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
            if is_fibration(&f, &g, &h).accepted() {
                fibrations += 1;
                assert!(is_skew_fibration(&f, &g, &h).accepted());
            }
        }
    }
    assert!(fibrations > 100, "{fibrations}");
}

fn permute(g: &Fograph, perm: &[usize]) -> Fograph {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &w) in perm.iter().enumerate() {
        inv[w] = v;
    }
    let mut h: UGraph<FoLabel> = UGraph::new();
    for w in 0..n {
        h.add_vertex(g.label(inv[w]).clone());
        h.set_colour(w, g.graph().colour(inv[w]));
    }
    for (u, v) in g.graph().edges() {
        h.add_edge(perm[u], perm[v]).unwrap();
    }
    Fograph::new(h).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verdict_ignores_source_numbering(seed in any::<u64>(), shift in 0usize..50, nudge in any::<bool>()) {
        let mut cp = corpus(seed, 1).pop().unwrap();
        if nudge && cp.source.n() > 0 {
            let v = shift % cp.source.n();
            cp.map[v] = (cp.map[v] + 1) % cp.target.n();
        }
        let n = cp.source.n();
        let perm: Vec<usize> = (0..n).map(|v| (v + shift) % n).collect();
        let mut map = vec![0; n];
        for v in 0..n {
            map[perm[v]] = cp.map[v];
        }
        let moved = CombProof { source: permute(&cp.source, &perm), map, ..cp.clone() };
        prop_assert_eq!(verify_cp(&cp).accepted(), verify_cp(&moved).accepted());
    }
}
