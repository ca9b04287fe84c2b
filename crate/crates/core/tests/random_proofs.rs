use combproof::bifib::verify_cp;
use combproof::calculus::{check_rproof, cp_of_rproof, parse_rproof, Rule};
use combproof_testkit::proofs::{Fragment, ProofGen};
use combproof_testkit::rng;

fn corpus(fragment: Fragment, seed: u64, n: usize) -> Vec<combproof::calculus::RProof> {
    let mut r = rng(seed);
    let mut g = ProofGen::new(&mut r, fragment);
    (0..n).map(|_| g.proof(12)).collect()
}

#[test]
fn random_first_order_proofs_compile_to_verified_cps() {
    let proofs = corpus(Fragment::FirstOrder, 11, 1000);
    let mut contractions = 0;
    for p in &proofs {
        assert!(p.depth() <= 12);
        let cp = cp_of_rproof(p).unwrap_or_else(|e| panic!("{p}: {e}"));
        let r = verify_cp(&cp);
        assert!(r.accepted(), "{p}\n{r}");
        contractions += p.count(&|r| matches!(r, Rule::Contract(_)));
    }
    assert!(contractions > 100, "only {contractions} contractions");
}

#[test]
fn proofs_print_and_parse_back() {
    for p in corpus(Fragment::FirstOrder, 12, 200) {
        let back = parse_rproof(&p.to_string()).unwrap();
        assert_eq!(check_rproof(&back).unwrap(), check_rproof(&p).unwrap());
    }
}

#[test]
fn closed_fragments_stay_in_their_fragment() {
    let mut r = rng(13);
    let mut g = ProofGen::new(&mut r, Fragment::Monadic);
    for _ in 0..100 {
        let p = g.closed_proof(12);
        let s = check_rproof(&p).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.0[0].free_vars().is_empty(), "{}", s.0[0]);
    }
}
