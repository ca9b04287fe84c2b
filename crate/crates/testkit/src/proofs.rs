use combproof::calculus::{check_rproof, RProof};
use combproof::syntax::{Atom, Formula, PredSym, Term};
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::gen;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fragment {
    /// Nullary atoms only, no constants.
    Propositional,
    /// Unary predicates applied to variables, no constants.
    Monadic,
    FirstOrder,
}

const FREE: [&str; 3] = ["a", "b", "c"];

/// Forward generator of valid R proofs.
pub struct ProofGen<'r, R: Rng> {
    rng: &'r mut R,
    fragment: Fragment,
    fresh: usize,
}

fn conclusion(p: &RProof) -> Vec<Formula> {
    check_rproof(p).expect("generated proofs are valid").0
}

impl<'r, R: Rng> ProofGen<'r, R> {
    pub fn new(rng: &'r mut R, fragment: Fragment) -> Self {
        ProofGen { rng, fragment, fresh: 0 }
    }

    fn fresh_var(&mut self) -> String {
        self.fresh += 1;
        format!("u{}", self.fresh)
    }

    fn atom(&mut self) -> Atom {
        let pred = |rng: &mut R, names: &[&str]| {
            let p = PredSym::new(names.choose(rng).expect("non-empty"));
            if rng.random_bool(0.5) {
                p.dual()
            } else {
                p
            }
        };
        match self.fragment {
            Fragment::Propositional => Atom::new(pred(self.rng, &["p", "q", "r", "s"]), vec![]),
            Fragment::Monadic => {
                let v = FREE.choose(self.rng).expect("non-empty");
                Atom::new(pred(self.rng, &["p", "q", "r"]), vec![Term::var(v)])
            }
            Fragment::FirstOrder => gen::atom(self.rng, &["p", "q", "r", "s"], &FREE, 1),
        }
    }

    fn leaf(&mut self) -> RProof {
        if self.fragment == Fragment::FirstOrder && self.rng.random_range(0..12) == 0 {
            return RProof::one();
        }
        RProof::ax(self.atom())
    }

    fn formula(&mut self, size: usize) -> Formula {
        if size <= 1 {
            return Formula::Atom(self.atom());
        }
        let k = self.rng.random_range(1..size);
        let (a, b) = (self.formula(k), self.formula(size - k));
        let f = if self.rng.random_bool(0.5) { Formula::and(a, b) } else { Formula::or(a, b) };
        if self.fragment != Fragment::Propositional && self.rng.random_range(0..3) == 0 {
            let free: Vec<String> = f.free_vars().into_iter().collect();
            if let Some(x) = free.choose(self.rng) {
                let x = x.clone();
                return if self.rng.random_bool(0.5) { Formula::forall(&x, f) } else { Formula::exists(&x, f) };
            }
        }
        f
    }

    /// A valid proof of depth at most `max`.
    pub fn proof(&mut self, max: usize) -> RProof {
        if max <= 1 || self.rng.random_range(0..12) == 0 {
            return self.leaf();
        }
        let p = if self.rng.random_range(0..10) < 3 {
            let a = self.proof(max - 1);
            let b = self.proof(max - 1);
            RProof::and(a, b)
        } else {
            let p = self.proof(max - 1);
            self.unary(p)
        };
        if p.depth() > max {
            self.leaf()
        } else {
            p
        }
    }

    fn unary(&mut self, p: RProof) -> RProof {
        let fs = conclusion(&p);
        let n = fs.len();
        let quantified = self.fragment != Fragment::Propositional;
        match self.rng.random_range(0..9) {
            0 | 1 if n >= 2 => RProof::or(p),
            2 if n >= 2 => RProof::exchange(self.rng.random_range(1..n), p),
            3 => {
                let size = self.rng.random_range(1..4);
                let f = self.formula(size);
                RProof::weaken(f, p)
            }
            4 if quantified => self.exists(p, &fs),
            5 if quantified => self.forall(p, &fs),
            6 => {
                let i = self.rng.random_range(0..n);
                let copy = fs[i].clone();
                contract_pair(RProof::weaken(copy, p), i, n)
            }
            7 if n >= 2 && p.size() <= 24 => {
                let i = self.rng.random_range(0..n - 1);
                contract_pair(RProof::and(p.clone(), p), i, n - 1 + i)
            }
            _ if n >= 2 => RProof::or(p),
            _ => p,
        }
    }

    fn exists(&mut self, p: RProof, fs: &[Formula]) -> RProof {
        let last = fs.last().expect("non-empty sequent");
        let x = self.fresh_var();
        let free: Vec<String> = last.free_vars().into_iter().collect();
        let (body, witness) = match free.choose(self.rng) {
            Some(y) => {
                let y = y.clone();
                (abstract_var(self.rng, last, &y, &x), Term::var(&y))
            }
            None => (last.clone(), Term::var(FREE.choose(self.rng).expect("non-empty"))),
        };
        RProof::exists(&x, body, witness, p)
    }

    fn forall(&mut self, p: RProof, fs: &[Formula]) -> RProof {
        let (rest, last) = fs.split_at(fs.len() - 1);
        let blocked: std::collections::BTreeSet<String> = rest.iter().flat_map(|f| f.free_vars()).collect();
        let cand: Vec<String> = last[0].free_vars().into_iter().filter(|y| !blocked.contains(y)).collect();
        let y = match cand.choose(self.rng) {
            Some(y) => y.clone(),
            None => self.fresh_var(),
        };
        RProof::forall(&y, p)
    }

    /// A proof whose conclusion is a single formula, closed in the monadic fragment.
    /// Retries until the depth is at most `max`.
    pub fn closed_proof(&mut self, max: usize) -> RProof {
        loop {
            let mut p = self.proof(max.saturating_sub(3).max(1));
            while conclusion(&p).len() >= 2 {
                p = RProof::or(p);
            }
            if self.fragment == Fragment::Monadic {
                for y in conclusion(&p)[0].free_vars() {
                    p = RProof::forall(&y, p);
                }
            }
            if p.depth() <= max {
                return p;
            }
        }
    }
}

/// Brings positions `i < j` (0-based) to the end with exchanges, then contracts them.
pub fn contract_pair(p: RProof, i: usize, j: usize) -> RProof {
    let len = conclusion(&p).len();
    let mut p = p;
    for k in j + 1..len {
        p = RProof::exchange(k, p);
    }
    for k in i + 1..len - 1 {
        p = RProof::exchange(k, p);
    }
    RProof::contract(p)
}

/// Replaces a random subset of the free occurrences of `y` by `x`.
fn abstract_var<R: Rng>(rng: &mut R, f: &Formula, y: &str, x: &str) -> Formula {
    fn term<R: Rng>(rng: &mut R, t: &Term, y: &str, x: &str) -> Term {
        match t {
            Term::Var(v) if v == y && rng.random_bool(0.7) => Term::var(x),
            Term::Var(_) => t.clone(),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| term(rng, a, y, x)).collect()),
        }
    }
    match f {
        Formula::Atom(a) => Formula::Atom(Atom::new(a.pred.clone(), a.args.iter().map(|t| term(rng, t, y, x)).collect())),
        Formula::One | Formula::Zero => f.clone(),
        Formula::And(a, b) => Formula::and(abstract_var(rng, a, y, x), abstract_var(rng, b, y, x)),
        Formula::Or(a, b) => Formula::or(abstract_var(rng, a, y, x), abstract_var(rng, b, y, x)),
        Formula::Forall(v, _) | Formula::Exists(v, _) if v == y => f.clone(),
        Formula::Forall(v, a) => Formula::forall(v, abstract_var(rng, a, y, x)),
        Formula::Exists(v, a) => Formula::exists(v, abstract_var(rng, a, y, x)),
    }
}
