use std::collections::{BTreeMap, BTreeSet};

use combproof::bifib::CombProof;
use combproof::fograph::{Fograph, Quantifier};
use combproof::syntax::Term;
use combproof::unify::{binder_vars_of_kind, link_equations};

/// Textbook unification with eager substitution. `None` on failure or when a
/// term grows past `budget` nodes.
pub fn robinson(eqs: &[(Term, Term)], solvable: &BTreeSet<String>, budget: usize) -> Result<Option<BTreeMap<String, Term>>, ()> {
    let mut sub: BTreeMap<String, Term> = BTreeMap::new();
    let mut work: Vec<(Term, Term)> = eqs.to_vec();
    while let Some((s, t)) = work.pop() {
        let s = apply(&s, &sub);
        let t = apply(&t, &sub);
        if s.size() > budget || t.size() > budget {
            return Err(());
        }
        if s == t {
            continue;
        }
        match (&s, &t) {
            (Term::Var(x), _) if solvable.contains(x) => {
                if t.contains_var(x) {
                    return Ok(None);
                }
                bind(&mut sub, x, &t, budget)?;
            }
            (_, Term::Var(y)) if solvable.contains(y) => {
                if s.contains_var(y) {
                    return Ok(None);
                }
                bind(&mut sub, y, &s, budget)?;
            }
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                work.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(sub))
}

fn bind(sub: &mut BTreeMap<String, Term>, x: &str, t: &Term, budget: usize) -> Result<(), ()> {
    let single: BTreeMap<String, Term> = [(x.to_string(), t.clone())].into();
    for v in sub.values_mut() {
        *v = apply(v, &single);
        if v.size() > budget {
            return Err(());
        }
    }
    sub.insert(x.to_string(), t.clone());
    Ok(())
}

pub fn apply(t: &Term, sub: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(x) => sub.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| apply(a, sub)).collect()),
    }
}

/// Dependencies read off a fully composed unifier, or `Err` if composition exceeds `budget`.
/// `Ok(None)` when there is no dualizer. Expects a rectified linked fograph.
pub fn naive_dependencies(g: &Fograph, budget: usize) -> Result<Option<BTreeSet<(usize, usize)>>, ()> {
    let eqs = link_equations(g.graph()).map_err(|_| ())?;
    let ex = binder_vars_of_kind(g, Quantifier::Existential);
    let un = binder_vars_of_kind(g, Quantifier::Universal);
    let solvable: BTreeSet<String> = ex.keys().cloned().collect();
    let Some(sub) = robinson(&eqs, &solvable, budget)? else {
        return Ok(None);
    };
    let mut out = BTreeSet::new();
    for (x, t) in &sub {
        let Some(&bx) = ex.get(x) else { continue };
        for y in t.vars() {
            if let Some(&by) = un.get(&y) {
                out.insert((bx, by));
            }
        }
    }
    Ok(Some(out))
}

/// Whether two CPs over the same target differ only by a renumbering of source
/// vertices and colours. Backtracking search; desk-scale inputs only.
pub fn cp_isomorphic(a: &CombProof, b: &CombProof) -> bool {
    let (s, t) = (&a.source, &b.source);
    if a.target.graph() != b.target.graph() || s.n() != t.n() {
        return false;
    }
    let n = s.n();
    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut colour_map: BTreeMap<u32, u32> = BTreeMap::new();
    fn go(
        v: usize,
        a: &CombProof,
        b: &CombProof,
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        colour_map: &mut BTreeMap<u32, u32>,
    ) -> bool {
        let (s, t) = (&a.source, &b.source);
        if v == s.n() {
            return true;
        }
        for w in 0..t.n() {
            if used[w] || a.map[v] != b.map[w] || s.label(v) != t.label(w) {
                continue;
            }
            if (0..v).any(|u| s.graph().has_edge(u, v) != t.graph().has_edge(pi[u], w)) {
                continue;
            }
            let (cv, cw) = (s.graph().colour(v), t.graph().colour(w));
            let mut added = None;
            match (cv, cw) {
                (None, None) => {}
                (Some(x), Some(y)) => match colour_map.get(&x) {
                    Some(&z) if z == y => {}
                    Some(_) => continue,
                    None if colour_map.values().any(|&z| z == y) => continue,
                    None => {
                        colour_map.insert(x, y);
                        added = Some(x);
                    }
                },
                _ => continue,
            }
            pi[v] = w;
            used[w] = true;
            if go(v + 1, a, b, pi, used, colour_map) {
                return true;
            }
            used[w] = false;
            if let Some(x) = added {
                colour_map.remove(&x);
            }
        }
        false
    }
    go(0, a, b, &mut pi, &mut used, &mut colour_map)
}
