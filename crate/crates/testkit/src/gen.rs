use combproof::fograph::{graph_of, Fograph};
use combproof::syntax::{Atom, Formula, ModalFormula, PredSym, Term};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub fn term<R: Rng>(rng: &mut R, vars: &[&str], depth: usize) -> Term {
    let roll = rng.random_range(0..10);
    if depth == 0 || roll < 6 {
        if vars.is_empty() || roll == 5 {
            return Term::app("c", vec![]);
        }
        return Term::var(vars.choose(rng).expect("non-empty"));
    }
    if roll < 9 {
        Term::app("f", vec![term(rng, vars, depth - 1)])
    } else {
        Term::app("g", vec![term(rng, vars, depth - 1), term(rng, vars, depth - 1)])
    }
}

/// Fixed arity per predicate name, so generated formulas always parse back.
fn arity_of(name: &str) -> usize {
    match name {
        "p" | "r" => 1,
        "q" => 2,
        _ => 0,
    }
}

pub fn atom<R: Rng>(rng: &mut R, preds: &[&str], vars: &[&str], depth: usize) -> Atom {
    let name = preds.choose(rng).expect("non-empty");
    let args = (0..arity_of(name)).map(|_| term(rng, vars, depth)).collect();
    let mut pred = PredSym::new(name);
    if rng.random_bool(0.5) {
        pred = pred.dual();
    }
    Atom::new(pred, args)
}

/// Random tree over `leaves`, with `quants` quantifiers over `bound` wrapped around random subtrees.
pub fn assemble<R: Rng>(rng: &mut R, leaves: Vec<Formula>, quants: usize, bound: &[&str]) -> Formula {
    let mut pool = leaves;
    let mut quants_left = quants;
    while pool.len() > 1 || quants_left > 0 {
        let merge = pool.len() > 1 && (quants_left == 0 || rng.random_bool(0.6));
        if merge {
            let i = rng.random_range(0..pool.len());
            let a = pool.swap_remove(i);
            let j = rng.random_range(0..pool.len());
            let b = pool.swap_remove(j);
            let f = if rng.random_bool(0.5) { Formula::and(a, b) } else { Formula::or(a, b) };
            pool.push(f);
        } else {
            let i = rng.random_range(0..pool.len());
            let a = pool.swap_remove(i);
            let x = bound.choose(rng).expect("non-empty");
            let f = if rng.random_bool(0.5) { Formula::forall(x, a) } else { Formula::exists(x, a) };
            pool.push(f);
            quants_left -= 1;
        }
    }
    pool.pop().expect("at least one leaf")
}

/// Random formula with `atoms` atom occurrences and `quants` quantifiers.
pub fn formula<R: Rng>(rng: &mut R, atoms: usize, quants: usize, bound: &[&str], free: &[&str]) -> Formula {
    let vars: Vec<&str> = bound.iter().chain(free).copied().collect();
    let leaves = (0..atoms.max(1))
        .map(|_| {
            if rng.random_range(0..20) == 0 {
                if rng.random_bool(0.5) {
                    Formula::One
                } else {
                    Formula::Zero
                }
            } else {
                Formula::Atom(atom(rng, &["p", "q", "r", "s"], &vars, 1))
            }
        })
        .collect();
    assemble(rng, leaves, quants, bound)
}

/// Random formula whose bound variables are pairwise distinct and drawn from `prefix1, prefix2, ...`.
pub fn rectified_formula<R: Rng>(rng: &mut R, atoms: usize, quants: usize, prefix: &str, free: &[&str]) -> Formula {
    let names: Vec<String> = (1..=quants.max(1)).map(|i| format!("{prefix}{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let f = formula(rng, atoms, quants, &refs, free);
    // distinct binders with names not free elsewhere
    let r = f.rectify();
    debug_assert!(r.is_rectified());
    r
}

/// A random coloured fograph whose colour classes are pre-dual literal pairs,
/// possibly with uncoloured 1-literals; at most `max_vertices` vertices.
pub fn linked_fograph<R: Rng>(rng: &mut R, max_vertices: usize) -> Fograph {
    let vars = ["x", "y", "z", "w"];
    let pairs = rng.random_range(1..=(max_vertices / 2).clamp(1, 4));
    let ones = if rng.random_range(0..6) == 0 && 2 * pairs < max_vertices { 1 } else { 0 };
    let room = max_vertices - 2 * pairs - ones;
    let quants = rng.random_range(0..=room.min(4));

    // tag each literal with its pair id so colours survive assembly
    let mut leaves = Vec::new();
    for k in 0..pairs {
        let base = ["p", "q", "r", "s"][rng.random_range(0..4)];
        let a = atom(rng, &[base], &vars, 1);
        let b_args = if rng.random_bool(0.6) {
            a.args
                .iter()
                .map(|t| if rng.random_bool(0.7) { t.clone() } else { term(rng, &vars, 1) })
                .collect()
        } else {
            a.args.iter().map(|_| term(rng, &vars, 1)).collect()
        };
        let b = Atom::new(a.pred.dual(), b_args);
        leaves.push((Formula::Atom(a), Some(k)));
        leaves.push((Formula::Atom(b), Some(k)));
    }
    for _ in 0..ones {
        leaves.push((Formula::One, None));
    }
    leaves.shuffle(rng);
    // encode the tag in a private predicate suffix, then strip it after building
    let tagged: Vec<Formula> = leaves
        .iter()
        .enumerate()
        .map(|(i, (f, _))| match f {
            Formula::Atom(a) => {
                let mut a = a.clone();
                a.pred.base = format!("{}#{i}", a.pred.base);
                Formula::Atom(a)
            }
            other => other.clone(),
        })
        .collect();
    let f = assemble(rng, tagged, quants, &vars[..3]);
    let g = graph_of(&f);
    let mut labels = g.graph().labels().to_vec();
    let mut colours = vec![None; g.n()];
    for (v, l) in labels.iter_mut().enumerate() {
        if let combproof::fograph::FoLabel::Lit(a) = l {
            let (base, idx) = a.pred.base.split_once('#').expect("tagged");
            let idx: usize = idx.parse().expect("index");
            colours[v] = leaves[idx].1.map(|k| k as u32);
            a.pred.base = base.to_string();
        }
    }
    g.with_labels(labels).expect("relabelling keeps shape").with_colours(&colours)
}

/// Random closed, constant-free modal formula with `size` predicate occurrences.
pub fn modal_formula<R: Rng>(rng: &mut R, size: usize) -> ModalFormula {
    fn go<R: Rng>(rng: &mut R, size: usize, bare: bool) -> ModalFormula {
        if !bare {
            let inner = go(rng, size, true);
            return if rng.random_bool(0.5) { ModalFormula::nec(inner) } else { ModalFormula::pos(inner) };
        }
        if size <= 1 {
            if rng.random_range(0..4) == 0 {
                let inner = go(rng, 1, true);
                return if rng.random_bool(0.5) { ModalFormula::nec(inner) } else { ModalFormula::pos(inner) };
            }
            let mut p = PredSym::new(["p", "q", "r"][rng.random_range(0..3)]);
            if rng.random_bool(0.5) {
                p = p.dual();
            }
            return ModalFormula::Prop(p);
        }
        let k = rng.random_range(1..size);
        let (bare_a, bare_b) = (rng.random_bool(0.7), rng.random_bool(0.7));
        let a = go(rng, k, bare_a);
        let b = go(rng, size - k, bare_b);
        let f = if rng.random_bool(0.5) { ModalFormula::and(a, b) } else { ModalFormula::or(a, b) };
        if rng.random_range(0..3) == 0 {
            if rng.random_bool(0.5) {
                ModalFormula::nec(f)
            } else {
                ModalFormula::pos(f)
            }
        } else {
            f
        }
    }
    go(rng, size.max(1), false)
}

/// Random tree over `leaves` with quantifiers inserted top-down so that every
/// atom's variable is bound. Atoms are given as `(predicate, tag)` and receive
/// the variable of a random enclosing quantifier. Bound names are `x1, x2, ...`
/// unless `reuse` allows repeating a name already in use.
fn closed_monadic_tree<R: Rng>(rng: &mut R, leaves: Vec<(PredSym, Option<usize>)>, reuse: bool) -> Formula {
    fn go<R: Rng>(rng: &mut R, leaves: &[(PredSym, Option<usize>)], env: &mut Vec<String>, counter: &mut usize, reuse: bool) -> Formula {
        let wrap = env.is_empty() || rng.random_range(0..3) == 0;
        if wrap {
            let x = if reuse && !env.is_empty() && rng.random_bool(0.3) {
                env.choose(rng).expect("non-empty").clone()
            } else {
                *counter += 1;
                format!("x{counter}")
            };
            env.push(x.clone());
            let body = go_inner(rng, leaves, env, counter, reuse);
            env.pop();
            return if rng.random_bool(0.5) { Formula::forall(&x, body) } else { Formula::exists(&x, body) };
        }
        go_inner(rng, leaves, env, counter, reuse)
    }
    fn go_inner<R: Rng>(rng: &mut R, leaves: &[(PredSym, Option<usize>)], env: &mut Vec<String>, counter: &mut usize, reuse: bool) -> Formula {
        if leaves.len() == 1 {
            let (p, tag) = &leaves[0];
            let mut p = p.clone();
            if let Some(t) = tag {
                p.base = format!("{}#{t}", p.base);
            }
            // innermost binding of the chosen name decides which quantifier binds it
            let x = env.choose(rng).expect("inside a quantifier").clone();
            return Formula::Atom(Atom::new(p, vec![Term::var(&x)]));
        }
        let k = rng.random_range(1..leaves.len());
        let a = go(rng, &leaves[..k], env, counter, reuse);
        let b = go(rng, &leaves[k..], env, counter, reuse);
        if rng.random_bool(0.5) {
            Formula::and(a, b)
        } else {
            Formula::or(a, b)
        }
    }
    go(rng, &leaves, &mut Vec::new(), &mut 0, reuse)
}

fn random_pred<R: Rng>(rng: &mut R) -> PredSym {
    let p = PredSym::new(["p", "q", "r"][rng.random_range(0..3)]);
    if rng.random_bool(0.5) {
        p.dual()
    } else {
        p
    }
}

/// Random closed monadic formula without constants, with `atoms` atom occurrences.
pub fn closed_monadic_formula<R: Rng>(rng: &mut R, atoms: usize, reuse: bool) -> Formula {
    let leaves = (0..atoms.max(1)).map(|_| (random_pred(rng), None)).collect();
    closed_monadic_tree(rng, leaves, reuse)
}

/// Graph of a random rectified closed monadic formula whose literals come in
/// pre-dual pairs, each pair coloured as a link.
pub fn linked_monadic_fograph<R: Rng>(rng: &mut R, pairs: usize) -> Fograph {
    let mut leaves = Vec::new();
    for k in 0..pairs.max(1) {
        let p = random_pred(rng);
        leaves.push((p.dual(), Some(k)));
        leaves.push((p, Some(k)));
    }
    leaves.shuffle(rng);
    let f = closed_monadic_tree(rng, leaves, false);
    let g = graph_of(&f);
    let mut labels = g.graph().labels().to_vec();
    let mut colours = vec![None; g.n()];
    for (v, l) in labels.iter_mut().enumerate() {
        if let combproof::fograph::FoLabel::Lit(a) = l {
            let (base, idx) = a.pred.base.split_once('#').expect("tagged");
            colours[v] = Some(idx.parse::<u32>().expect("index"));
            a.pred.base = base.to_string();
        }
    }
    g.with_labels(labels).expect("relabelling keeps shape").with_colours(&colours)
}

/// Random constant-free proposition over nullary `p, q, r, s` and their duals.
pub fn simple_proposition<R: Rng>(rng: &mut R, atoms: usize) -> Formula {
    let leaves = (0..atoms.max(1))
        .map(|_| {
            let mut p = PredSym::new(["p", "q", "r", "s"][rng.random_range(0..4)]);
            if rng.random_bool(0.5) {
                p = p.dual();
            }
            Formula::Atom(Atom::new(p, vec![]))
        })
        .collect();
    assemble(rng, leaves, 0, &[])
}
