//! First-order and modal syntax.
//!
//! Formulas are kept in negation normal form: negation lives on predicate
//! symbols as a duality flag, and `~`/`->` are expanded by the parser.

mod modal;
mod parse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use modal::{modal_to_fo, parse_modal, ModalFormula, FREE_WORLD_VAR};
pub use parse::{parse_formula, parse_sequent, parse_term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arity mismatch for `{symbol}`: used with {found} argument(s), earlier with {expected}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("empty sequent has no formula")]
    EmptySequent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app(symbol: &str, args: Vec<Term>) -> Term {
        Term::App(symbol.to_string(), args)
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    pub fn subst(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(x, t)).collect()),
        }
    }

    pub fn rename_vars(&self, map: &HashMap<String, String>) -> Term {
        match self {
            Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.rename_vars(map)).collect()),
        }
    }

    /// Sub-term at a position path (argument indices from the root).
    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => match self {
                Term::App(_, args) => args.get(*i)?.at(rest),
                Term::Var(_) => None,
            },
        }
    }

    pub fn replace_at(&self, path: &[usize], t: &Term) -> Option<Term> {
        match path.split_first() {
            None => Some(t.clone()),
            Some((i, rest)) => match self {
                Term::App(f, args) => {
                    let mut args = args.clone();
                    let new = args.get(*i)?.replace_at(rest, t)?;
                    args[*i] = new;
                    Some(Term::App(f.clone(), args))
                }
                Term::Var(_) => None,
            },
        }
    }

    /// Paths of every occurrence of the variable `x`.
    pub fn var_positions(&self, x: &str, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match self {
            Term::Var(v) if v == x => out.push(prefix.clone()),
            Term::Var(_) => {}
            Term::App(_, args) => {
                for (i, a) in args.iter().enumerate() {
                    prefix.push(i);
                    a.var_positions(x, prefix, out);
                    prefix.pop();
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredSym {
    pub base: String,
    pub dualized: bool,
}

impl PredSym {
    pub fn new(base: &str) -> PredSym {
        PredSym {
            base: base.to_string(),
            dualized: false,
        }
    }

    pub fn dual(&self) -> PredSym {
        PredSym {
            base: self.base.clone(),
            dualized: !self.dualized,
        }
    }

    pub fn is_dual_of(&self, other: &PredSym) -> bool {
        self.base == other.base && self.dualized != other.dualized
    }
}

impl fmt::Display for PredSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dualized {
            write!(f, "~")?;
        }
        write!(f, "{}", self.base)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: PredSym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: PredSym, args: Vec<Term>) -> Atom {
        Atom { pred, args }
    }

    pub fn prop(name: &str) -> Atom {
        Atom::new(PredSym::new(name), vec![])
    }

    pub fn dual(&self) -> Atom {
        Atom::new(self.pred.dual(), self.args.clone())
    }

    /// Same base symbol, opposite polarity, same arity.
    pub fn is_predual(&self, other: &Atom) -> bool {
        self.pred.is_dual_of(&other.pred) && self.args.len() == other.args.len()
    }

    pub fn is_dual(&self, other: &Atom) -> bool {
        self.is_predual(other) && self.args == other.args
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        self.args.iter().for_each(|a| a.vars_into(out));
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    pub fn contains_var(&self, x: &str) -> bool {
        self.args.iter().any(|a| a.contains_var(x))
    }

    pub fn subst(&self, x: &str, t: &Term) -> Atom {
        Atom::new(self.pred.clone(), self.args.iter().map(|a| a.subst(x, t)).collect())
    }

    pub fn rename_vars(&self, map: &HashMap<String, String>) -> Atom {
        Atom::new(self.pred.clone(), self.args.iter().map(|a| a.rename_vars(map)).collect())
    }

    /// Term occurrence addressed by `[arg index, sub-path...]`.
    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        let (i, rest) = path.split_first()?;
        self.args.get(*i)?.at(rest)
    }

    pub fn replace_at(&self, path: &[usize], t: &Term) -> Option<Atom> {
        let (i, rest) = path.split_first()?;
        let mut args = self.args.clone();
        args[*i] = args.get(*i)?.replace_at(rest, t)?;
        Some(Atom::new(self.pred.clone(), args))
    }

    pub fn var_positions(&self, x: &str) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (i, a) in self.args.iter().enumerate() {
            let mut prefix = vec![i];
            a.var_positions(x, &mut prefix, &mut out);
        }
        out
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    One,
    Zero,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// Smallest `stem + k` (k ≥ 1) not in `used`, where `stem` is `base` without trailing digits.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|n| !used.contains(n))
        .expect("unbounded search")
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(a))
    }

    pub fn exists(x: &str, a: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(a))
    }

    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(a.dual()),
            Formula::One => Formula::Zero,
            Formula::Zero => Formula::One,
            Formula::And(a, b) => Formula::or(a.negate(), b.negate()),
            Formula::Or(a, b) => Formula::and(a.negate(), b.negate()),
            Formula::Forall(x, a) => Formula::exists(x, a.negate()),
            Formula::Exists(x, a) => Formula::forall(x, a.negate()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom(a) => {
                    for v in a.vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
                Formula::One | Formula::Zero => {}
                Formula::And(a, b) | Formula::Or(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    bound.push(x.clone());
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Variables bound by quantifier occurrences, in preorder (with repeats).
    pub fn binder_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Forall(x, _) | Formula::Exists(x, _) = f {
                out.push(x.clone());
            }
        });
        out
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(a) => a.vars_into(&mut out),
            Formula::Forall(x, _) | Formula::Exists(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    /// Preorder traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit(f),
            _ => {}
        }
    }

    pub fn atom_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Atom(_) | Formula::One | Formula::Zero) {
                n += 1
            }
        });
        n
    }

    pub fn quantifier_count(&self) -> usize {
        self.binder_vars().len()
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.quantifier_count() == 0
    }

    pub fn is_rectified(&self) -> bool {
        let binders = self.binder_vars();
        let distinct: BTreeSet<_> = binders.iter().cloned().collect();
        distinct.len() == binders.len() && self.free_vars().is_disjoint(&distinct)
    }

    /// Renames bound variables apart from each other and from the free variables.
    pub fn rectify(&self) -> Formula {
        fn go(
            f: &Formula,
            env: &mut HashMap<String, String>,
            taken: &mut BTreeSet<String>,
            avoid: &BTreeSet<String>,
        ) -> Formula {
            match f {
                Formula::Atom(a) => Formula::Atom(a.rename_vars(env)),
                Formula::One | Formula::Zero => f.clone(),
                Formula::And(a, b) => Formula::and(go(a, env, taken, avoid), go(b, env, taken, avoid)),
                Formula::Or(a, b) => Formula::or(go(a, env, taken, avoid), go(b, env, taken, avoid)),
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    let new = if taken.contains(x) {
                        let all: BTreeSet<String> = taken.union(avoid).cloned().collect();
                        fresh_name(x, &all)
                    } else {
                        x.clone()
                    };
                    taken.insert(new.clone());
                    let saved = env.insert(x.clone(), new.clone());
                    let body = go(a, env, taken, avoid);
                    match saved {
                        Some(s) => env.insert(x.clone(), s),
                        None => env.remove(x),
                    };
                    if matches!(f, Formula::Forall(..)) {
                        Formula::forall(&new, body)
                    } else {
                        Formula::exists(&new, body)
                    }
                }
            }
        }
        let mut taken = self.free_vars();
        let avoid = self.all_vars();
        go(self, &mut HashMap::new(), &mut taken, &avoid)
    }

    /// Capture-free substitution of `t` for the free occurrences of `x`.
    /// Bound variables of `self` that occur in `t` are renamed first.
    pub fn subst(&self, x: &str, t: &Term) -> Formula {
        let tvars = t.vars();
        let mut avoid = self.all_vars();
        avoid.extend(tvars.iter().cloned());
        avoid.insert(x.to_string());
        fn go(
            f: &Formula,
            x: &str,
            t: &Term,
            tvars: &BTreeSet<String>,
            avoid: &mut BTreeSet<String>,
            env: &mut HashMap<String, String>,
            shadowed: bool,
        ) -> Formula {
            match f {
                Formula::Atom(a) => {
                    let a = a.rename_vars(env);
                    if shadowed {
                        Formula::Atom(a)
                    } else {
                        Formula::Atom(a.subst(x, t))
                    }
                }
                Formula::One | Formula::Zero => f.clone(),
                Formula::And(a, b) => Formula::and(
                    go(a, x, t, tvars, avoid, env, shadowed),
                    go(b, x, t, tvars, avoid, env, shadowed),
                ),
                Formula::Or(a, b) => Formula::or(
                    go(a, x, t, tvars, avoid, env, shadowed),
                    go(b, x, t, tvars, avoid, env, shadowed),
                ),
                Formula::Forall(v, a) | Formula::Exists(v, a) => {
                    let new = if tvars.contains(v) {
                        let n = fresh_name(v, avoid);
                        avoid.insert(n.clone());
                        n
                    } else {
                        v.clone()
                    };
                    let saved = env.insert(v.clone(), new.clone());
                    let body = go(a, x, t, tvars, avoid, env, shadowed || v == x);
                    match saved {
                        Some(s) => env.insert(v.clone(), s),
                        None => env.remove(v),
                    };
                    if matches!(f, Formula::Forall(..)) {
                        Formula::forall(&new, body)
                    } else {
                        Formula::exists(&new, body)
                    }
                }
            }
        }
        go(self, x, t, &tvars, &mut avoid, &mut HashMap::new(), false)
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn term_eq(s: &Term, t: &Term, e1: &[String], e2: &[String]) -> bool {
            match (s, t) {
                (Term::Var(a), Term::Var(b)) => {
                    let i = e1.iter().rposition(|v| v == a);
                    let j = e2.iter().rposition(|v| v == b);
                    match (i, j) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => a == b,
                        _ => false,
                    }
                }
                (Term::App(f, xs), Term::App(g, ys)) => {
                    f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, e1, e2))
                }
                _ => false,
            }
        }
        fn go(a: &Formula, b: &Formula, e1: &mut Vec<String>, e2: &mut Vec<String>) -> bool {
            match (a, b) {
                (Formula::Atom(p), Formula::Atom(q)) => {
                    p.pred == q.pred
                        && p.args.len() == q.args.len()
                        && p.args.iter().zip(&q.args).all(|(s, t)| term_eq(s, t, e1, e2))
                }
                (Formula::One, Formula::One) | (Formula::Zero, Formula::Zero) => true,
                (Formula::And(a1, a2), Formula::And(b1, b2)) | (Formula::Or(a1, a2), Formula::Or(b1, b2)) => {
                    go(a1, b1, e1, e2) && go(a2, b2, e1, e2)
                }
                (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                    e1.push(x.clone());
                    e2.push(y.clone());
                    let r = go(a, b, e1, e2);
                    e1.pop();
                    e2.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }

    pub fn is_extruded(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| match f {
            Formula::Or(a, b) if matches!(**a, Formula::Forall(..)) || matches!(**b, Formula::Forall(..)) => ok = false,
            Formula::And(a, b) if matches!(**a, Formula::Exists(..)) || matches!(**b, Formula::Exists(..)) => ok = false,
            _ => {}
        });
        ok
    }

    pub fn is_unambiguous(&self) -> bool {
        fn go(f: &Formula, scope: &mut Vec<String>) -> bool {
            match f {
                Formula::Atom(_) | Formula::One | Formula::Zero => true,
                Formula::And(a, b) | Formula::Or(a, b) => go(a, scope) && go(b, scope),
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    if scope.contains(x) {
                        return false;
                    }
                    scope.push(x.clone());
                    let r = go(a, scope);
                    scope.pop();
                    r
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn is_clear(&self) -> bool {
        self.is_extruded() && self.is_unambiguous()
    }

    /// Precedence used by the printer: 0 quantifier, 1 disjunction, 2 conjunction, 3 atomic.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(f: &mut fmt::Formatter<'_>, g: &Formula, min: u8) -> fmt::Result {
            if g.precedence() < min || g.precedence() == 0 {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::One => write!(f, "1"),
            Formula::Zero => write!(f, "0"),
            Formula::And(a, b) => {
                operand(f, a, 2)?;
                write!(f, " & ")?;
                operand(f, b, 3)
            }
            Formula::Or(a, b) => {
                operand(f, a, 1)?;
                write!(f, " \\/ ")?;
                operand(f, b, 2)
            }
            Formula::Forall(x, a) => write!(f, "all {x}. {a}"),
            Formula::Exists(x, a) => write!(f, "ex {x}. {a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn new(fs: Vec<Formula>) -> Sequent {
        Sequent(fs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.0.iter().flat_map(|f| f.free_vars()).collect()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if g.precedence() == 0 {
                write!(f, "({g})")?;
            } else {
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

/// Right-nested disjunction of the members, in order.
pub fn formula_of_sequent(s: &Sequent) -> Result<Formula, SyntaxError> {
    let mut it = s.0.iter().rev();
    let last = it.next().ok_or(SyntaxError::EmptySequent)?.clone();
    Ok(it.fold(last, |acc, f| Formula::or(f.clone(), acc)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn negate_examples() {
        assert_eq!(p("p(x)").negate(), p("~p(x)"));
        assert_eq!(p("all x. p(x)").negate(), p("ex x. ~p(x)"));
        assert_eq!(Formula::One.negate(), Formula::Zero);
    }

    #[test]
    fn rectify_renames_clashing_binders() {
        let f = p("(all x. p(x)) \\/ (all x. q(x) \\/ r(x))");
        let r = f.rectify();
        assert!(r.is_rectified());
        assert!(r.alpha_eq(&p("(all x. p(x)) \\/ (all z. q(z) \\/ r(z))")));
        assert_eq!(r, p("(all x. p(x)) \\/ (all x1. q(x1) \\/ r(x1))"));
        assert_eq!(p("all x. all x. p(x)").rectify(), p("all x. all x1. p(x1)"));
        let drinker = p("ex x. (~p(x) \\/ all y. p(y))");
        assert_eq!(drinker.rectify(), drinker);
    }

    #[test]
    fn rectify_avoids_free_variables() {
        let f = p("p(x) & ex x. q(x)");
        let r = f.rectify();
        assert_eq!(r, p("p(x) & ex x1. q(x1)"));
    }

    #[test]
    fn subst_examples() {
        let t = parse_term("f(y)").unwrap();
        assert_eq!(p("p(x) \\/ ex y. q(y)").subst("x", &t), p("p(f(y)) \\/ ex y1. q(y1)"));
        assert_eq!(p("p(y)").subst("x", &t), p("p(y)"));
        assert_eq!(p("p(x)").subst("x", &Term::var("x")), p("p(x)"));
        assert_eq!(p("all x. p(x)").subst("x", &t), p("all x. p(x)"));
    }

    #[test]
    fn clear_examples() {
        assert!(!p("p \\/ all x. q(x)").is_clear());
        assert!(!p("ex x. (~p(x) \\/ all y. p(y))").is_clear());
        assert!(p("ex x. all y. (~p(x) \\/ p(y))").is_clear());
        assert!(p("p").is_clear());
        assert!(!p("all x. ex x. p(x)").is_clear());
        assert!(p("(ex x. p(x)) \\/ (ex x. p(x))").is_clear());
    }

    #[test]
    fn sequent_formula_nests_right() {
        let s = parse_sequent("p, q, r").unwrap();
        assert_eq!(formula_of_sequent(&s).unwrap(), p("p \\/ (q \\/ r)"));
        assert_eq!(formula_of_sequent(&parse_sequent("p(x), ex y. ~p(y)").unwrap()).unwrap(), p("p(x) \\/ ex y. ~p(y)"));
        assert_eq!(formula_of_sequent(&Sequent::default()), Err(SyntaxError::EmptySequent));
    }

    #[test]
    fn fresh_names_strip_digits() {
        let used: BTreeSet<String> = ["x", "x1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fresh_name("x", &used), "x2");
        assert_eq!(fresh_name("x1", &used), "x2");
    }
}
