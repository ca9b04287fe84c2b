//! Right-sided sequent proofs, their checking, and compilation to combinatorial proofs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::bifib::{verify_cp, CheckReport, CombProof};
use crate::fograph::{graph_of, FoLabel, Fograph, FographError, Quantifier};
use crate::graphs::UGraph;
use crate::syntax::{formula_of_sequent, parse_formula, parse_term, Atom, Formula, Sequent, SyntaxError, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("at node {path:?}: {msg}")]
    IllFormed { path: Vec<usize>, msg: String },
    #[error("s-expression error at offset {pos}: {msg}")]
    Sexp { pos: usize, msg: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("compiled source is not a fograph: {0}")]
    Source(#[from] FographError),
    #[error("compiled proof does not verify:\n{0}")]
    Unverified(CheckReport),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rule {
    /// `~a, a`
    Ax(Atom),
    One,
    /// Swaps the formulas at 1-based positions `k` and `k+1`.
    Exchange(usize),
    Weaken(Formula),
    /// Drops the last formula, which must be an alpha-variant of the one before it.
    Contract(Option<Formula>),
    And,
    Or,
    Exists {
        var: String,
        body: Formula,
        witness: Term,
    },
    Forall(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RProof {
    pub rule: Rule,
    pub premises: Vec<RProof>,
}

impl RProof {
    pub fn new(rule: Rule, premises: Vec<RProof>) -> RProof {
        RProof { rule, premises }
    }

    pub fn ax(a: Atom) -> RProof {
        RProof::new(Rule::Ax(a), vec![])
    }

    pub fn one() -> RProof {
        RProof::new(Rule::One, vec![])
    }

    pub fn exchange(k: usize, p: RProof) -> RProof {
        RProof::new(Rule::Exchange(k), vec![p])
    }

    pub fn weaken(f: Formula, p: RProof) -> RProof {
        RProof::new(Rule::Weaken(f), vec![p])
    }

    pub fn contract(p: RProof) -> RProof {
        RProof::new(Rule::Contract(None), vec![p])
    }

    pub fn and(p: RProof, q: RProof) -> RProof {
        RProof::new(Rule::And, vec![p, q])
    }

    pub fn or(p: RProof) -> RProof {
        RProof::new(Rule::Or, vec![p])
    }

    pub fn exists(var: &str, body: Formula, witness: Term, p: RProof) -> RProof {
        RProof::new(
            Rule::Exists {
                var: var.to_string(),
                body,
                witness,
            },
            vec![p],
        )
    }

    pub fn forall(var: &str, p: RProof) -> RProof {
        RProof::new(Rule::Forall(var.to_string()), vec![p])
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(RProof::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(RProof::size).sum::<usize>()
    }

    /// Number of rule instances matching `pred`.
    pub fn count(&self, pred: &impl Fn(&Rule) -> bool) -> usize {
        usize::from(pred(&self.rule)) + self.premises.iter().map(|p| p.count(pred)).sum::<usize>()
    }
}

fn ill(path: &[usize], msg: impl Into<String>) -> ProofError {
    ProofError::IllFormed {
        path: path.to_vec(),
        msg: msg.into(),
    }
}

/// Checks every rule instance and returns the conclusion.
pub fn check_rproof(p: &RProof) -> Result<Sequent, ProofError> {
    conclusion_at(p, &mut Vec::new())
}

fn conclusion_at(p: &RProof, path: &mut Vec<usize>) -> Result<Sequent, ProofError> {
    let mut hyps = Vec::new();
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        hyps.push(conclusion_at(q, path)?);
        path.pop();
    }
    step(&p.rule, &hyps, path)
}

fn arity(rule: &Rule) -> usize {
    match rule {
        Rule::Ax(_) | Rule::One => 0,
        Rule::And => 2,
        _ => 1,
    }
}

/// Conclusion of one rule instance from its premise conclusions.
fn step(rule: &Rule, hyps: &[Sequent], path: &[usize]) -> Result<Sequent, ProofError> {
    let n = arity(rule);
    if hyps.len() != n {
        return Err(ill(path, format!("expected {n} premise(s), found {}", hyps.len())));
    }
    let mut fs = hyps.first().map(|s| s.0.clone()).unwrap_or_default();
    match rule {
        Rule::Ax(a) => fs = vec![Formula::Atom(a.dual()), Formula::Atom(a.clone())],
        Rule::One => fs = vec![Formula::One],
        Rule::Exchange(k) => {
            if *k == 0 || k + 1 > fs.len() {
                return Err(ill(path, format!("no positions {k} and {} in a sequent of {}", k + 1, fs.len())));
            }
            fs.swap(k - 1, *k);
        }
        Rule::Weaken(f) => fs.push(f.clone()),
        Rule::Contract(given) => {
            if fs.len() < 2 {
                return Err(ill(path, "contraction needs two formulas"));
            }
            let last = fs.pop().expect("len >= 2");
            let keep = fs.last().expect("len >= 1");
            if !last.alpha_eq(keep) {
                return Err(ill(path, format!("`{last}` is not an alpha-variant of `{keep}`")));
            }
            if let Some(g) = given {
                if !g.alpha_eq(&last) {
                    return Err(ill(path, format!("`{g}` is not an alpha-variant of `{last}`")));
                }
            }
        }
        Rule::And => {
            let mut right = hyps[1].0.clone();
            let (Some(a), Some(b)) = (fs.pop(), right.pop()) else {
                return Err(ill(path, "conjunction needs non-empty premises"));
            };
            fs.extend(right);
            fs.push(Formula::and(a, b));
        }
        Rule::Or => {
            if fs.len() < 2 {
                return Err(ill(path, "disjunction needs two formulas"));
            }
            let b = fs.pop().expect("len >= 2");
            let a = fs.pop().expect("len >= 1");
            fs.push(Formula::or(a, b));
        }
        Rule::Exists { var, body, witness } => {
            let Some(last) = fs.pop() else {
                return Err(ill(path, "existential rule needs a formula"));
            };
            let inst = body.subst(var, witness);
            if !inst.alpha_eq(&last) {
                return Err(ill(path, format!("`{last}` is not `{body}` with {var} := {witness}")));
            }
            fs.push(Formula::exists(var, body.clone()));
        }
        Rule::Forall(x) => {
            let Some(last) = fs.pop() else {
                return Err(ill(path, "universal rule needs a formula"));
            };
            if let Some(f) = fs.iter().find(|f| f.free_vars().contains(x)) {
                return Err(ill(path, format!("eigenvariable {x} is free in `{f}`")));
            }
            fs.push(Formula::forall(x, last));
        }
    }
    Ok(Sequent(fs))
}

/// Number of graph vertices a formula contributes.
fn vertex_count(f: &Formula) -> usize {
    match f {
        Formula::Atom(_) | Formula::One | Formula::Zero => 1,
        Formula::And(a, b) | Formula::Or(a, b) => vertex_count(a) + vertex_count(b),
        Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + vertex_count(a),
    }
}

/// Start of each member's block of vertices, plus the total.
fn offsets(s: &Sequent) -> Vec<usize> {
    let mut out = vec![0];
    for f in &s.0 {
        out.push(out.last().expect("non-empty") + vertex_count(f));
    }
    out
}

/// Unlabelled coloured source with its map into the graph of the current conclusion.
#[derive(Clone, Debug)]
struct Skeleton {
    graph: UGraph<()>,
    map: Vec<usize>,
}

impl Skeleton {
    fn remap(&mut self, f: impl Fn(usize) -> usize) {
        self.map.iter_mut().for_each(|w| *w = f(*w));
    }

    fn preimage(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&v| (lo..hi).contains(&self.map[v])).collect()
    }

    fn remove(&mut self, dead: &BTreeSet<usize>) {
        let keep: Vec<usize> = (0..self.graph.n()).filter(|v| !dead.contains(v)).collect();
        let (g, _) = self.graph.induced(&keep).expect("in range");
        self.map = keep.iter().map(|&v| self.map[v]).collect();
        self.graph = g;
    }
}

fn compile(p: &RProof, path: &mut Vec<usize>) -> Result<(Skeleton, Sequent), ProofError> {
    let mut subs = Vec::new();
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        subs.push(compile(q, path)?);
        path.pop();
    }
    let hyps: Vec<Sequent> = subs.iter().map(|(_, s)| s.clone()).collect();
    let conc = step(&p.rule, &hyps, path)?;
    let mut subs = subs.into_iter();
    let sk = match &p.rule {
        Rule::Ax(_) => {
            let mut g = UGraph::new();
            for _ in 0..2 {
                let v = g.add_vertex(());
                g.set_colour(v, Some(0));
            }
            Skeleton { graph: g, map: vec![0, 1] }
        }
        Rule::One => Skeleton {
            graph: UGraph::singleton(()),
            map: vec![0],
        },
        Rule::Or | Rule::Weaken(_) => subs.next().expect("one premise").0,
        Rule::Exchange(k) => {
            let (mut sk, hyp) = subs.next().expect("one premise");
            let off = offsets(&hyp);
            let (a0, b0, b1) = (off[k - 1], off[*k], off[k + 1]);
            sk.remap(|w| {
                if (a0..b0).contains(&w) {
                    w + (b1 - b0)
                } else if (b0..b1).contains(&w) {
                    w - (b0 - a0)
                } else {
                    w
                }
            });
            sk
        }
        Rule::Forall(_) | Rule::Exists { .. } => {
            let (mut sk, hyp) = subs.next().expect("one premise");
            let off = offsets(&hyp);
            let lo = off[off.len() - 2];
            let portion = sk.preimage(lo, off[off.len() - 1]);
            sk.remap(|w| if w >= lo { w + 1 } else { w });
            if !portion.is_empty() {
                let v = sk.graph.add_vertex(());
                sk.map.push(lo);
                if matches!(p.rule, Rule::Exists { .. }) {
                    for u in portion {
                        sk.graph.add_edge(u, v).expect("fresh vertex");
                    }
                }
            }
            sk
        }
        Rule::Contract(_) => {
            let (mut sk, hyp) = subs.next().expect("one premise");
            let off = offsets(&hyp);
            let k = hyp.len();
            let (a0, b0) = (off[k - 2], off[k - 1]);
            sk.remap(|w| if w >= b0 { w - (b0 - a0) } else { w });
            let target = graph_of(&formula_of_sequent(&conc)?);
            let mut by_image: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (v, &w) in sk.map.iter().enumerate() {
                by_image.entry(w).or_default().push(v);
            }
            let mut dead = BTreeSet::new();
            for (w, vs) in by_image {
                let outer_universal = target.label(w).is_binder()
                    && target.graph().degree(w) == 0
                    && target.binder_kind(w) == Ok(Quantifier::Universal);
                if outer_universal && vs.len() > 1 {
                    dead.extend(vs[1..].iter().copied());
                }
            }
            sk.remove(&dead);
            sk
        }
        Rule::And => {
            let (s1, h1) = subs.next().expect("two premises");
            let (s2, h2) = subs.next().expect("two premises");
            let (o1, o2) = (offsets(&h1), offsets(&h2));
            let g = o1[o1.len() - 2];
            let a = o1[o1.len() - 1] - g;
            let d = o2[o2.len() - 2];
            let z1 = |w: usize| if w < g { w } else { w + d };
            let z2 = |w: usize| if w < d { g + w } else { g + a + w };
            let p1 = s1.preimage(g, g + a);
            let p2 = s2.preimage(d, o2[o2.len() - 1]);
            match (p1.is_empty(), p2.is_empty()) {
                (true, false) => Skeleton {
                    map: s1.map.iter().map(|&w| z1(w)).collect(),
                    graph: s1.graph,
                },
                (false, true) => Skeleton {
                    map: s2.map.iter().map(|&w| z2(w)).collect(),
                    graph: s2.graph,
                },
                _ => {
                    let shift = s1.graph.n();
                    let mut graph = s1.graph.union(&s2.graph);
                    for &u in &p1 {
                        for &v in &p2 {
                            graph.add_edge(u, shift + v).expect("distinct sides");
                        }
                    }
                    let map = s1.map.iter().map(|&w| z1(w)).chain(s2.map.iter().map(|&w| z2(w))).collect();
                    Skeleton { graph, map }
                }
            }
        }
    };
    Ok((sk, conc))
}

/// The combinatorial proof of the conclusion of `p`, with source labels lifted from the target.
pub fn cp_of_rproof(p: &RProof) -> Result<CombProof, ProofError> {
    let (sk, conc) = compile(p, &mut Vec::new())?;
    let formula = formula_of_sequent(&conc)?;
    let target = graph_of(&formula);
    let mut src: UGraph<FoLabel> = sk.graph.map_labels(|v, _| target.label(sk.map[v]).clone());
    let mut classes: BTreeMap<u32, u32> = BTreeMap::new();
    for v in 0..src.n() {
        if let Some(c) = src.colour(v) {
            let next = classes.len() as u32;
            let c = *classes.entry(c).or_insert(next);
            src.set_colour(v, Some(c));
        }
    }
    let source = Fograph::new(src)?;
    Ok(CombProof {
        source,
        target,
        formula: Some(formula),
        map: sk.map,
    })
}

/// Compiles and re-verifies.
pub fn compile_checked(p: &RProof) -> Result<CombProof, ProofError> {
    let cp = cp_of_rproof(p)?;
    let r = verify_cp(&cp);
    if r.accepted() {
        Ok(cp)
    } else {
        Err(ProofError::Unverified(r))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

fn lex_sexp(src: &str) -> Result<Sexp, ProofError> {
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut done: Option<Sexp> = None;
    let err = |pos: usize, msg: &str| ProofError::Sexp { pos, msg: msg.into() };
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == ';' {
            while i < bytes.len() && bytes[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        if done.is_some() {
            return Err(err(pos, "trailing input"));
        }
        let item = match c {
            '(' => {
                stack.push((Vec::new(), pos));
                i += 1;
                continue;
            }
            ')' => {
                let (items, start) = stack.pop().ok_or_else(|| err(pos, "unbalanced `)`"))?;
                i += 1;
                Sexp::List(items, start)
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    let Some(&(_, c)) = bytes.get(i) else {
                        return Err(err(pos, "unterminated string"));
                    };
                    i += 1;
                    match c {
                        '"' => break,
                        '\\' => {
                            let (_, e) = *bytes.get(i).ok_or_else(|| err(pos, "unterminated string"))?;
                            s.push(e);
                            i += 1;
                        }
                        c => s.push(c),
                    }
                }
                Sexp::Atom(s, pos)
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, c)) = bytes.get(i) {
                    if c.is_whitespace() || "()\";".contains(c) {
                        break;
                    }
                    s.push(c);
                    i += 1;
                }
                Sexp::Atom(s, pos)
            }
        };
        match stack.last_mut() {
            Some((items, _)) => items.push(item),
            None => done = Some(item),
        }
    }
    if let Some((_, start)) = stack.pop() {
        return Err(err(start, "unbalanced `(`"));
    }
    done.ok_or_else(|| err(src.len(), "empty input"))
}

fn proof_of_sexp(e: &Sexp) -> Result<RProof, ProofError> {
    let Sexp::List(items, pos) = e else {
        let Sexp::Atom(a, pos) = e else { unreachable!() };
        return Err(ProofError::Sexp {
            pos: *pos,
            msg: format!("expected a rule, found `{a}`"),
        });
    };
    let pos = *pos;
    let err = |msg: String| ProofError::Sexp { pos, msg };
    let word = |k: usize| match items.get(k) {
        Some(Sexp::Atom(s, _)) => Ok(s.as_str()),
        _ => Err(err(format!("argument {k} should be a word or string"))),
    };
    let sub = |k: usize| items.get(k).ok_or_else(|| err(format!("missing premise at {k}"))).and_then(proof_of_sexp);
    let formula = |k: usize| word(k).and_then(|s| parse_formula(s).map_err(ProofError::from));
    let head = word(0)?;
    let expect = |n: usize| {
        if items.len() == n {
            Ok(())
        } else {
            Err(err(format!("`{head}` takes {} argument(s), found {}", n - 1, items.len() - 1)))
        }
    };
    let p = match head {
        "ax" => {
            expect(2)?;
            match formula(1)? {
                Formula::Atom(a) => RProof::ax(a),
                f => return Err(err(format!("`{f}` is not an atom"))),
            }
        }
        "one" => {
            expect(1)?;
            RProof::one()
        }
        "x" => {
            expect(3)?;
            let k = word(1)?.parse().map_err(|_| err("exchange position must be a number".into()))?;
            RProof::exchange(k, sub(2)?)
        }
        "w" => {
            expect(3)?;
            RProof::weaken(formula(1)?, sub(2)?)
        }
        "c" => match items.len() {
            2 => RProof::contract(sub(1)?),
            3 => RProof::new(Rule::Contract(Some(formula(1)?)), vec![sub(2)?]),
            _ => return Err(err("`c` takes an optional formula and one premise".into())),
        },
        "and" => {
            expect(3)?;
            RProof::and(sub(1)?, sub(2)?)
        }
        "or" => {
            expect(2)?;
            RProof::or(sub(1)?)
        }
        "ex" => {
            expect(5)?;
            let t = parse_term(word(3)?)?;
            RProof::exists(word(1)?, formula(2)?, t, sub(4)?)
        }
        "all" => {
            expect(3)?;
            RProof::forall(word(1)?, sub(2)?)
        }
        other => return Err(err(format!("unknown rule `{other}`"))),
    };
    Ok(p)
}

/// Reads a proof such as `(or (x 1 (ax p)))`. Formulas and terms containing
/// spaces or parentheses go in double quotes; `;` starts a comment.
pub fn parse_rproof(src: &str) -> Result<RProof, ProofError> {
    proof_of_sexp(&lex_sexp(src)?)
}

fn quote(s: String) -> String {
    if !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "()\";".contains(c)) {
        return s;
    }
    let mut out = String::from('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

impl fmt::Display for RProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Rule::Ax(a) => write!(f, "(ax {}", quote(a.to_string()))?,
            Rule::One => write!(f, "(one")?,
            Rule::Exchange(k) => write!(f, "(x {k}")?,
            Rule::Weaken(g) => write!(f, "(w {}", quote(g.to_string()))?,
            Rule::Contract(None) => write!(f, "(c")?,
            Rule::Contract(Some(g)) => write!(f, "(c {}", quote(g.to_string()))?,
            Rule::And => write!(f, "(and")?,
            Rule::Or => write!(f, "(or")?,
            Rule::Exists { var, body, witness } => {
                write!(f, "(ex {var} {} {}", quote(body.to_string()), quote(witness.to_string()))?
            }
            Rule::Forall(x) => write!(f, "(all {x}")?,
        }
        for p in &self.premises {
            write!(f, " {p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropOracleResult {
    pub valid: bool,
    /// Atoms assigned true and false by a falsifying valuation.
    pub countermodel: Option<BTreeMap<String, bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("formula has quantifiers")]
    NotPropositional,
    #[error("{0} distinct atoms exceed the limit of {MAX_ORACLE_ATOMS}")]
    TooManyAtoms(usize),
}

pub const MAX_ORACLE_ATOMS: usize = 20;

fn positive_key(a: &Atom) -> String {
    let mut a = a.clone();
    a.pred.dualized = false;
    a.to_string()
}

fn eval(f: &Formula, index: &BTreeMap<String, usize>, bits: u32) -> bool {
    match f {
        Formula::Atom(a) => {
            let v = bits & (1 << index[&positive_key(a)]) != 0;
            v != a.pred.dualized
        }
        Formula::One => true,
        Formula::Zero => false,
        Formula::And(a, b) => eval(a, index, bits) && eval(b, index, bits),
        Formula::Or(a, b) => eval(a, index, bits) || eval(b, index, bits),
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("checked quantifier-free"),
    }
}

/// Truth-table validity, treating each distinct atom as a proposition.
pub fn prop_tautology(f: &Formula) -> Result<PropOracleResult, OracleError> {
    if !f.is_quantifier_free() {
        return Err(OracleError::NotPropositional);
    }
    let mut keys = BTreeSet::new();
    f.visit(&mut |g| {
        if let Formula::Atom(a) = g {
            keys.insert(positive_key(a));
        }
    });
    if keys.len() > MAX_ORACLE_ATOMS {
        return Err(OracleError::TooManyAtoms(keys.len()));
    }
    let index: BTreeMap<String, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    for bits in 0u32..(1 << keys.len()) {
        if !eval(f, &index, bits) {
            let model = index.iter().map(|(k, &i)| (k.clone(), bits & (1 << i) != 0)).collect();
            return Ok(PropOracleResult {
                valid: false,
                countermodel: Some(model),
            });
        }
    }
    Ok(PropOracleResult {
        valid: true,
        countermodel: None,
    })
}

/// Standard proofs used as fixtures.
pub mod fixtures {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).expect("fixture formula")
    }

    fn atom(s: &str) -> Atom {
        match f(s) {
            Formula::Atom(a) => a,
            _ => panic!("fixture atom"),
        }
    }

    /// `~p \/ p`
    pub fn excluded_middle() -> RProof {
        RProof::or(RProof::ax(atom("p")))
    }

    /// `(~p \/ q) & ~p \/ p`, that is `((p -> q) -> p) -> p`.
    pub fn peirce() -> RProof {
        // p, ~p \/ q
        let left = RProof::or(RProof::exchange(1, RProof::weaken(f("q"), RProof::ax(atom("p")))));
        // p, ~p
        let right = RProof::exchange(1, RProof::ax(atom("p")));
        // p, p, (~p \/ q) & ~p  becomes  (~p \/ q) & ~p, p, p
        let both = RProof::exchange(1, RProof::exchange(2, RProof::and(left, right)));
        RProof::or(RProof::contract(both))
    }

    /// `ex x. (~p(x) \/ all y. p(y))`
    pub fn drinker() -> RProof {
        let body = f("~p(x) \\/ all y. p(y)");
        // ~p(y1), p(y1)
        let ax = RProof::ax(atom("p(y1)"));
        // ~p(y1), p(y1), all y. p(y)
        let w = RProof::weaken(f("all y. p(y)"), ax);
        // p(y1), ~p(y1) \/ all y. p(y)
        let inst = RProof::or(RProof::exchange(1, w));
        // p(y1), ex x. body
        let first = RProof::exists("x", body.clone(), Term::var("y1"), inst);
        // ex x. body, p(y1)
        let swapped = RProof::exchange(1, first);
        // ex x. body, ~p(z), p(y1)
        let weak = RProof::exchange(2, RProof::weaken(f("~p(z)"), swapped));
        // ex x. body, ~p(z), all y1. p(y1)
        let univ = RProof::forall("y1", weak);
        let second_body = f("~p(x1) \\/ all y1. p(y1)");
        let second = RProof::exists("x1", second_body, Term::var("z"), RProof::or(univ));
        RProof::contract(second)
    }

    /// `~(all x. p(x) & q(x)) \/ (all x. p(x)) & all x. q(x)`
    pub fn forall_distribution() -> RProof {
        let body = f("~p(x) \\/ ~q(x)");
        let half = |pick: &str, other: &str| {
            // ~pick(x), pick(x), ~other(x)
            let w = RProof::weaken(f(&format!("~{other}(x)")), RProof::ax(atom(&format!("{pick}(x)"))));
            // ~p(x), ~q(x), pick(x)
            let ordered = if pick == "p" {
                RProof::exchange(2, w)
            } else {
                RProof::exchange(1, RProof::exchange(2, w))
            };
            // pick(x), ~p(x), ~q(x)
            let front = RProof::exchange(1, RProof::exchange(2, ordered));
            let ex = RProof::exists("x", body.clone(), Term::var("x"), RProof::or(front));
            RProof::forall("x", RProof::exchange(1, ex))
        };
        // ex, ex, conj  becomes  conj, ex
        let both = RProof::and(half("p", "q"), half("q", "p"));
        let merged = RProof::contract(RProof::exchange(1, RProof::exchange(2, both)));
        RProof::or(RProof::exchange(1, merged))
    }
}
