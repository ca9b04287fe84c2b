//! Unification over rigid and solvable variables, dualizers, dependencies and leap graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::fograph::{FoLabel, Fograph, Quantifier};
use crate::graphs::UGraph;
use crate::syntax::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("symbol clash between `{0}` and `{1}`")]
    Clash(String, String),
    #[error("occurs check: `{0}` inside `{1}`")]
    OccursCheck(String, String),
    #[error("not linked: {0}")]
    NotLinked(String),
    #[error("no dualizer: {0}")]
    NoDualizer(Box<UnifyError>),
    #[error("composition exceeded {0} term nodes")]
    Budget(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Var(String),
    Rigid(String),
    App(String, Vec<usize>),
}

/// Union-find over hash-consed term nodes with one non-variable schema per class.
struct Classes {
    nodes: Vec<Node>,
    interned: HashMap<Node, usize>,
    parent: Vec<usize>,
    size: Vec<usize>,
    schema: Vec<Option<usize>>,
    vars: Vec<Vec<String>>,
}

impl Classes {
    fn new() -> Classes {
        Classes {
            nodes: Vec::new(),
            interned: HashMap::new(),
            parent: Vec::new(),
            size: Vec::new(),
            schema: Vec::new(),
            vars: Vec::new(),
        }
    }

    fn intern(&mut self, t: &Term, solvable: &BTreeSet<String>) -> usize {
        let node = match t {
            Term::Var(x) if solvable.contains(x) => Node::Var(x.clone()),
            Term::Var(x) => Node::Rigid(x.clone()),
            Term::App(f, args) => Node::App(f.clone(), args.iter().map(|a| self.intern(a, solvable)).collect()),
        };
        if let Some(&id) = self.interned.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.parent.push(id);
        self.size.push(1);
        match &node {
            Node::Var(x) => {
                self.schema.push(None);
                self.vars.push(vec![x.clone()]);
            }
            _ => {
                self.schema.push(Some(id));
                self.vars.push(Vec::new());
            }
        }
        self.nodes.push(node.clone());
        self.interned.insert(node, id);
        id
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn describe(&self, node: usize) -> String {
        match &self.nodes[node] {
            Node::Var(x) | Node::Rigid(x) => x.clone(),
            Node::App(f, args) => format!("{f}/{}", args.len()),
        }
    }

    fn unify(&mut self, a: usize, b: usize) -> Result<(), UnifyError> {
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let (sa, sb) = (self.schema[ra], self.schema[rb]);
            if let (Some(sa), Some(sb)) = (sa, sb) {
                match (&self.nodes[sa], &self.nodes[sb]) {
                    (Node::App(f, xs), Node::App(g, ys)) if f == g && xs.len() == ys.len() => {
                        work.extend(xs.iter().copied().zip(ys.iter().copied()));
                    }
                    _ => return Err(UnifyError::Clash(self.describe(sa), self.describe(sb))),
                }
            }
            let (root, other) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
            self.parent[other] = root;
            self.size[root] += self.size[other];
            let moved = std::mem::take(&mut self.vars[other]);
            self.vars[root].extend(moved);
            self.schema[root] = sa.or(sb);
        }
        Ok(())
    }

    fn children(&mut self, root: usize) -> Vec<usize> {
        match self.schema[root].map(|s| self.nodes[s].clone()) {
            Some(Node::App(_, args)) => args.into_iter().map(|c| self.find(c)).collect(),
            _ => Vec::new(),
        }
    }

    /// Fails if the class graph has a cycle, naming a variable on it.
    fn check_acyclic(&mut self) -> Result<(), UnifyError> {
        let n = self.nodes.len();
        let mut state = vec![0u8; n];
        for start in 0..n {
            let r = self.find(start);
            if state[r] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
            state[r] = 1;
            let kids = self.children(r);
            stack.push((r, kids));
            while let Some((v, kids)) = stack.last_mut() {
                let v = *v;
                match kids.pop() {
                    Some(c) if state[c] == 1 => {
                        let cycle: Vec<usize> = stack.iter().map(|(u, _)| *u).skip_while(|&u| u != c).collect();
                        let x = cycle
                            .iter()
                            .flat_map(|&u| self.vars[u].iter().cloned())
                            .min()
                            .unwrap_or_else(|| "?".to_string());
                        let t = self.schema[c].map(|s| self.describe(s)).unwrap_or_default();
                        return Err(UnifyError::OccursCheck(x, t));
                    }
                    Some(c) if state[c] == 0 => {
                        state[c] = 1;
                        let ck = self.children(c);
                        stack.push((c, ck));
                    }
                    Some(_) => {}
                    None => {
                        state[v] = 2;
                        stack.pop();
                    }
                }
            }
        }
        Ok(())
    }

    fn designated(&self, root: usize) -> Option<&String> {
        self.vars[root].iter().min()
    }

    fn term_of(&mut self, root: usize, top: bool) -> Term {
        if let Some(Node::Rigid(x)) = self.schema[root].map(|s| &self.nodes[s]) {
            return Term::Var(x.clone());
        }
        if !top {
            if let Some(d) = self.designated(root) {
                return Term::Var(d.clone());
            }
        }
        match self.schema[root].map(|s| self.nodes[s].clone()) {
            Some(Node::Rigid(x)) => Term::Var(x),
            Some(Node::App(f, args)) => {
                let kids = args
                    .into_iter()
                    .map(|c| {
                        let r = self.find(c);
                        self.term_of(r, false)
                    })
                    .collect();
                Term::App(f, kids)
            }
            Some(Node::Var(_)) | None => Term::Var(self.designated(root).cloned().unwrap_or_default()),
        }
    }
}

/// Ordered bindings `(x_i, u_i)` where `x_i` occurs only in earlier terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangularMgu(pub Vec<(String, Term)>);

impl TriangularMgu {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<String> {
        self.0.iter().map(|(x, _)| x.clone()).collect()
    }

    /// Triangular ordering condition holds.
    pub fn is_triangular(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, (x, _))| self.0[i..].iter().all(|(_, u)| !u.contains_var(x)))
    }

    /// Fully composed substitution. `seed` gives values for variables outside the domain;
    /// fails once the total node count exceeds `budget`.
    pub fn compose(&self, seed: &BTreeMap<String, Term>, budget: usize) -> Result<BTreeMap<String, Term>, UnifyError> {
        let mut out = seed.clone();
        let mut total = 0usize;
        for (x, u) in self.0.iter().rev() {
            let t = apply_budgeted(u, &out, &mut total, budget)?;
            out.insert(x.clone(), t);
        }
        Ok(out)
    }

    /// Each `u_i` replaced by a fresh symbol `$f_i` applied to the variables of `u_i`.
    pub fn abstracted(&self) -> TriangularMgu {
        TriangularMgu(
            self.0
                .iter()
                .enumerate()
                .map(|(i, (x, u))| (x.clone(), Term::App(format!("$f{}", i + 1), u.vars().into_iter().map(Term::Var).collect())))
                .collect(),
        )
    }

    /// Variables outside the domain that occur in the composed value of each domain variable.
    /// Computed on the abstracted bindings, sharing variable sets across the DAG.
    pub fn reachable_vars(&self) -> BTreeMap<String, BTreeSet<String>> {
        let dom = self.domain();
        let mut out: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (x, u) in self.abstracted().0.iter().rev() {
            let mut s = BTreeSet::new();
            for v in u.vars() {
                if dom.contains(&v) {
                    s.extend(out[&v].iter().cloned());
                } else {
                    s.insert(v);
                }
            }
            out.insert(x.clone(), s);
        }
        out
    }
}

fn apply_budgeted(t: &Term, map: &BTreeMap<String, Term>, total: &mut usize, budget: usize) -> Result<Term, UnifyError> {
    match t {
        Term::Var(x) => match map.get(x) {
            Some(s) => {
                *total += s.size();
                if *total > budget {
                    return Err(UnifyError::Budget(budget));
                }
                Ok(s.clone())
            }
            None => {
                *total += 1;
                Ok(t.clone())
            }
        },
        Term::App(f, args) => {
            *total += 1;
            if *total > budget {
                return Err(UnifyError::Budget(budget));
            }
            let args = args
                .iter()
                .map(|a| apply_budgeted(a, map, total, budget))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::App(f.clone(), args))
        }
    }
}

pub fn apply(t: &Term, map: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(x) => map.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| apply(a, map)).collect()),
    }
}

/// Most general unifier solving for `solvable`; other variables are rigid.
pub fn mgu(equations: &[(Term, Term)], solvable: &BTreeSet<String>) -> Result<TriangularMgu, UnifyError> {
    let mut cls = Classes::new();
    let ids: Vec<(usize, usize)> = equations
        .iter()
        .map(|(s, t)| (cls.intern(s, solvable), cls.intern(t, solvable)))
        .collect();
    for (a, b) in ids {
        cls.unify(a, b)?;
    }
    cls.check_acyclic()?;

    let mut pairs: Vec<(String, Term)> = Vec::new();
    let roots: BTreeSet<usize> = (0..cls.nodes.len()).map(|i| cls.find(i)).collect();
    for r in roots {
        let Some(d) = cls.designated(r).cloned() else { continue };
        let mut members = cls.vars[r].clone();
        members.sort();
        for v in members.iter().filter(|v| **v != d) {
            pairs.push((v.clone(), Term::Var(d.clone())));
        }
        if cls.schema[r].is_some() {
            let t = cls.term_of(r, true);
            pairs.push((d, t));
        }
    }
    Ok(TriangularMgu(order_triangular(pairs)))
}

/// Kahn order: a pair mentioning `x` precedes `x`'s own pair; ties by name.
fn order_triangular(pairs: Vec<(String, Term)>) -> Vec<(String, Term)> {
    let index: HashMap<String, usize> = pairs.iter().enumerate().map(|(i, (x, _))| (x.clone(), i)).collect();
    let mut indegree = vec![0usize; pairs.len()];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for (j, (_, u)) in pairs.iter().enumerate() {
        for v in u.vars() {
            if let Some(&i) = index.get(&v) {
                succ[j].push(i);
                indegree[i] += 1;
            }
        }
    }
    let mut ready: BTreeSet<(String, usize)> = (0..pairs.len())
        .filter(|&i| indegree[i] == 0)
        .map(|i| (pairs[i].0.clone(), i))
        .collect();
    let mut order = Vec::new();
    while let Some(first) = ready.pop_first() {
        let j = first.1;
        order.push(j);
        for &i in &succ[j] {
            indegree[i] -= 1;
            if indegree[i] == 0 {
                ready.insert((pairs[i].0.clone(), i));
            }
        }
    }
    let mut slots: Vec<Option<(String, Term)>> = pairs.into_iter().map(Some).collect();
    order.into_iter().map(|i| slots[i].take().expect("each once")).collect()
}

/// Colour classes as literal pairs; errors unless each class is two pre-dual literals.
pub fn links_of(g: &UGraph<FoLabel>) -> Result<Vec<(usize, usize)>, UnifyError> {
    let mut out = Vec::new();
    for (c, class) in g.colour_classes() {
        let [a, b] = class[..] else {
            return Err(UnifyError::NotLinked(format!("colour {c} has {} vertices", class.len())));
        };
        match (g.label(a), g.label(b)) {
            (FoLabel::Lit(p), FoLabel::Lit(q)) if p.is_predual(q) => out.push((a, b)),
            _ => return Err(UnifyError::NotLinked(format!("colour {c} is not a pre-dual literal pair"))),
        }
    }
    Ok(out)
}

pub fn link_equations(g: &UGraph<FoLabel>) -> Result<Vec<(Term, Term)>, UnifyError> {
    let mut eqs = Vec::new();
    for (a, b) in links_of(g)? {
        let (p, q) = (g.label(a).atom().expect("literal"), g.label(b).atom().expect("literal"));
        eqs.extend(p.args.iter().cloned().zip(q.args.iter().cloned()));
    }
    Ok(eqs)
}

pub fn binder_vars_of_kind(g: &Fograph, kind: Quantifier) -> BTreeMap<String, usize> {
    g.binders()
        .into_iter()
        .filter(|&b| g.binder_kind(b) == Ok(kind))
        .map(|b| (g.label(b).binder_var().expect("binder").to_string(), b))
        .collect()
}

/// Most general dualizer of a rectified linked fograph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dualizer {
    pub mgu: TriangularMgu,
    /// Existential variable to its fully composed value; unconstrained ones map to stems.
    pub assignment: BTreeMap<String, Term>,
    /// Existential variable to the universal variables of its value.
    pub reach: BTreeMap<String, BTreeSet<String>>,
}

/// Default node budget when composing the dualizer.
pub const COMPOSE_BUDGET: usize = 2_000_000;

/// Dualizer of an already rectified linked fograph, or `None` if the link equations fail.
pub fn dualizer_rectified(g: &Fograph) -> Result<Option<Dualizer>, UnifyError> {
    dualizer_with(g, true)
}

fn dualizer_with(g: &Fograph, compose: bool) -> Result<Option<Dualizer>, UnifyError> {
    let eqs = link_equations(g.graph())?;
    let ex = binder_vars_of_kind(g, Quantifier::Existential);
    let solvable: BTreeSet<String> = ex.keys().cloned().collect();
    let m = match mgu(&eqs, &solvable) {
        Ok(m) => m,
        Err(UnifyError::Clash(..)) | Err(UnifyError::OccursCheck(..)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let dom = m.domain();
    let mut seed = BTreeMap::new();
    for (i, x) in solvable.iter().filter(|x| !dom.contains(*x)).enumerate() {
        seed.insert(x.clone(), Term::Var(format!("_s{}", i + 1)));
    }
    let universal: BTreeSet<String> = binder_vars_of_kind(g, Quantifier::Universal).into_keys().collect();
    let reach_all = m.reachable_vars();
    let reach = solvable
        .iter()
        .map(|x| {
            let s = reach_all
                .get(x)
                .map(|s| s.intersection(&universal).cloned().collect())
                .unwrap_or_default();
            (x.clone(), s)
        })
        .collect();
    let assignment = if compose {
        let mut a = m.compose(&seed, COMPOSE_BUDGET)?;
        a.retain(|k, _| solvable.contains(k));
        a
    } else {
        seed
    };
    Ok(Some(Dualizer { mgu: m, assignment, reach }))
}

/// Rectifies, then computes the most general dualizer.
pub fn dualizer_of(g: &Fograph) -> Result<Option<Dualizer>, UnifyError> {
    dualizer_rectified(&g.rectify())
}

/// Pairs (existential binder, universal binder) where the dualizer's value of the
/// first contains the variable of the second. Works on a rectified copy; vertex ids are unchanged.
pub fn dependencies(g: &Fograph) -> Result<BTreeSet<(usize, usize)>, UnifyError> {
    let r = g.rectify();
    let d = dualizer_with(&r, false)?.ok_or_else(|| UnifyError::NoDualizer(Box::new(UnifyError::Clash("links".into(), "links".into()))))?;
    Ok(dependency_pairs(&r, &d))
}

pub fn dependency_pairs(g: &Fograph, d: &Dualizer) -> BTreeSet<(usize, usize)> {
    let ex = binder_vars_of_kind(g, Quantifier::Existential);
    let un = binder_vars_of_kind(g, Quantifier::Universal);
    let mut out = BTreeSet::new();
    for (x, ys) in &d.reach {
        for y in ys {
            if let (Some(&bx), Some(&by)) = (ex.get(x), un.get(y)) {
                out.insert((bx, by));
            }
        }
    }
    out
}

/// Links plus dependencies, on the vertex set of `g`.
pub fn leap_graph(g: &Fograph) -> Result<UGraph<()>, UnifyError> {
    let deps = dependencies(g)?;
    Ok(leap_graph_from(g, &deps))
}

pub fn leap_graph_from(g: &Fograph, deps: &BTreeSet<(usize, usize)>) -> UGraph<()> {
    let mut l: UGraph<()> = UGraph::new();
    (0..g.n()).for_each(|_| {
        l.add_vertex(());
    });
    for (a, b) in links_of(g.graph()).unwrap_or_default() {
        l.add_edge(a, b).expect("distinct");
    }
    for &(a, b) in deps {
        l.add_edge(a, b).expect("distinct");
    }
    l
}
