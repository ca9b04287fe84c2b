//! First-order cographs: the graph of a formula, scopes, binding, legality,
//! formula extraction and the fusion and quantification constructors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graphs::{cotree_of, Cotree, FlatCotree, GraphError, Tag, UGraph};
use crate::syntax::{fresh_name, Atom, Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoLabel {
    Binder(String),
    Lit(Atom),
    /// `true` is 1, `false` is 0.
    Const(bool),
}

impl FoLabel {
    pub fn is_binder(&self) -> bool {
        matches!(self, FoLabel::Binder(_))
    }

    pub fn is_literal(&self) -> bool {
        !self.is_binder()
    }

    pub fn binder_var(&self) -> Option<&str> {
        match self {
            FoLabel::Binder(x) => Some(x),
            _ => None,
        }
    }

    pub fn atom(&self) -> Option<&Atom> {
        match self {
            FoLabel::Lit(a) => Some(a),
            _ => None,
        }
    }

    pub fn literal_has_var(&self, x: &str) -> bool {
        matches!(self, FoLabel::Lit(a) if a.contains_var(x))
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            FoLabel::Binder(x) => {
                out.insert(x.clone());
            }
            FoLabel::Lit(a) => a.vars_into(out),
            FoLabel::Const(_) => {}
        }
    }
}

impl fmt::Display for FoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoLabel::Binder(x) => write!(f, "{x}"),
            FoLabel::Lit(a) => write!(f, "{a}"),
            FoLabel::Const(true) => write!(f, "1"),
            FoLabel::Const(false) => write!(f, "0"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Universal,
    Existential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PortionFault {
    NotWellFounded,
    ComplementNotWellFounded,
    NotAdjacencyClosed,
    NotBindingClosed,
    UnknownVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FographError {
    #[error("not a cograph: induced path {0:?}")]
    NotACograph([usize; 4]),
    #[error("graph has no literal")]
    NoLiteral,
    #[error("scope of binder {0} contains no literal")]
    EmptyScope(usize),
    #[error("binder {1} has the same variable as binder {0} and lies in its scope")]
    BinderClash(usize, usize),
    #[error("vertex {0} is not a binder")]
    NotABinder(usize),
    #[error("formula is not clear")]
    NotClear,
    #[error("fographs are not independent: variable `{0}`")]
    NotIndependent(String),
    #[error("invalid portion ({fault:?}) at vertex {vertex}")]
    InvalidPortion { fault: PortionFault, vertex: usize },
    #[error("portion is empty")]
    EmptyPortion,
    #[error("variable `{0}` already occurs")]
    VariablePresent(String),
    #[error("occurrence at vertex {0} lies outside the portion")]
    OccurrenceOutsidePortion(usize),
    #[error("occurrence at vertex {0} does not address a term")]
    BadOccurrence(usize),
    #[error("occurrence at vertex {0} holds a different term")]
    TermMismatch(usize),
    #[error("term contains bound variable `{0}`")]
    TermContainsBoundVar(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Address of a term occurrence: literal vertex plus argument path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub vertex: usize,
    pub path: Vec<usize>,
}

/// Legality check: a cograph with a literal whose binders all have legal scopes.
/// Returns the cotree on success.
pub fn check_fograph(g: &UGraph<FoLabel>) -> Result<Cotree, FographError> {
    let t = cotree_of(g).map_err(|e| match e {
        GraphError::NotACograph(w) => FographError::NotACograph(w),
        other => FographError::Graph(other),
    })?;
    if !g.labels().iter().any(FoLabel::is_literal) {
        return Err(FographError::NoLiteral);
    }
    let flat = FlatCotree::new(&t, g.n());
    for b in 0..g.n() {
        let Some(x) = g.label(b).binder_var() else { continue };
        let scope = scope_in(&flat, b, g.n());
        if !scope.ones().any(|v| g.label(v).is_literal()) {
            return Err(FographError::EmptyScope(b));
        }
        if let Some(c) = scope.ones().find(|&c| c != b && g.label(c).binder_var() == Some(x)) {
            return Err(FographError::BinderClash(b, c));
        }
    }
    Ok(t)
}

fn scope_in(flat: &FlatCotree, v: usize, n: usize) -> FixedBitSet {
    match flat.parent(flat.leaf_node(v)) {
        Some(p) => flat.leaves_under(p).clone(),
        None => {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(v);
            s
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fograph {
    graph: UGraph<FoLabel>,
    names: Vec<String>,
    cotree: Cotree,
    flat: FlatCotree,
}

impl PartialEq for Fograph {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.names == other.names
    }
}

impl Fograph {
    /// Validates `graph`; vertex names default to their indices.
    pub fn new(graph: UGraph<FoLabel>) -> Result<Fograph, FographError> {
        let names = (0..graph.n()).map(|v| v.to_string()).collect();
        Fograph::with_names(graph, names)
    }

    pub fn with_names(graph: UGraph<FoLabel>, names: Vec<String>) -> Result<Fograph, FographError> {
        assert_eq!(names.len(), graph.n(), "one name per vertex");
        let cotree = check_fograph(&graph)?;
        let flat = FlatCotree::new(&cotree, graph.n());
        Ok(Fograph {
            graph,
            names,
            cotree,
            flat,
        })
    }

    pub fn graph(&self) -> &UGraph<FoLabel> {
        &self.graph
    }

    pub fn into_graph(self) -> UGraph<FoLabel> {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn label(&self, v: usize) -> &FoLabel {
        self.graph.label(v)
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn cotree(&self) -> &Cotree {
        &self.cotree
    }

    pub fn flat_cotree(&self) -> &FlatCotree {
        &self.flat
    }

    pub fn binders(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.label(v).is_binder()).collect()
    }

    pub fn literals(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.label(v).is_literal()).collect()
    }

    /// Leaves under the cotree parent of `v`.
    pub fn scope(&self, v: usize) -> FixedBitSet {
        scope_in(&self.flat, v, self.n())
    }

    pub fn binder_kind(&self, b: usize) -> Result<Quantifier, FographError> {
        if !self.label(b).is_binder() {
            return Err(FographError::NotABinder(b));
        }
        Ok(match self.flat.parent(self.flat.leaf_node(b)).and_then(|p| self.flat.tag(p)) {
            Some(Tag::Join) => Quantifier::Existential,
            _ => Quantifier::Universal,
        })
    }

    pub fn binds(&self, b: usize, l: usize) -> bool {
        match self.label(b) {
            FoLabel::Binder(x) => self.label(l).literal_has_var(x) && self.scope(b).contains(l),
            _ => false,
        }
    }

    /// Arcs from each binder to the literals it binds.
    pub fn binding_graph(&self) -> crate::graphs::DGraph {
        let mut d = crate::graphs::DGraph::new(self.n());
        for b in self.binders() {
            for l in self.scope(b).ones() {
                if self.binds(b, l) {
                    d.add_arc(b, l).expect("in range");
                }
            }
        }
        d
    }

    /// Bound literals of each binder, indexed by binder vertex.
    pub fn bound_literals(&self, b: usize) -> Vec<usize> {
        self.scope(b).ones().filter(|&l| self.binds(b, l)).collect()
    }

    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.graph.labels().iter().for_each(|l| l.vars_into(&mut out));
        out
    }

    pub fn bound_vars(&self) -> BTreeSet<String> {
        self.graph
            .labels()
            .iter()
            .filter_map(|l| l.binder_var().map(str::to_string))
            .collect()
    }

    /// Variables with an occurrence in some literal but no binder.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let bound = self.bound_vars();
        let mut out = BTreeSet::new();
        for l in self.graph.labels() {
            if let FoLabel::Lit(a) = l {
                a.vars_into(&mut out);
            }
        }
        out.retain(|v| !bound.contains(v));
        out
    }

    pub fn is_rectified(&self) -> bool {
        self.binders().into_iter().all(|b| self.binder_is_rectified(b))
    }

    fn binder_is_rectified(&self, b: usize) -> bool {
        let x = self.label(b).binder_var().expect("binder");
        let scope = self.scope(b);
        (0..self.n()).all(|v| match self.label(v) {
            FoLabel::Binder(y) => v == b || y != x,
            l => !l.literal_has_var(x) || scope.contains(v),
        })
    }

    /// Renames unrectified binders apart, substituting in the literals each one binds.
    pub fn rectify(&self) -> Fograph {
        let mut g = self.clone();
        for b in self.binders() {
            if g.binder_is_rectified(b) {
                continue;
            }
            let x = g.label(b).binder_var().expect("binder").to_string();
            let fresh = fresh_name(&x, &g.all_vars());
            let bound = g.bound_literals(b);
            let t = Term::var(&fresh);
            for l in bound {
                if let FoLabel::Lit(a) = g.label(l) {
                    let a = a.subst(&x, &t);
                    g.graph.set_label(l, FoLabel::Lit(a));
                }
            }
            g.graph.set_label(b, FoLabel::Binder(fresh));
        }
        g
    }

    /// A clear formula whose graph is this fograph.
    pub fn formula(&self) -> Formula {
        self.formula_of_node(self.flat.root())
    }

    fn formula_of_node(&self, node: usize) -> Formula {
        let Some(tag) = self.flat.tag(node) else {
            let v = self.flat.leaves_under(node).minimum().expect("leaf");
            return match self.label(v) {
                FoLabel::Lit(a) => Formula::Atom(a.clone()),
                FoLabel::Const(true) => Formula::One,
                FoLabel::Const(false) => Formula::Zero,
                FoLabel::Binder(_) => Formula::One,
            };
        };
        let mut prefix = Vec::new();
        let mut parts = Vec::new();
        for &c in self.flat.children(node) {
            let leaf = self.flat.leaves_under(c).minimum().expect("non-empty");
            match (self.flat.tag(c), self.label(leaf)) {
                (None, FoLabel::Binder(x)) => prefix.push(x.clone()),
                _ => parts.push(self.formula_of_node(c)),
            }
        }
        prefix.sort();
        let body = parts
            .into_iter()
            .reduce(|a, b| match tag {
                Tag::Union => Formula::or(a, b),
                Tag::Join => Formula::and(a, b),
            })
            .expect("legal scope contains a literal");
        prefix.iter().rev().fold(body, |acc, x| match tag {
            Tag::Union => Formula::forall(x, acc),
            Tag::Join => Formula::exists(x, acc),
        })
    }

    /// Canonical string up to vertex renaming (colours ignored).
    pub fn fingerprint(&self) -> String {
        self.cotree.fingerprint(&|v| format!("{}", self.label(v)))
    }

    /// Subgraph induced on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Result<Fograph, FographError> {
        let (g, _) = self.graph.induced(keep)?;
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        Fograph::with_names(g, names)
    }

    pub fn with_colours(&self, colours: &[Option<u32>]) -> Fograph {
        let mut g = self.clone();
        for (v, c) in colours.iter().enumerate() {
            g.graph.set_colour(v, *c);
        }
        g
    }

    pub fn with_labels(&self, labels: Vec<FoLabel>) -> Result<Fograph, FographError> {
        let mut g = self.graph.clone();
        for (v, l) in labels.into_iter().enumerate() {
            g.set_label(v, l);
        }
        Fograph::with_names(g, self.names.clone())
    }
}

fn build(f: &Formula, path: &mut String, g: &mut UGraph<FoLabel>, names: &mut Vec<String>) -> Vec<usize> {
    let leaf = |label: FoLabel, g: &mut UGraph<FoLabel>, names: &mut Vec<String>, path: &str| {
        names.push(path.to_string());
        vec![g.add_vertex(label)]
    };
    match f {
        Formula::Atom(a) => leaf(FoLabel::Lit(a.clone()), g, names, path),
        Formula::One => leaf(FoLabel::Const(true), g, names, path),
        Formula::Zero => leaf(FoLabel::Const(false), g, names, path),
        Formula::And(a, b) | Formula::Or(a, b) => {
            path.push('0');
            let left = build(a, path, g, names);
            path.pop();
            path.push('1');
            let right = build(b, path, g, names);
            path.pop();
            if matches!(f, Formula::And(..)) {
                connect(g, &left, &right);
            }
            left.into_iter().chain(right).collect()
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            let b = leaf(FoLabel::Binder(x.clone()), g, names, path);
            path.push('0');
            let body = build(a, path, g, names);
            path.pop();
            if matches!(f, Formula::Exists(..)) {
                connect(g, &b, &body);
            }
            b.into_iter().chain(body).collect()
        }
    }
}

fn connect(g: &mut UGraph<FoLabel>, left: &[usize], right: &[usize]) {
    for &u in left {
        for &v in right {
            g.add_edge(u, v).expect("distinct vertices");
        }
    }
}

fn build_fograph(f: &Formula) -> Fograph {
    let mut g = UGraph::new();
    let mut names = Vec::new();
    build(f, &mut "r".to_string(), &mut g, &mut names);
    Fograph::with_names(g, names).expect("graph of a clear formula is a fograph")
}

/// Graph of a formula, rectifying it first if needed. Vertices are in preorder,
/// named by the path of their occurrence (`r`, `r0`, `r01`, ...).
pub fn graph_of(f: &Formula) -> Fograph {
    if f.is_rectified() {
        build_fograph(f)
    } else {
        build_fograph(&f.rectify())
    }
}

/// Graph of a clear formula without renaming.
pub fn xgraph_of(f: &Formula) -> Result<Fograph, FographError> {
    if !f.is_clear() {
        return Err(FographError::NotClear);
    }
    Ok(build_fograph(f))
}

pub fn formula_of_fograph(g: &Fograph) -> Formula {
    g.formula()
}

fn well_founded(g: &Fograph, s: &FixedBitSet) -> bool {
    let has_binder = s.ones().any(|v| g.label(v).is_binder());
    !has_binder || s.ones().any(|v| g.label(v).is_literal())
}

/// Well-founded on both sides, closed under adjacency and binding.
pub fn check_portion(g: &Fograph, p: &BTreeSet<usize>) -> Result<(), FographError> {
    let n = g.n();
    if let Some(&v) = p.iter().find(|&&v| v >= n) {
        return Err(FographError::InvalidPortion {
            fault: PortionFault::UnknownVertex,
            vertex: v,
        });
    }
    let mut s = FixedBitSet::with_capacity(n);
    p.iter().for_each(|&v| s.insert(v));
    let mut co = s.clone();
    co.toggle_range(..);
    let fault = |fault, vertex| FographError::InvalidPortion { fault, vertex };
    if !well_founded(g, &s) {
        return Err(fault(PortionFault::NotWellFounded, s.minimum().unwrap_or(0)));
    }
    if !well_founded(g, &co) {
        return Err(fault(PortionFault::ComplementNotWellFounded, co.minimum().unwrap_or(0)));
    }
    for (u, v) in g.graph().edges() {
        if s.contains(u) != s.contains(v) {
            return Err(fault(PortionFault::NotAdjacencyClosed, if s.contains(u) { u } else { v }));
        }
    }
    for (b, l) in g.binding_graph().arcs() {
        if s.contains(b) != s.contains(l) {
            return Err(fault(PortionFault::NotBindingClosed, b));
        }
    }
    Ok(())
}

/// Any variable occurring in both is free in both.
pub fn check_independent(g: &Fograph, h: &Fograph) -> Result<(), FographError> {
    let (gf, hf) = (g.free_vars(), h.free_vars());
    for v in g.all_vars().intersection(&h.all_vars()) {
        if !gf.contains(v) || !hf.contains(v) {
            return Err(FographError::NotIndependent(v.clone()));
        }
    }
    Ok(())
}

/// Union of `g` and `h` (vertices of `h` shifted by `g.n()`) plus all edges between `p` and `q`.
pub fn fusion(g: &Fograph, h: &Fograph, p: &BTreeSet<usize>, q: &BTreeSet<usize>) -> Result<Fograph, FographError> {
    check_independent(g, h)?;
    check_portion(g, p)?;
    check_portion(h, q)?;
    let shift = g.n();
    let mut u = g.graph().union(h.graph());
    for (v, c) in g.graph().colours().iter().chain(h.graph().colours()).enumerate() {
        u.set_colour(v, *c);
    }
    for &a in p {
        for &b in q {
            u.add_edge(a, b + shift)?;
        }
    }
    let names = g.names().iter().chain(h.names()).cloned().collect();
    Fograph::with_names(u, names)
}

/// Adds an isolated, uncoloured `x`-binder as the last vertex.
pub fn univ_quant(g: &Fograph, x: &str) -> Result<Fograph, FographError> {
    if g.bound_vars().contains(x) {
        return Err(FographError::VariablePresent(x.to_string()));
    }
    let mut u = g.graph().clone();
    u.add_vertex(FoLabel::Binder(x.to_string()));
    let mut names = g.names().to_vec();
    names.push(x.to_string());
    Fograph::with_names(u, names)
}

/// Substitutes `x` at the occurrences `occs` (all of one term) and adds an
/// `x`-binder, as the last vertex, joined to every vertex of the portion `p`.
pub fn exist_quant(g: &Fograph, x: &str, occs: &[Occurrence], p: &BTreeSet<usize>) -> Result<Fograph, FographError> {
    if g.all_vars().contains(x) {
        return Err(FographError::VariablePresent(x.to_string()));
    }
    if p.is_empty() {
        return Err(FographError::EmptyPortion);
    }
    check_portion(g, p)?;
    let mut term: Option<Term> = None;
    for o in occs {
        if !p.contains(&o.vertex) {
            return Err(FographError::OccurrenceOutsidePortion(o.vertex));
        }
        let t = g
            .label(o.vertex)
            .atom()
            .and_then(|a| a.at(&o.path))
            .ok_or(FographError::BadOccurrence(o.vertex))?;
        match &term {
            None => term = Some(t.clone()),
            Some(s) if s != t => return Err(FographError::TermMismatch(o.vertex)),
            _ => {}
        }
    }
    if let Some(t) = &term {
        let bound = g.bound_vars();
        if let Some(v) = t.vars().into_iter().find(|v| bound.contains(v)) {
            return Err(FographError::TermContainsBoundVar(v));
        }
    }
    let mut u = g.graph().clone();
    let xt = Term::var(x);
    let mut by_vertex: HashMap<usize, Vec<&Occurrence>> = HashMap::new();
    occs.iter().for_each(|o| by_vertex.entry(o.vertex).or_default().push(o));
    for (v, os) in by_vertex {
        let mut a = u.label(v).atom().expect("checked literal").clone();
        let mut paths: Vec<&Vec<usize>> = os.iter().map(|o| &o.path).collect();
        // deeper paths first so prefixes stay addressable
        paths.sort_by_key(|p| std::cmp::Reverse(p.len()));
        for path in paths {
            a = a.replace_at(path, &xt).ok_or(FographError::BadOccurrence(v))?;
        }
        u.set_label(v, FoLabel::Lit(a));
    }
    let b = u.add_vertex(FoLabel::Binder(x.to_string()));
    for &v in p {
        u.add_edge(b, v)?;
    }
    let mut names = g.names().to_vec();
    names.push(x.to_string());
    Fograph::with_names(u, names)
}
