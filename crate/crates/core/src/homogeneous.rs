//! Label-free proofs: dualizing graphs and nets for propositions, mographs and
//! monets for closed monadic and modal formulas, the conversions to and from
//! labelled proofs, and labelings that realise every label-free graph.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::bifib::{check_shape, is_fibration_directed, is_skew_fibration, verify_cp, CheckReport, CombProof, Condition, VertexMap};
use crate::fograph::{graph_of, FoLabel, Fograph, FographError};
use crate::fonet::{find_bimatching, verify_fonet, Rejection, BIMATCHING_CAP};
use crate::graphs::{cotree_of, is_cograph, DGraph, FlatCotree, GraphError, Tag, UGraph};
use crate::syntax::{Atom, Formula, ModalFormula, PredSym, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogeneousError {
    #[error("not a simple proposition: {0}")]
    NotSimpleProposition(String),
    #[error("vertex {0} is not a nullary literal")]
    NotPropositional(usize),
    #[error("not closed monadic: {0}")]
    NotClosedMonadic(String),
    #[error("modal formula has an unbound predicate occurrence")]
    NotClosed,
    #[error("modal formula contains a constant")]
    NotSimple,
    #[error("literal {0} is not in exactly one duality")]
    NotLinked(usize),
    #[error("ill-formed: {0}")]
    Malformed(String),
    #[error("target is not the graph of the formula")]
    TargetMismatch,
    #[error("does not verify: {0}")]
    NotVerified(CheckReport),
    #[error("lifted source: {0}")]
    Source(#[from] FographError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A cograph together with a second edge set, the dualities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualizingGraph {
    edges: UGraph<()>,
    dualities: UGraph<()>,
}

fn unit_graph(n: usize, edges: &[(usize, usize)]) -> Result<UGraph<()>, GraphError> {
    let mut g = UGraph::new();
    for _ in 0..n {
        g.add_vertex(());
    }
    for &(u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

fn has_triangle(g: &UGraph<()>) -> Option<[usize; 3]> {
    for (u, v) in g.edges() {
        let mut common = g.row(u).clone();
        common.intersect_with(g.row(v));
        if let Some(w) = common.minimum() {
            return Some([u, v, w]);
        }
    }
    None
}

impl DualizingGraph {
    pub fn new(edges: UGraph<()>, dualities: UGraph<()>) -> Result<DualizingGraph, HomogeneousError> {
        if edges.n() == 0 {
            return Err(HomogeneousError::Malformed("empty graph".into()));
        }
        if edges.n() != dualities.n() {
            return Err(HomogeneousError::Malformed("edge and duality graphs differ in size".into()));
        }
        if !is_cograph(&edges) {
            return Err(HomogeneousError::Malformed("edges do not form a cograph".into()));
        }
        if !is_cograph(&dualities) {
            return Err(HomogeneousError::Malformed("dualities do not form a cograph".into()));
        }
        if let Some(t) = has_triangle(&dualities) {
            return Err(HomogeneousError::Malformed(format!("duality triangle {t:?}")));
        }
        Ok(DualizingGraph { edges, dualities })
    }

    pub fn from_lists(n: usize, edges: &[(usize, usize)], dualities: &[(usize, usize)]) -> Result<DualizingGraph, HomogeneousError> {
        DualizingGraph::new(unit_graph(n, edges)?, unit_graph(n, dualities)?)
    }

    pub fn n(&self) -> usize {
        self.edges.n()
    }

    pub fn edges(&self) -> &UGraph<()> {
        &self.edges
    }

    pub fn dualities(&self) -> &UGraph<()> {
        &self.dualities
    }
}

/// A dualizing graph with bindings from binders to the literals they bind.
#[derive(Clone, Debug)]
pub struct Mograph {
    base: DualizingGraph,
    bindings: DGraph,
    flat: FlatCotree,
}

impl PartialEq for Mograph {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.bindings == other.bindings
    }
}

impl Mograph {
    pub fn new(base: DualizingGraph, bindings: DGraph) -> Result<Mograph, HomogeneousError> {
        let n = base.n();
        if bindings.n() != n {
            return Err(HomogeneousError::Malformed("binding graph has the wrong size".into()));
        }
        let mut binder_of = vec![None; n];
        for (b, l) in bindings.arcs() {
            if b == l {
                return Err(HomogeneousError::Malformed(format!("vertex {b} binds itself")));
            }
            if binder_of[l].replace(b).is_some() {
                return Err(HomogeneousError::Malformed(format!("literal {l} has two binders")));
            }
        }
        for (b, _) in bindings.arcs() {
            if binder_of[b].is_some() {
                return Err(HomogeneousError::Malformed(format!("literal {b} binds a vertex")));
            }
        }
        let flat = FlatCotree::new(&cotree_of(&base.edges)?, n);
        let m = Mograph { base, bindings, flat };
        for b in m.binders() {
            if m.base.dualities.degree(b) > 0 {
                return Err(HomogeneousError::Malformed(format!("binder {b} is in a duality")));
            }
            let scope = m.scope(b);
            if !scope.ones().any(|v| m.is_literal(v)) {
                return Err(HomogeneousError::Malformed(format!("scope of binder {b} has no literal")));
            }
            if let Some(l) = m.bindings.successors(b).find(|&l| !scope.contains(l)) {
                return Err(HomogeneousError::Malformed(format!("binder {b} binds {l} outside its scope")));
            }
        }
        Ok(m)
    }

    pub fn from_lists(
        n: usize,
        edges: &[(usize, usize)],
        dualities: &[(usize, usize)],
        bindings: &[(usize, usize)],
    ) -> Result<Mograph, HomogeneousError> {
        let base = DualizingGraph::from_lists(n, edges, dualities)?;
        let mut d = DGraph::new(n);
        for &(b, l) in bindings {
            d.add_arc(b, l)?;
        }
        Mograph::new(base, d)
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn base(&self) -> &DualizingGraph {
        &self.base
    }

    pub fn edges(&self) -> &UGraph<()> {
        &self.base.edges
    }

    pub fn dualities(&self) -> &UGraph<()> {
        &self.base.dualities
    }

    pub fn bindings(&self) -> &DGraph {
        &self.bindings
    }

    pub fn is_literal(&self, v: usize) -> bool {
        self.bindings.predecessors(v).next().is_some()
    }

    pub fn literals(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_literal(v)).collect()
    }

    pub fn binders(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.is_literal(v)).collect()
    }

    pub fn binder_of(&self, l: usize) -> Option<usize> {
        self.bindings.predecessors(l).next()
    }

    /// Leaves under the cotree parent of `v`.
    pub fn scope(&self, v: usize) -> FixedBitSet {
        match self.flat.parent(self.flat.leaf_node(v)) {
            Some(p) => self.flat.leaves_under(p).clone(),
            None => {
                let mut s = FixedBitSet::with_capacity(self.n());
                s.insert(v);
                s
            }
        }
    }

    pub fn is_existential(&self, b: usize) -> bool {
        !self.is_literal(b) && self.flat.parent(self.flat.leaf_node(b)).and_then(|p| self.flat.tag(p)) == Some(Tag::Join)
    }

    pub fn is_universal(&self, b: usize) -> bool {
        !self.is_literal(b) && !self.is_existential(b)
    }

    pub fn is_vacuous(&self, b: usize) -> bool {
        !self.is_literal(b) && self.bindings.successors(b).next().is_none()
    }

    /// Restriction to `keep` (sorted), renumbered in order.
    fn induced(&self, keep: &[usize]) -> Result<Mograph, HomogeneousError> {
        let (edges, _) = self.base.edges.induced(keep)?;
        let (dualities, _) = self.base.dualities.induced(keep)?;
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut bindings = DGraph::new(keep.len());
        for (b, l) in self.bindings.arcs() {
            if let (Some(&i), Some(&j)) = (index.get(&b), index.get(&l)) {
                bindings.add_arc(i, j)?;
            }
        }
        Mograph::new(DualizingGraph::new(edges, dualities)?, bindings)
    }
}

/// A map from a label-free net to a label-free graph of the same kind.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousCp<G> {
    pub source: G,
    pub target: G,
    pub map: VertexMap,
}

#[derive(Default)]
struct Builder {
    edges: UGraph<()>,
    preds: Vec<Option<PredSym>>,
    bindings: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, pred: Option<PredSym>) -> usize {
        self.preds.push(pred);
        self.edges.add_vertex(())
    }

    fn connect(&mut self, left: &[usize], right: &[usize]) {
        for &u in left {
            for &v in right {
                self.edges.add_edge(u, v).expect("fresh vertices");
            }
        }
    }

    fn dualities(&self) -> UGraph<()> {
        let mut d = self.edges.map_labels(|_, _| ());
        for (u, v) in self.edges.edges() {
            d.remove_edge(u, v);
        }
        for u in 0..self.preds.len() {
            for v in u + 1..self.preds.len() {
                if let (Some(p), Some(q)) = (&self.preds[u], &self.preds[v]) {
                    if p.is_dual_of(q) {
                        d.add_edge(u, v).expect("in range");
                    }
                }
            }
        }
        d
    }

    fn mograph(self) -> Result<Mograph, HomogeneousError> {
        let dualities = self.dualities();
        let mut d = DGraph::new(self.edges.n());
        for &(b, l) in &self.bindings {
            d.add_arc(b, l)?;
        }
        Mograph::new(DualizingGraph::new(self.edges, dualities)?, d)
    }
}

fn prop_walk(f: &Formula, b: &mut Builder) -> Result<Vec<usize>, HomogeneousError> {
    match f {
        Formula::Atom(a) if a.args.is_empty() => Ok(vec![b.vertex(Some(a.pred.clone()))]),
        Formula::And(x, y) | Formula::Or(x, y) => {
            let left = prop_walk(x, b)?;
            let right = prop_walk(y, b)?;
            if matches!(f, Formula::And(..)) {
                b.connect(&left, &right);
            }
            Ok(left.into_iter().chain(right).collect())
        }
        other => Err(HomogeneousError::NotSimpleProposition(other.to_string())),
    }
}

/// Atom occurrences as vertices, joined when their least common subformula is a conjunction.
pub fn dgraph_of_prop(p: &Formula) -> Result<DualizingGraph, HomogeneousError> {
    let mut b = Builder::default();
    prop_walk(p, &mut b)?;
    let dualities = b.dualities();
    DualizingGraph::new(b.edges, dualities)
}

pub fn dgraph_of_fograph(g: &Fograph) -> Result<DualizingGraph, HomogeneousError> {
    let mut b = Builder::default();
    for v in 0..g.n() {
        match g.label(v) {
            FoLabel::Lit(a) if a.args.is_empty() => b.vertex(Some(a.pred.clone())),
            _ => return Err(HomogeneousError::NotPropositional(v)),
        };
    }
    for (u, v) in g.graph().edges() {
        b.edges.add_edge(u, v)?;
    }
    let dualities = b.dualities();
    DualizingGraph::new(b.edges, dualities)
}

fn monadic_walk(f: &Formula, env: &mut Vec<(String, usize)>, b: &mut Builder) -> Result<Vec<usize>, HomogeneousError> {
    match f {
        Formula::Atom(a) => {
            let [Term::Var(x)] = &a.args[..] else {
                return Err(HomogeneousError::NotClosedMonadic(format!("`{a}` is not a predicate applied to a variable")));
            };
            let Some(&(_, q)) = env.iter().rev().find(|(y, _)| y == x) else {
                return Err(HomogeneousError::NotClosedMonadic(format!("`{x}` is free in `{a}`")));
            };
            let v = b.vertex(Some(a.pred.clone()));
            b.bindings.push((q, v));
            Ok(vec![v])
        }
        Formula::One | Formula::Zero => Err(HomogeneousError::NotClosedMonadic("logical constant".into())),
        Formula::And(x, y) | Formula::Or(x, y) => {
            let left = monadic_walk(x, env, b)?;
            let right = monadic_walk(y, env, b)?;
            if matches!(f, Formula::And(..)) {
                b.connect(&left, &right);
            }
            Ok(left.into_iter().chain(right).collect())
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let q = b.vertex(None);
            env.push((x.clone(), q));
            let inner = monadic_walk(body, env, b)?;
            env.pop();
            if matches!(f, Formula::Exists(..)) {
                b.connect(&[q], &inner);
            }
            Ok(std::iter::once(q).chain(inner).collect())
        }
    }
}

/// Atom and quantifier occurrences as vertices, in preorder. Bound variable names are irrelevant.
pub fn mograph_of_formula(f: &Formula) -> Result<Mograph, HomogeneousError> {
    let mut b = Builder::default();
    monadic_walk(f, &mut Vec::new(), &mut b)?;
    b.mograph()
}

pub fn mograph_of_fograph(g: &Fograph) -> Result<Mograph, HomogeneousError> {
    let mut b = Builder::default();
    let arcs = g.binding_graph();
    for v in 0..g.n() {
        match g.label(v) {
            FoLabel::Binder(_) => {
                b.vertex(None);
            }
            FoLabel::Lit(a) => {
                if !matches!(&a.args[..], [Term::Var(_)]) {
                    return Err(HomogeneousError::NotClosedMonadic(format!("`{a}` is not a predicate applied to a variable")));
                }
                if arcs.predecessors(v).next().is_none() {
                    return Err(HomogeneousError::NotClosedMonadic(format!("`{a}` is not bound")));
                }
                b.vertex(Some(a.pred.clone()));
            }
            FoLabel::Const(_) => return Err(HomogeneousError::NotClosedMonadic("logical constant".into())),
        }
    }
    for (u, v) in g.graph().edges() {
        b.edges.add_edge(u, v)?;
    }
    b.bindings = arcs.arcs().collect();
    b.mograph()
}

/// The mograph of a fograph whose colour classes become its dualities.
pub fn linked_mograph(g: &Fograph) -> Result<Mograph, HomogeneousError> {
    let m = mograph_of_fograph(&g.with_colours(&vec![None; g.n()]))?;
    let mut dualities = m.edges().map_labels(|_, _| ());
    for (u, v) in m.edges().edges() {
        dualities.remove_edge(u, v);
    }
    for (_, class) in g.graph().colour_classes() {
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                dualities.add_edge(u, v)?;
            }
        }
    }
    Mograph::new(DualizingGraph::new(m.edges().clone(), dualities)?, m.bindings().clone())
}

fn modal_walk(f: &ModalFormula, env: &mut Vec<usize>, b: &mut Builder) -> Result<Vec<usize>, HomogeneousError> {
    match f {
        ModalFormula::Prop(p) => {
            let &q = env.last().ok_or(HomogeneousError::NotClosed)?;
            let v = b.vertex(Some(p.clone()));
            b.bindings.push((q, v));
            Ok(vec![v])
        }
        ModalFormula::One | ModalFormula::Zero => Err(HomogeneousError::NotSimple),
        ModalFormula::And(x, y) | ModalFormula::Or(x, y) => {
            let left = modal_walk(x, env, b)?;
            let right = modal_walk(y, env, b)?;
            if matches!(f, ModalFormula::And(..)) {
                b.connect(&left, &right);
            }
            Ok(left.into_iter().chain(right).collect())
        }
        ModalFormula::Box(body) | ModalFormula::Diamond(body) => {
            let q = b.vertex(None);
            env.push(q);
            let inner = modal_walk(body, env, b)?;
            env.pop();
            if matches!(f, ModalFormula::Diamond(..)) {
                b.connect(&[q], &inner);
            }
            Ok(std::iter::once(q).chain(inner).collect())
        }
    }
}

/// Predicate and operator occurrences as vertices; each operator binds the
/// predicate occurrences it is the innermost operator of.
pub fn modal_mograph(m: &ModalFormula) -> Result<Mograph, HomogeneousError> {
    if !m.is_simple() {
        return Err(HomogeneousError::NotSimple);
    }
    let mut b = Builder::default();
    modal_walk(m, &mut Vec::new(), &mut b)?;
    b.mograph()
}

/// Bipartition classes of each duality component, numbered from 1 by least vertex.
/// Vertices outside `of` are left out.
fn duality_sides(d: &UGraph<()>, of: &[usize]) -> Vec<Option<(usize, bool)>> {
    let mut within = FixedBitSet::with_capacity(d.n());
    for &v in of {
        within.insert(v);
    }
    let mut out = vec![None; d.n()];
    for (i, comp) in d.components(&within).into_iter().enumerate() {
        let mut stack = vec![comp[0]];
        out[comp[0]] = Some((i + 1, false));
        while let Some(u) = stack.pop() {
            let side = out[u].expect("visited").1;
            for w in d.neighbours(u) {
                if out[w].is_none() {
                    out[w] = Some((i + 1, !side));
                    stack.push(w);
                }
            }
        }
    }
    out
}

fn fresh_pred(k: usize, dual: bool) -> PredSym {
    let p = PredSym::new(&format!("q{k}"));
    if dual {
        p.dual()
    } else {
        p
    }
}

/// A simple propositional fograph whose dualizing graph is `d`.
pub fn label_dualizing_graph(d: &DualizingGraph) -> Fograph {
    let all: Vec<usize> = (0..d.n()).collect();
    let sides = duality_sides(&d.dualities, &all);
    let g = d.edges.map_labels(|v, _| {
        let (k, dual) = sides[v].expect("every vertex is numbered");
        FoLabel::Lit(Atom::new(fresh_pred(k, dual), vec![]))
    });
    Fograph::new(g).expect("a cograph of literals is a fograph")
}

/// A rectified closed monadic fograph whose mograph is `m`.
pub fn label_mograph(m: &Mograph) -> Fograph {
    let binders = m.binders();
    let var: BTreeMap<usize, String> = binders.iter().enumerate().map(|(i, &b)| (b, format!("v{}", i + 1))).collect();
    let sides = duality_sides(m.dualities(), &m.literals());
    let g = m.edges().map_labels(|v, _| match sides[v] {
        Some((k, dual)) => {
            let b = m.binder_of(v).expect("literal has a binder");
            FoLabel::Lit(Atom::new(fresh_pred(k, dual), vec![Term::var(&var[&b])]))
        }
        None => FoLabel::Binder(var[&v].clone()),
    });
    Fograph::new(g).expect("labelled mograph is a fograph")
}

fn matching_colours(d: &UGraph<()>) -> Vec<Option<u32>> {
    let mut colours = vec![None; d.n()];
    for (i, (u, v)) in d.edges().into_iter().enumerate() {
        colours[u] = Some(i as u32);
        colours[v] = Some(i as u32);
    }
    colours
}

fn bimatching_check(r: &mut CheckReport, edges: &UGraph<()>, leaps: &UGraph<()>, labelled: impl FnOnce() -> Fograph) {
    match find_bimatching(edges, leaps, BIMATCHING_CAP) {
        Ok(Some(w)) => r.fail(Condition::Bimatching, w, "induced bimatching"),
        Ok(None) => {}
        Err(_) => match verify_fonet(&labelled()) {
            Ok(_) => {}
            Err(Rejection::Bimatching(w)) => r.fail(Condition::Bimatching, w.unwrap_or_default(), "induced bimatching"),
            Err(e) => r.fail(Condition::Bimatching, vec![], e.to_string()),
        },
    }
}

/// Dualities form a perfect matching and no vertex set induces a matching in both edge sets.
pub fn verify_dualizing_net(d: &DualizingGraph) -> CheckReport {
    let mut r = CheckReport::default();
    for v in 0..d.n() {
        if d.dualities.degree(v) != 1 {
            r.fail(Condition::Matching, vec![v], format!("vertex is in {} dualities", d.dualities.degree(v)));
        }
    }
    if !r.accepted() {
        return r;
    }
    bimatching_check(&mut r, &d.edges, &d.dualities, || {
        label_dualizing_graph(d).with_colours(&matching_colours(&d.dualities))
    });
    r
}

fn duality_homomorphism(f: &[usize], g: &UGraph<()>, h: &UGraph<()>) -> CheckReport {
    let mut r = CheckReport::default();
    for (u, v) in g.edges() {
        if !h.has_edge(f[u], f[v]) {
            r.fail(Condition::DualityHomomorphism, vec![u, v], format!("image {}-{} is not a duality", f[u], f[v]));
        }
    }
    r
}

pub fn verify_homogeneous_cp_prop(h: &HomogeneousCp<DualizingGraph>) -> CheckReport {
    let mut r = check_shape(&h.map, h.source.n(), h.target.n());
    if !r.accepted() {
        return r;
    }
    r.merge(verify_dualizing_net(&h.source));
    r.merge(is_skew_fibration(&h.map, &h.source.edges, &h.target.edges));
    r.merge(duality_homomorphism(&h.map, &h.source.dualities, &h.target.dualities));
    r
}

/// Union-find representative of each binder's class; literals map to themselves.
fn binder_classes(m: &Mograph) -> Result<Vec<usize>, HomogeneousError> {
    if let Some(l) = m.literals().into_iter().find(|&l| m.dualities().degree(l) != 1) {
        return Err(HomogeneousError::NotLinked(l));
    }
    let mut rep: Vec<usize> = (0..m.n()).collect();
    fn find(rep: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while rep[r] != r {
            r = rep[r];
        }
        let mut v = v;
        while rep[v] != r {
            let next = rep[v];
            rep[v] = r;
            v = next;
        }
        r
    }
    for (l1, l2) in m.dualities().edges() {
        let (b1, b2) = (m.binder_of(l1).expect("bound"), m.binder_of(l2).expect("bound"));
        let (r1, r2) = (find(&mut rep, b1), find(&mut rep, b2));
        rep[r1.max(r2)] = r1.min(r2);
    }
    Ok((0..m.n()).map(|v| find(&mut rep, v)).collect())
}

/// Classes of binders linked by chains of bindings through dualities.
pub fn binder_equivalence(m: &Mograph) -> Result<Vec<Vec<usize>>, HomogeneousError> {
    let rep = binder_classes(m)?;
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for b in m.binders() {
        classes.entry(rep[b]).or_default().push(b);
    }
    Ok(classes.into_values().collect())
}

/// Dualities plus the equivalent existential/universal binder pairs.
pub fn leap_graph(m: &Mograph) -> Result<UGraph<()>, HomogeneousError> {
    let rep = binder_classes(m)?;
    let mut leaps = m.dualities().clone();
    for e in m.binders().into_iter().filter(|&b| m.is_existential(b)) {
        for u in m.binders().into_iter().filter(|&b| m.is_universal(b)) {
            if rep[e] == rep[u] {
                leaps.add_edge(e, u)?;
            }
        }
    }
    Ok(leaps)
}

/// Linked, free of conflicts between universal binders, and without an induced bimatching.
pub fn verify_monet(m: &Mograph) -> CheckReport {
    let mut r = CheckReport::default();
    for l in m.literals() {
        if m.dualities().degree(l) != 1 {
            r.fail(Condition::Linked, vec![l], format!("literal is in {} dualities", m.dualities().degree(l)));
        }
    }
    if !r.accepted() {
        return r;
    }
    let rep = binder_classes(m).expect("linked");
    let universals: Vec<usize> = m.binders().into_iter().filter(|&b| m.is_universal(b)).collect();
    for (i, &b) in universals.iter().enumerate() {
        if let Some(&c) = universals[i + 1..].iter().find(|&&c| rep[c] == rep[b]) {
            r.fail(Condition::Consistency, vec![b, c], "equivalent universal binders");
        }
    }
    if !r.accepted() {
        return r;
    }
    let leaps = leap_graph(m).expect("linked");
    bimatching_check(&mut r, m.edges(), &leaps, || label_mograph(m).with_colours(&matching_colours(m.dualities())));
    r
}

pub fn verify_homogeneous_cp_monadic(h: &HomogeneousCp<Mograph>) -> CheckReport {
    let mut r = check_shape(&h.map, h.source.n(), h.target.n());
    if !r.accepted() {
        return r;
    }
    let (src, tgt, f) = (&h.source, &h.target, &h.map);
    r.merge(verify_monet(src));
    for b in src.binders() {
        if src.is_existential(b) && !tgt.is_existential(f[b]) {
            r.fail(Condition::ExistentialPreservation, vec![b, f[b]], "existential binder maps to a non-existential vertex");
        }
    }
    r.merge(is_skew_fibration(f, src.edges(), tgt.edges()));
    r.merge(duality_homomorphism(f, src.dualities(), tgt.dualities()));
    r.merge(is_fibration_directed(f, src.bindings(), tgt.bindings()));
    r
}

/// Merges vacuous universal source binders sharing an image and a neighbourhood.
pub fn collapse(h: &HomogeneousCp<Mograph>) -> Result<HomogeneousCp<Mograph>, HomogeneousError> {
    let report = verify_homogeneous_cp_monadic(h);
    if !report.accepted() {
        return Err(HomogeneousError::NotVerified(report));
    }
    let src = &h.source;
    let mut seen: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut keep = Vec::new();
    for v in 0..src.n() {
        if src.is_vacuous(v) && src.is_universal(v) {
            let key = (h.map[v], src.edges().neighbours(v).collect());
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, v);
        }
        keep.push(v);
    }
    if keep.len() == src.n() {
        return Ok(h.clone());
    }
    Ok(HomogeneousCp {
        source: src.induced(&keep)?,
        target: h.target.clone(),
        map: keep.iter().map(|&v| h.map[v]).collect(),
    })
}

fn colour_pairs(g: &Fograph) -> UGraph<()> {
    let mut d = g.graph().map_labels(|_, _| ());
    for (u, v) in g.graph().edges() {
        d.remove_edge(u, v);
    }
    for (_, class) in g.graph().colour_classes() {
        if let [a, b] = class[..] {
            d.add_edge(a, b).expect("in range");
        }
    }
    d.map_labels(|_, _| ())
}

fn checked(cp: &CombProof) -> Result<(), HomogeneousError> {
    let r = verify_cp(cp);
    if r.accepted() {
        Ok(())
    } else {
        Err(HomogeneousError::NotVerified(r))
    }
}

fn lift_labels(edges: &UGraph<()>, dualities: &UGraph<()>, target: &Fograph, map: &[usize]) -> Result<Fograph, HomogeneousError> {
    let mut g = edges.map_labels(|v, _| target.label(map[v]).clone());
    for (v, c) in matching_colours(dualities).into_iter().enumerate() {
        g.set_colour(v, c);
    }
    Ok(Fograph::new(g)?)
}

/// Forgets labels: each link becomes a duality.
pub fn to_homogeneous_prop(cp: &CombProof) -> Result<HomogeneousCp<DualizingGraph>, HomogeneousError> {
    checked(cp)?;
    let target = dgraph_of_fograph(&cp.target)?;
    if let Some(v) = (0..cp.source.n()).find(|&v| !matches!(cp.source.label(v), FoLabel::Lit(a) if a.args.is_empty())) {
        return Err(HomogeneousError::NotPropositional(v));
    }
    let edges = cp.source.graph().map_labels(|_, _| ());
    let source = DualizingGraph::new(edges, colour_pairs(&cp.source))?;
    Ok(HomogeneousCp { source, target, map: cp.map.clone() })
}

/// Lifts labels through the map from the graph of `p`.
pub fn from_homogeneous_prop(h: &HomogeneousCp<DualizingGraph>, p: &Formula) -> Result<CombProof, HomogeneousError> {
    if dgraph_of_prop(p)? != h.target {
        return Err(HomogeneousError::TargetMismatch);
    }
    let report = verify_homogeneous_cp_prop(h);
    if !report.accepted() {
        return Err(HomogeneousError::NotVerified(report));
    }
    let target = graph_of(p);
    let source = lift_labels(&h.source.edges, &h.source.dualities, &target, &h.map)?;
    Ok(CombProof::of_formula(p.clone(), source, h.map.clone()))
}

pub fn to_homogeneous_monadic(cp: &CombProof) -> Result<HomogeneousCp<Mograph>, HomogeneousError> {
    checked(cp)?;
    Ok(HomogeneousCp {
        source: linked_mograph(&cp.source)?,
        target: mograph_of_fograph(&cp.target)?,
        map: cp.map.clone(),
    })
}

/// Collapses, then lifts labels through the map from the graph of `f`.
pub fn from_homogeneous_monadic(h: &HomogeneousCp<Mograph>, f: &Formula) -> Result<CombProof, HomogeneousError> {
    if mograph_of_formula(f)? != h.target {
        return Err(HomogeneousError::TargetMismatch);
    }
    let c = collapse(h)?;
    let target = graph_of(f);
    let source = lift_labels(c.source.edges(), c.source.dualities(), &target, &c.map)?;
    Ok(CombProof::of_formula(f.clone(), source, c.map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{cp_of_rproof, fixtures};
    use crate::syntax::{parse_formula, parse_modal};

    fn fo(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn net_examples() {
        let (a, b, c, d) = (0, 1, 2, 3);
        let good = DualizingGraph::from_lists(4, &[(a, b)], &[(a, c), (b, d)]).unwrap();
        assert!(verify_dualizing_net(&good).accepted());
        let crossed = DualizingGraph::from_lists(4, &[(a, b), (c, d)], &[(a, c), (b, d)]).unwrap();
        let r = verify_dualizing_net(&crossed);
        assert_eq!(r.conditions(), vec![Condition::Bimatching]);
        assert_eq!(r.failures[0].witness, vec![0, 1, 2, 3]);
        let shared = DualizingGraph::from_lists(4, &[(a, b)], &[(a, d), (b, d)]).unwrap();
        assert_eq!(verify_dualizing_net(&shared).conditions(), vec![Condition::Matching]);
    }

    #[test]
    fn duality_triangles_are_rejected() {
        assert!(DualizingGraph::from_lists(3, &[], &[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(DualizingGraph::from_lists(4, &[(0, 1), (1, 2), (2, 3)], &[]).is_err());
    }

    #[test]
    fn prop_graphs() {
        let d = dgraph_of_prop(&fo("p")).unwrap();
        assert_eq!((d.n(), d.edges().edge_count(), d.dualities().edge_count()), (1, 0, 0));
        let d = dgraph_of_prop(&fo("(p & ~q) \\/ (~p & q)")).unwrap();
        assert_eq!(d.edges().edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(d.dualities().edges(), vec![(0, 2), (1, 3)]);
        assert_eq!(d, dgraph_of_fograph(&graph_of(&fo("(p & ~q) \\/ (~p & q)"))).unwrap());
        assert!(dgraph_of_prop(&fo("p \\/ 1")).is_err());
        assert!(dgraph_of_prop(&fo("p(x)")).is_err());
    }

    #[test]
    fn peirce_round_trip() {
        let cp = cp_of_rproof(&fixtures::peirce()).unwrap();
        let h = to_homogeneous_prop(&cp).unwrap();
        assert!(verify_homogeneous_cp_prop(&h).accepted());
        assert!(verify_dualizing_net(&h.source).accepted());
        let back = from_homogeneous_prop(&h, cp.formula.as_ref().unwrap()).unwrap();
        assert!(verify_cp(&back).accepted());
        assert_eq!(to_homogeneous_prop(&back).unwrap(), h);
    }

    #[test]
    fn excluded_middle_net() {
        let cp = cp_of_rproof(&fixtures::excluded_middle()).unwrap();
        let h = to_homogeneous_prop(&cp).unwrap();
        assert_eq!(h.source.n(), 2);
        assert_eq!(h.source.dualities().edges(), vec![(0, 1)]);
    }

    #[test]
    fn variable_names_are_forgotten() {
        let a = mograph_of_formula(&fo("(all x. p(x)) \\/ all y. q(y)")).unwrap();
        let b = mograph_of_formula(&fo("(all x. p(x)) \\/ all x. q(x)")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.bindings().arcs().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        let c = mograph_of_formula(&fo("all x. ex x. p(x)")).unwrap();
        assert_eq!(c, mograph_of_formula(&fo("all x. ex y. p(y)")).unwrap());
        assert_eq!(c.edges().edges(), vec![(1, 2)]);
        assert_eq!(c.bindings().arcs().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn mograph_shape() {
        let f = fo("(ex x. p(x) & ~p(x)) \\/ all y. ~p(y)");
        let m = mograph_of_formula(&f).unwrap();
        assert_eq!(m.dualities().edge_count(), 2);
        assert_eq!(m.bindings().arc_count(), 3);
        assert_eq!(m.binders(), vec![0, 3]);
        assert!(m.is_existential(0) && m.is_universal(3));
        assert_eq!(m, mograph_of_fograph(&graph_of(&f)).unwrap());
        assert_eq!(mograph_of_fograph(&label_mograph(&m)).unwrap(), m);
        assert!(mograph_of_formula(&fo("ex x. p(y)")).is_err());
        assert!(mograph_of_formula(&fo("ex x. q(x, x)")).is_err());
    }

    #[test]
    fn modal_box() {
        let m = modal_mograph(&parse_modal("[]p").unwrap()).unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.edges().edge_count(), 0);
        assert_eq!(m.bindings().arc_count(), 1);
        assert_eq!(modal_mograph(&parse_modal("p").unwrap()), Err(HomogeneousError::NotClosed));
        assert_eq!(modal_mograph(&parse_modal("<>(p \\/ 1)").unwrap()), Err(HomogeneousError::NotSimple));
    }

    #[test]
    fn modal_drinker_mograph() {
        let m = parse_modal("<>(~p \\/ []p)").unwrap();
        let g = modal_mograph(&m).unwrap();
        assert_eq!(g, mograph_of_formula(&crate::calculus::check_rproof(&fixtures::drinker()).unwrap().0[0]).unwrap());
        assert_eq!(g.edges().edges(), vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(g.dualities().edges(), vec![(1, 3)]);
        assert_eq!(g.bindings().arcs().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn drinker_homogeneous() {
        let cp = cp_of_rproof(&fixtures::drinker()).unwrap();
        let h = to_homogeneous_monadic(&cp).unwrap();
        assert!(verify_homogeneous_cp_monadic(&h).accepted());
        assert_eq!(collapse(&h).unwrap(), h);
        let back = from_homogeneous_monadic(&h, cp.formula.as_ref().unwrap()).unwrap();
        assert!(verify_cp(&back).accepted());
        assert_eq!(back.map, cp.map);
    }

    #[test]
    fn conflict_between_universals() {
        // two universal binders whose literals are dual
        let m = Mograph::from_lists(4, &[], &[(1, 3)], &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(binder_equivalence(&m).unwrap(), vec![vec![0, 2]]);
        assert_eq!(verify_monet(&m).conditions(), vec![Condition::Consistency]);
        let m = Mograph::from_lists(4, &[(0, 1)], &[(1, 3)], &[(0, 1), (2, 3)]).unwrap();
        assert!(verify_monet(&m).accepted());
        assert!(leap_graph(&m).unwrap().has_edge(0, 2));
    }

    fn vacuous_pair() -> (Formula, HomogeneousCp<Mograph>) {
        let f = fo("all x. ex y. (~p(y) \\/ p(y))");
        let target = mograph_of_formula(&f).unwrap();
        // two isolated universal binders over x, then y joined to the linked pair
        let source = Mograph::from_lists(5, &[(2, 3), (2, 4)], &[(3, 4)], &[(2, 3), (2, 4)]).unwrap();
        (f, HomogeneousCp { source, target, map: vec![0, 0, 1, 2, 3] })
    }

    #[test]
    fn collapse_merges_vacuous_binders() {
        let (f, h) = vacuous_pair();
        assert!(verify_homogeneous_cp_monadic(&h).accepted());
        let c = collapse(&h).unwrap();
        assert_eq!(c.source.n(), 4);
        assert_eq!(c.map, vec![0, 1, 2, 3]);
        assert!(verify_homogeneous_cp_monadic(&c).accepted());
        assert_eq!(collapse(&c).unwrap(), c);
        let target = graph_of(&f);
        let raw = lift_labels(h.source.edges(), h.source.dualities(), &target, &h.map);
        assert!(matches!(raw, Err(HomogeneousError::Source(FographError::BinderClash(..)))));
        let cp = from_homogeneous_monadic(&h, &f).unwrap();
        assert!(verify_cp(&cp).accepted());
    }

    #[test]
    fn vacuous_sibling_of_a_binding_binder_survives_collapse() {
        let f = fo("all x. (~p(x) \\/ p(x))");
        let target = mograph_of_formula(&f).unwrap();
        let source = Mograph::from_lists(4, &[], &[(2, 3)], &[(0, 2), (0, 3)]).unwrap();
        let h = HomogeneousCp { source, target, map: vec![0, 0, 1, 2] };
        assert!(verify_homogeneous_cp_monadic(&h).accepted());
        assert_eq!(collapse(&h).unwrap(), h);
        assert!(matches!(from_homogeneous_monadic(&h, &f), Err(HomogeneousError::Source(FographError::BinderClash(..)))));
    }

    #[test]
    fn surjection_witnesses() {
        let d = DualizingGraph::from_lists(5, &[(0, 1), (0, 2)], &[(0, 3), (0, 4), (1, 3), (1, 4)]).unwrap();
        let g = label_dualizing_graph(&d);
        assert_eq!(dgraph_of_fograph(&g).unwrap(), d);
        let lone = label_dualizing_graph(&DualizingGraph::from_lists(1, &[], &[]).unwrap());
        assert_eq!(lone.label(0).to_string(), "q1");
    }
}
