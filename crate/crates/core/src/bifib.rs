//! Graph maps: homomorphisms, fibrations, skew fibrations, skew bifibrations and
//! combinatorial proof checking.

use std::fmt;

use crate::fograph::{graph_of, Fograph, FographError, Quantifier};
use crate::fonet::{verify_fonet, LinkError, Rejection};
use crate::graphs::{DGraph, GraphError, UGraph};
use crate::syntax::Formula;

/// Source vertex `v` goes to target vertex `map[v]`.
pub type VertexMap = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    MapShape,
    Homomorphism,
    SkewLifting,
    Lifting,
    LabelPreservation,
    ExistentialPreservation,
    BindingHomomorphism,
    BindingLiftExists,
    BindingLiftUnique,
    Fonet,
    Target,
    Linked,
    Matching,
    Consistency,
    Bimatching,
    DualityHomomorphism,
    Structure,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::MapShape => "map-shape",
            Condition::Homomorphism => "homomorphism",
            Condition::SkewLifting => "skew-lifting",
            Condition::Lifting => "lifting",
            Condition::LabelPreservation => "label-preservation",
            Condition::ExistentialPreservation => "existential-preservation",
            Condition::BindingHomomorphism => "binding-homomorphism",
            Condition::BindingLiftExists => "binding-lift-exists",
            Condition::BindingLiftUnique => "binding-lift-unique",
            Condition::Fonet => "fonet",
            Condition::Target => "target",
            Condition::Linked => "linked",
            Condition::Matching => "matching",
            Condition::Consistency => "consistency",
            Condition::Bimatching => "bimatching",
            Condition::DualityHomomorphism => "duality-homomorphism",
            Condition::Structure => "structure",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed at {:?}", self.condition, self.witness)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Every failed condition, in checking order. Empty means accepted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, condition: Condition, witness: Vec<usize>, detail: impl Into<String>) {
        self.failures.push(Failure {
            condition,
            witness,
            detail: detail.into(),
        });
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.failures.extend(other.failures);
    }

    pub fn has(&self, c: Condition) -> bool {
        self.failures.iter().any(|f| f.condition == c)
    }

    pub fn conditions(&self) -> Vec<Condition> {
        let mut out: Vec<Condition> = self.failures.iter().map(|f| f.condition).collect();
        out.dedup();
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted() {
            return f.write_str("accepted");
        }
        writeln!(f, "rejected")?;
        for x in &self.failures {
            writeln!(f, "  {x}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_shape(map: &[usize], n_src: usize, n_tgt: usize) -> CheckReport {
    let mut r = CheckReport::default();
    if map.len() != n_src {
        r.fail(Condition::MapShape, vec![], format!("map has {} entries for {} source vertices", map.len(), n_src));
    }
    for (v, &w) in map.iter().enumerate() {
        if w >= n_tgt {
            r.fail(Condition::MapShape, vec![v, w], "image out of range");
        }
    }
    r
}

pub fn is_homomorphism<L: Clone, M: Clone>(f: &[usize], g: &UGraph<L>, h: &UGraph<M>) -> CheckReport {
    let mut r = check_shape(f, g.n(), h.n());
    if !r.accepted() {
        return r;
    }
    for (u, v) in g.edges() {
        if !h.has_edge(f[u], f[v]) {
            r.fail(Condition::Homomorphism, vec![u, v], format!("image {}-{} is not an edge", f[u], f[v]));
        }
    }
    r
}

/// For every `v` and target edge `w`-`f(v)`, some neighbour of `v` maps to a vertex not adjacent to `w`.
pub fn is_skew_fibration<L: Clone, M: Clone>(f: &[usize], g: &UGraph<L>, h: &UGraph<M>) -> CheckReport {
    let mut r = is_homomorphism(f, g, h);
    if !r.accepted() {
        return r;
    }
    for v in 0..g.n() {
        for w in h.neighbours(f[v]) {
            if !g.neighbours(v).any(|u| !h.has_edge(f[u], w)) {
                r.fail(Condition::SkewLifting, vec![v, w], format!("no skew lift of {w}-{}", f[v]));
            }
        }
    }
    r
}

/// Strict undirected fibration: each target edge at `f(v)` lifts uniquely at `v`.
pub fn is_fibration<L: Clone, M: Clone>(f: &[usize], g: &UGraph<L>, h: &UGraph<M>) -> CheckReport {
    let mut r = is_homomorphism(f, g, h);
    if !r.accepted() {
        return r;
    }
    for v in 0..g.n() {
        for w in h.neighbours(f[v]) {
            let lifts = g.neighbours(v).filter(|&u| f[u] == w).count();
            if lifts != 1 {
                r.fail(Condition::Lifting, vec![v, w], format!("{lifts} lifts"));
            }
        }
    }
    r
}

/// Every arc `w -> f(v)` has exactly one lift `w' -> v` with `f(w') = w`.
pub fn is_fibration_directed(f: &[usize], g: &DGraph, h: &DGraph) -> CheckReport {
    let mut r = check_shape(f, g.n(), h.n());
    if !r.accepted() {
        return r;
    }
    for (u, v) in g.arcs() {
        if !h.has_arc(f[u], f[v]) {
            r.fail(Condition::BindingHomomorphism, vec![u, v], format!("image {}->{} is not an arc", f[u], f[v]));
        }
    }
    for v in 0..g.n() {
        for w in h.predecessors(f[v]) {
            let lifts: Vec<usize> = g.predecessors(v).filter(|&u| f[u] == w).collect();
            match lifts.len() {
                1 => {}
                0 => r.fail(Condition::BindingLiftExists, vec![v, w], format!("no lift of {w}->{}", f[v])),
                _ => {
                    let mut wit = vec![v, w];
                    wit.extend(&lifts);
                    r.fail(Condition::BindingLiftUnique, wit, format!("{} lifts of {w}->{}", lifts.len(), f[v]));
                }
            }
        }
    }
    r
}

pub fn is_skew_bifibration(f: &[usize], src: &Fograph, tgt: &Fograph) -> CheckReport {
    let mut r = check_shape(f, src.n(), tgt.n());
    if !r.accepted() {
        return r;
    }
    for v in 0..src.n() {
        if src.label(v) != tgt.label(f[v]) {
            r.fail(
                Condition::LabelPreservation,
                vec![v, f[v]],
                format!("`{}` maps to `{}`", src.label(v), tgt.label(f[v])),
            );
        }
    }
    for b in src.binders() {
        if src.binder_kind(b) == Ok(Quantifier::Existential)
            && (!tgt.label(f[b]).is_binder() || tgt.binder_kind(f[b]) != Ok(Quantifier::Existential))
        {
            r.fail(Condition::ExistentialPreservation, vec![b, f[b]], "existential binder maps to a non-existential vertex");
        }
    }
    r.merge(is_skew_fibration(f, src.graph(), tgt.graph()));
    r.merge(is_fibration_directed(f, &src.binding_graph(), &tgt.binding_graph()));
    r
}

/// A coloured source fograph mapped into a target fograph, optionally with the formula the target should be the graph of.
#[derive(Clone, Debug, PartialEq)]
pub struct CombProof {
    pub source: Fograph,
    pub target: Fograph,
    pub formula: Option<Formula>,
    pub map: VertexMap,
}

impl CombProof {
    pub fn of_formula(formula: Formula, source: Fograph, map: VertexMap) -> CombProof {
        CombProof {
            source,
            target: graph_of(&formula),
            formula: Some(formula),
            map,
        }
    }

    pub fn new(source: Fograph, target: Fograph, map: VertexMap) -> CombProof {
        CombProof {
            source,
            target,
            formula: None,
            map,
        }
    }
}

pub fn verify_cp(cp: &CombProof) -> CheckReport {
    let mut r = CheckReport::default();
    if let Some(f) = &cp.formula {
        if graph_of(f).fingerprint() != cp.target.fingerprint() {
            r.fail(Condition::Target, vec![], format!("target is not the graph of `{f}`"));
        }
    }
    if let Err(e) = verify_fonet(&cp.source) {
        let witness = rejection_witness(&e, &cp.source);
        r.fail(Condition::Fonet, witness, e.to_string());
    }
    r.merge(is_skew_bifibration(&cp.map, &cp.source, &cp.target));
    r
}

/// Source vertices implicated by a fonet rejection.
pub fn rejection_witness(e: &Rejection, g: &Fograph) -> Vec<usize> {
    match e {
        Rejection::Bimatching(Some(w)) | Rejection::Stuck(w) => w.clone(),
        Rejection::NotAxiom(v) => vec![*v],
        Rejection::NotLinked(l) => match l {
            LinkError::BadClassSize { colour, .. } => g.graph().colour_classes().remove(colour).unwrap_or_default(),
            LinkError::NotPreDual(a, b) => vec![*a, *b],
            LinkError::Unlinked(v) | LinkError::ZeroLiteral(v) | LinkError::ColouredBinder(v) => vec![*v],
        },
        Rejection::Fograph(f) => fograph_witness(f),
        _ => vec![],
    }
}

/// Vertices named by a fograph legality error.
pub fn fograph_witness(e: &FographError) -> Vec<usize> {
    match e {
        FographError::NotACograph(w) | FographError::Graph(GraphError::NotACograph(w)) => w.to_vec(),
        FographError::EmptyScope(v) | FographError::NotABinder(v) => vec![*v],
        FographError::BinderClash(a, b) | FographError::Graph(GraphError::AdjacentColour(a, b)) => vec![*a, *b],
        FographError::InvalidPortion { vertex, .. } => vec![*vertex],
        _ => vec![],
    }
}

/// `f` with each cut `B` appended as a disjunct `B & ~B`.
pub fn cut_formula(f: &Formula, cuts: &[Formula]) -> Formula {
    cuts.iter()
        .fold(f.clone(), |acc, b| Formula::or(acc, Formula::and(b.clone(), b.negate())))
}

/// Verifies `cp` as a proof of `f` with the given cuts.
pub fn verify_cut_cp(f: &Formula, cuts: &[Formula], cp: &CombProof) -> CheckReport {
    let full = cut_formula(f, cuts);
    let mut r = CheckReport::default();
    if graph_of(&full).fingerprint() != cp.target.fingerprint() {
        r.fail(Condition::Target, vec![], format!("target is not the graph of `{full}`"));
    }
    let inner = CombProof {
        formula: None,
        ..cp.clone()
    };
    r.merge(verify_cp(&inner));
    r
}
