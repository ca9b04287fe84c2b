//! Linked fographs, induced bimatchings and fonet verification by decomposition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::fograph::{exist_quant, fusion, univ_quant, FoLabel, Fograph, FographError, Occurrence};
use crate::graphs::UGraph;
use crate::syntax::Term;
use crate::unify::{dependency_pairs, dualizer_rectified, leap_graph_from, links_of, Dualizer, UnifyError};

/// Default vertex cap for exhaustive bimatching search.
pub const BIMATCHING_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("colour {colour} has {size} vertices")]
    BadClassSize { colour: u32, size: usize },
    #[error("vertices {0} and {1} share a colour but are not pre-dual literals")]
    NotPreDual(usize, usize),
    #[error("literal {0} is neither linked nor labelled 1")]
    Unlinked(usize),
    #[error("vertex {0} is a 0-labelled literal")]
    ZeroLiteral(usize),
    #[error("binder {0} is coloured")]
    ColouredBinder(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("not a fograph: {0}")]
    Fograph(#[from] FographError),
    #[error("not linked: {0}")]
    NotLinked(#[from] LinkError),
    #[error("no dualizer exists")]
    NoDualizer,
    #[error("unification failure: {0}")]
    Unify(UnifyError),
    #[error("induced bimatching {0:?}")]
    Bimatching(Option<Vec<usize>>),
    #[error("literal {0} is not dual to its mate")]
    NotAxiom(usize),
    #[error("no admissible decomposition at vertices {0:?}")]
    Stuck(Vec<usize>),
    #[error("replay failed: {0}")]
    Replay(String),
    #[error("search space of {0} vertices exceeds the cap")]
    TooLarge(usize),
}

/// Colour classes are pre-dual literal pairs; uncoloured literals are 1; no 0 literals.
pub fn check_linked(g: &UGraph<FoLabel>) -> Result<(), LinkError> {
    for v in 0..g.n() {
        match (g.label(v), g.colour(v)) {
            (FoLabel::Const(false), _) => return Err(LinkError::ZeroLiteral(v)),
            (FoLabel::Binder(_), Some(_)) => return Err(LinkError::ColouredBinder(v)),
            (FoLabel::Lit(_), None) => return Err(LinkError::Unlinked(v)),
            _ => {}
        }
    }
    for (c, class) in g.colour_classes() {
        let [a, b] = class[..] else {
            return Err(LinkError::BadClassSize { colour: c, size: class.len() });
        };
        match (g.label(a), g.label(b)) {
            (FoLabel::Lit(p), FoLabel::Lit(q)) if p.is_predual(q) => {}
            _ => return Err(LinkError::NotPreDual(a, b)),
        }
    }
    Ok(())
}

/// A same-colour dual pair, or a lone uncoloured 1.
pub fn is_axiom(g: &UGraph<FoLabel>) -> bool {
    match g.n() {
        1 => g.label(0) == &FoLabel::Const(true) && g.colour(0).is_none(),
        2 => {
            g.edge_count() == 0
                && g.colour(0).is_some()
                && g.colour(0) == g.colour(1)
                && matches!((g.label(0), g.label(1)), (FoLabel::Lit(p), FoLabel::Lit(q)) if p.is_dual(q))
        }
        _ => false,
    }
}

fn induces_matching<L: Clone>(g: &UGraph<L>, w: &[usize]) -> bool {
    !w.is_empty()
        && w
            .iter()
            .all(|&u| w.iter().filter(|&&v| v != u && g.has_edge(u, v)).count() == 1)
}

/// `w` induces a matching in both `g` and `leaps`.
pub fn is_bimatching<L: Clone>(g: &UGraph<L>, leaps: &UGraph<()>, w: &[usize]) -> bool {
    induces_matching(g, w) && induces_matching(leaps, w)
}

/// Exhaustive search for a vertex set inducing a matching in both graphs.
/// Only vertices with an edge in each graph can take part; their number must not exceed `cap`.
pub fn find_bimatching<L: Clone>(g: &UGraph<L>, leaps: &UGraph<()>, cap: usize) -> Result<Option<Vec<usize>>, Rejection> {
    let cand: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0 && leaps.degree(v) > 0).collect();
    if cand.len() > cap {
        return Err(Rejection::TooLarge(cand.len()));
    }
    for mask in 1u32..(1u32 << cand.len()) {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let w: Vec<usize> = (0..cand.len()).filter(|i| mask & (1 << i) != 0).map(|i| cand[i]).collect();
        if is_bimatching(g, leaps, &w) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Brute-force fonet test: linked, has a dualizer, and no induced bimatching.
pub fn is_fonet_bruteforce(c: &Fograph, cap: usize) -> Result<bool, Rejection> {
    let r = c.rectify();
    if check_linked(r.graph()).is_err() {
        return Ok(false);
    }
    let Some(d) = dualizer_rectified(&r).map_err(Rejection::Unify)? else {
        return Ok(false);
    };
    let leaps = leap_graph_from(&r, &dependency_pairs(&r, &d));
    Ok(find_bimatching(r.graph(), &leaps, cap)?.is_none())
}

/// How a verified fonet is built from axioms. Vertex ids refer to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trace {
    Axioms {
        vertices: Vec<usize>,
        labels: Vec<FoLabel>,
    },
    Universal {
        binder: usize,
        var: String,
        sub: Box<Trace>,
    },
    Fusion {
        left: Box<Trace>,
        right: Box<Trace>,
        portions: (Vec<usize>, Vec<usize>),
        bridge: (usize, usize),
    },
    Existential {
        binder: usize,
        var: String,
        term: Term,
        occurrences: Vec<Occurrence>,
        portion: Vec<usize>,
        sub: Box<Trace>,
    },
}

impl Trace {
    pub fn steps(&self) -> usize {
        match self {
            Trace::Axioms { .. } => 1,
            Trace::Universal { sub, .. } | Trace::Existential { sub, .. } => 1 + sub.steps(),
            Trace::Fusion { left, right, .. } => 1 + left.steps() + right.steps(),
        }
    }

    /// Indented outline, one step per line.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        self.write_outline(0, &mut out);
        out
    }

    fn write_outline(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            Trace::Axioms { vertices, labels } => {
                let parts: Vec<String> = vertices.iter().zip(labels).map(|(v, l)| format!("{v}:{l}")).collect();
                out.push_str(&format!("{pad}axioms {}\n", parts.join(" ")));
            }
            Trace::Universal { binder, var, sub } => {
                out.push_str(&format!("{pad}universal {binder}:{var}\n"));
                sub.write_outline(depth + 1, out);
            }
            Trace::Existential { binder, var, term, portion, sub, .. } => {
                out.push_str(&format!("{pad}existential {binder}:{var} := {term} at {portion:?}\n"));
                sub.write_outline(depth + 1, out);
            }
            Trace::Fusion { left, right, portions, .. } => {
                out.push_str(&format!("{pad}fusion {:?} x {:?}\n", portions.0, portions.1));
                left.write_outline(depth + 1, out);
                right.write_outline(depth + 1, out);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FonetCertificate {
    pub rectified: Fograph,
    pub dualizer: Dualizer,
    pub leaps: UGraph<()>,
    pub trace: Trace,
}

struct Decomposer<'a> {
    g: &'a Fograph,
    leaps: &'a UGraph<()>,
    mate: Vec<Option<usize>>,
    dualizer: &'a Dualizer,
}

fn set_of(n: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    items.into_iter().for_each(|v| s.insert(v));
    s
}

impl<'a> Decomposer<'a> {
    fn is_binder(&self, labels: &[FoLabel], v: usize) -> bool {
        labels[v].is_binder()
    }

    fn has_edge_within(&self, s: &FixedBitSet, v: usize) -> bool {
        self.g.graph().row(v).intersection(s).next().is_some()
    }

    fn run(&self, s: &FixedBitSet, labels: &[FoLabel]) -> Result<Trace, Rejection> {
        let n = self.g.n();
        let any_edge = s.ones().any(|v| self.has_edge_within(s, v));
        let any_binder = s.ones().any(|v| self.is_binder(labels, v));

        if !any_edge && !any_binder {
            for v in s.ones() {
                match (&labels[v], self.mate[v]) {
                    (FoLabel::Const(true), None) => {}
                    (FoLabel::Lit(a), Some(m)) if s.contains(m) => match &labels[m] {
                        FoLabel::Lit(b) if a.is_dual(b) => {}
                        _ => return Err(Rejection::NotAxiom(v)),
                    },
                    _ => return Err(Rejection::NotAxiom(v)),
                }
            }
            let vertices: Vec<usize> = s.ones().collect();
            let labels = vertices.iter().map(|&v| labels[v].clone()).collect();
            return Ok(Trace::Axioms { vertices, labels });
        }

        if let Some(b) = s.ones().find(|&v| self.is_binder(labels, v) && !self.has_edge_within(s, v)) {
            let mut rest = s.clone();
            rest.set(b, false);
            let var = labels[b].binder_var().expect("binder").to_string();
            let sub = self.run(&rest, labels)?;
            return Ok(Trace::Universal {
                binder: b,
                var,
                sub: Box::new(sub),
            });
        }

        // Split each non-trivial component into two joined blocks.
        let comps = self.g.graph().components(s);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut lone_binder: Vec<bool> = Vec::new();
        let mut residue: Vec<usize> = Vec::new();
        for comp in comps {
            if comp.len() == 1 {
                residue.push(comp[0]);
                continue;
            }
            let cs = set_of(n, comp.iter().copied());
            let co = self.g.graph().co_components(&cs);
            let lone = co.iter().find(|c| c.len() == 1 && self.is_binder(labels, c[0])).map(|c| c[0]);
            let (a, b): (Vec<usize>, Vec<usize>) = match lone {
                Some(x) => (vec![x], comp.iter().copied().filter(|&v| v != x).collect()),
                None => {
                    let first = co[0].clone();
                    let rest = comp.iter().copied().filter(|v| !first.contains(v)).collect();
                    (first, rest)
                }
            };
            lone_binder.push(lone.is_some());
            lone_binder.push(false);
            blocks.push(a);
            blocks.push(b);
        }
        let mut block_of: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, blk) in blocks.iter().enumerate() {
            blk.iter().for_each(|&v| {
                block_of.insert(v, i);
            });
        }
        let mate_block = |i: usize| i ^ 1;

        // Leap edges between blocks; a leap inside one joined pair is a bimatching.
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); blocks.len()];
        let mut leap_between: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (&u, &bu) in &block_of {
            for w in self.leaps.neighbours(u) {
                let Some(&bw) = block_of.get(&w) else { continue };
                if bu == bw {
                    continue;
                }
                if bw == mate_block(bu) {
                    return Err(Rejection::Bimatching(Some(vec![u.min(w), u.max(w)])));
                }
                adj[bu].insert(bw);
                leap_between.entry((bu, bw)).or_insert((u, w));
            }
        }

        let pairs = blocks.len() / 2;
        let mut chosen = None;
        for i in 0..pairs {
            let (a, b) = (2 * i, 2 * i + 1);
            if !self.is_bridge(&adj, a, b) {
                continue;
            }
            if lone_binder[a] {
                let x = labels[blocks[a][0]].binder_var().expect("binder");
                if self.term_has_bound_var(x, s, labels) {
                    continue;
                }
            }
            chosen = Some(i);
            break;
        }
        let Some(i) = chosen else {
            if (0..pairs).any(|i| self.is_bridge(&adj, 2 * i, 2 * i + 1)) {
                return Err(Rejection::Stuck(s.ones().collect()));
            }
            let witness = self.alternating_witness(&blocks, &adj, &leap_between);
            return Err(Rejection::Bimatching(witness));
        };
        let (a, b) = (2 * i, 2 * i + 1);

        if lone_binder[a] {
            let x_vertex = blocks[a][0];
            let x = labels[x_vertex].binder_var().expect("binder").to_string();
            let term = self.dualizer.assignment.get(&x).cloned().ok_or(Rejection::NoDualizer)?;
            let mut rest = s.clone();
            rest.set(x_vertex, false);
            let mut next = labels.to_vec();
            let mut occurrences = Vec::new();
            for v in rest.ones() {
                if let FoLabel::Lit(atom) = &labels[v] {
                    for path in atom.var_positions(&x) {
                        occurrences.push(Occurrence { vertex: v, path });
                    }
                    if atom.contains_var(&x) {
                        next[v] = FoLabel::Lit(atom.subst(&x, &term));
                    }
                }
            }
            let sub = self.run(&rest, &next)?;
            return Ok(Trace::Existential {
                binder: x_vertex,
                var: x,
                term,
                occurrences,
                portion: blocks[b].clone(),
                sub: Box::new(sub),
            });
        }

        // Fusion: the side of block `a` once the bridge is removed.
        let side_blocks = self.reach(&adj, a, Some((a, b)));
        let mut left = FixedBitSet::with_capacity(n);
        for &k in &side_blocks {
            blocks[k].iter().for_each(|&v| left.insert(v));
        }
        for &v in &residue {
            if let Some(m) = self.mate[v] {
                if left.contains(m) {
                    left.insert(v);
                }
            }
        }
        let mut right = s.clone();
        right.difference_with(&left);
        let lt = self.run(&left, labels)?;
        let rt = self.run(&right, labels)?;
        Ok(Trace::Fusion {
            left: Box::new(lt),
            right: Box::new(rt),
            portions: (blocks[a].clone(), blocks[b].clone()),
            bridge: (blocks[a][0], blocks[b][0]),
        })
    }

    fn term_has_bound_var(&self, x: &str, s: &FixedBitSet, labels: &[FoLabel]) -> bool {
        let Some(t) = self.dualizer.assignment.get(x) else { return false };
        let vars = t.vars();
        s.ones().any(|v| matches!(labels[v].binder_var(), Some(y) if vars.contains(y)))
    }

    /// Blocks reachable from `from` in the block graph (Z pairs plus leaps), skipping edge `cut`.
    fn reach(&self, adj: &[BTreeSet<usize>], from: usize, cut: Option<(usize, usize)>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let z = u ^ 1;
            let next = adj[u].iter().copied().chain(std::iter::once(z));
            for w in next {
                let is_cut = cut.is_some_and(|(a, b)| (u, w) == (a, b) || (u, w) == (b, a));
                if is_cut && w == z {
                    continue;
                }
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn is_bridge(&self, adj: &[BTreeSet<usize>], a: usize, b: usize) -> bool {
        !self.reach(adj, a, Some((a, b))).contains(&b)
    }

    /// Alternating cycle in the block graph turned into a concrete vertex set, if it checks out.
    fn alternating_witness(
        &self,
        blocks: &[Vec<usize>],
        adj: &[BTreeSet<usize>],
        leap_between: &BTreeMap<(usize, usize), (usize, usize)>,
    ) -> Option<Vec<usize>> {
        // Step u -> mate(w) for every leap u-w; a cycle alternates leaps and Z edges.
        let k = blocks.len();
        let succ: Vec<Vec<usize>> = (0..k).map(|u| adj[u].iter().map(|&w| w ^ 1).collect()).collect();
        let mut state = vec![0u8; k];
        for start in 0..k {
            if state[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            state[start] = 1;
            while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
                if *idx < succ[u].len() {
                    let w = succ[u][*idx];
                    *idx += 1;
                    if state[w] == 1 {
                        let path: Vec<usize> = stack.iter().map(|&(v, _)| v).skip_while(|&v| v != w).collect();
                        let mut verts = Vec::new();
                        for (i, &v) in path.iter().enumerate() {
                            let next = path[(i + 1) % path.len()];
                            let (p, q) = leap_between.get(&(v, next ^ 1))?;
                            verts.push(*p);
                            verts.push(*q);
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        return is_bimatching(self.g.graph(), self.leaps, &verts).then_some(verts);
                    } else if state[w] == 0 {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                } else {
                    state[u] = 2;
                    stack.pop();
                }
            }
        }
        None
    }
}

fn replay(t: &Trace, input: &Fograph) -> Result<(Fograph, Vec<usize>), FographError> {
    match t {
        Trace::Axioms { vertices, labels } => {
            let mut g = UGraph::new();
            for l in labels {
                g.add_vertex(l.clone());
            }
            for (i, &v) in vertices.iter().enumerate() {
                if let Some(c) = input.graph().colour(v) {
                    g.set_colour(i, Some(c));
                }
            }
            let names = vertices.iter().map(|&v| input.name(v).to_string()).collect();
            Ok((Fograph::with_names(g, names)?, vertices.clone()))
        }
        Trace::Universal { binder, var, sub } => {
            let (g, mut origin) = replay(sub, input)?;
            let g = univ_quant(&g, var)?;
            origin.push(*binder);
            Ok((g, origin))
        }
        Trace::Existential {
            binder,
            var,
            occurrences,
            portion,
            sub,
            ..
        } => {
            let (g, mut origin) = replay(sub, input)?;
            let local = |v: usize| origin.iter().position(|&o| o == v).ok_or(FographError::OccurrenceOutsidePortion(v));
            let p = portion.iter().map(|&v| local(v)).collect::<Result<BTreeSet<_>, _>>()?;
            let occs = occurrences
                .iter()
                .map(|o| local(o.vertex).map(|vertex| Occurrence { vertex, path: o.path.clone() }))
                .collect::<Result<Vec<_>, _>>()?;
            let g = exist_quant(&g, var, &occs, &p)?;
            origin.push(*binder);
            Ok((g, origin))
        }
        Trace::Fusion {
            left, right, portions, ..
        } => {
            let (g1, o1) = replay(left, input)?;
            let (g2, o2) = replay(right, input)?;
            let find = |o: &[usize], v: usize| o.iter().position(|&x| x == v).ok_or(FographError::EmptyPortion);
            let p = portions.0.iter().map(|&v| find(&o1, v)).collect::<Result<BTreeSet<_>, _>>()?;
            let q = portions.1.iter().map(|&v| find(&o2, v)).collect::<Result<BTreeSet<_>, _>>()?;
            let g = fusion(&g1, &g2, &p, &q)?;
            Ok((g, o1.into_iter().chain(o2).collect()))
        }
    }
}

/// Rebuilds the net from a trace and compares it with `input`, vertex by vertex.
pub fn replay_matches(t: &Trace, input: &Fograph) -> Result<(), Rejection> {
    let (g, origin) = replay(t, input).map_err(|e| Rejection::Replay(e.to_string()))?;
    if g.n() != input.n() {
        return Err(Rejection::Replay(format!("{} vertices rebuilt, {} expected", g.n(), input.n())));
    }
    for i in 0..g.n() {
        let o = origin[i];
        if g.label(i) != input.label(o) {
            return Err(Rejection::Replay(format!("label of vertex {o} differs")));
        }
        if g.graph().colour(i) != input.graph().colour(o) {
            return Err(Rejection::Replay(format!("colour of vertex {o} differs")));
        }
        for j in i + 1..g.n() {
            if g.graph().has_edge(i, j) != input.graph().has_edge(o, origin[j]) {
                return Err(Rejection::Replay(format!("edge {o}-{} differs", origin[j])));
            }
        }
    }
    Ok(())
}

/// Accepts exactly the fonets, returning a replayed decomposition.
pub fn verify_fonet(c: &Fograph) -> Result<FonetCertificate, Rejection> {
    let r = c.rectify();
    check_linked(r.graph())?;
    let d = dualizer_rectified(&r).map_err(Rejection::Unify)?.ok_or(Rejection::NoDualizer)?;
    let leaps = leap_graph_from(&r, &dependency_pairs(&r, &d));
    let mut mate = vec![None; r.n()];
    for (a, b) in links_of(r.graph()).map_err(Rejection::Unify)? {
        mate[a] = Some(b);
        mate[b] = Some(a);
    }
    let dec = Decomposer {
        g: &r,
        leaps: &leaps,
        mate,
        dualizer: &d,
    };
    let labels = r.graph().labels().to_vec();
    let trace = dec.run(&r.graph().all_vertices(), &labels)?;
    replay_matches(&trace, &r)?;
    Ok(FonetCertificate {
        rectified: r,
        dualizer: d,
        leaps,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fograph::graph_of;
    use crate::syntax::parse_formula;

    fn linked(f: &str, links: &[(usize, usize)]) -> Fograph {
        let g = graph_of(&parse_formula(f).unwrap());
        let mut cols = vec![None; g.n()];
        for &(a, b) in links {
            cols[a] = Some(a.min(b) as u32);
            cols[b] = Some(a.min(b) as u32);
        }
        g.with_colours(&cols)
    }

    fn two_link_graph() -> Fograph {
        linked("(ex x. ~p(x)) \\/ (ex y. ~q(y)) \\/ all z. (p(z) & q(f(z)))", &[(1, 5), (3, 6)])
    }

    #[test]
    fn linkage_checks() {
        assert!(check_linked(two_link_graph().graph()).is_ok());
        assert!(check_linked(graph_of(&parse_formula("1").unwrap()).graph()).is_ok());
        assert_eq!(check_linked(graph_of(&parse_formula("p").unwrap()).graph()), Err(LinkError::Unlinked(0)));
        assert_eq!(check_linked(graph_of(&parse_formula("0").unwrap()).graph()), Err(LinkError::ZeroLiteral(0)));
        let same = linked("p \\/ p", &[(0, 1)]);
        assert_eq!(check_linked(same.graph()), Err(LinkError::NotPreDual(0, 1)));
    }

    #[test]
    fn axioms() {
        assert!(is_axiom(linked("~p \\/ p", &[(0, 1)]).graph()));
        assert!(is_axiom(graph_of(&parse_formula("1").unwrap()).graph()));
        assert!(!is_axiom(graph_of(&parse_formula("p").unwrap()).graph()));
    }

    #[test]
    fn two_link_graph_is_a_fonet() {
        let g = two_link_graph();
        let cert = verify_fonet(&g).unwrap();
        assert!(replay_matches(&cert.trace, &cert.rectified).is_ok());
        assert_eq!(is_fonet_bruteforce(&g, BIMATCHING_CAP), Ok(true));
    }

    #[test]
    fn axiom_pair_is_one_step() {
        let g = linked("~p(x) \\/ p(x)", &[(0, 1)]);
        let cert = verify_fonet(&g).unwrap();
        assert_eq!(cert.trace.steps(), 1);
        assert!(verify_fonet(&graph_of(&parse_formula("1").unwrap())).is_ok());
    }

    #[test]
    fn crossed_square_has_bimatching() {
        // edges ab, cd; links ac, bd
        let g = linked("(p & q) \\/ (~p & ~q)", &[(0, 2), (1, 3)]);
        let leaps = leap_graph_from(&g, &BTreeSet::new());
        assert_eq!(find_bimatching(g.graph(), &leaps, BIMATCHING_CAP), Ok(Some(vec![0, 1, 2, 3])));
        assert!(matches!(verify_fonet(&g), Err(Rejection::Bimatching(Some(_)))));
    }

    #[test]
    fn edgeless_graph_has_no_bimatching() {
        let g = linked("~p \\/ p \\/ ~q \\/ q", &[(0, 1), (2, 3)]);
        let leaps = leap_graph_from(&g, &BTreeSet::new());
        assert_eq!(find_bimatching(g.graph(), &leaps, BIMATCHING_CAP), Ok(None));
    }

    #[test]
    fn drinker_graph_alone_is_not_a_fonet() {
        let g = linked("ex x. (~p(x) \\/ all y. p(y))", &[(1, 3)]);
        assert!(matches!(verify_fonet(&g), Err(Rejection::Bimatching(_))));
        assert_eq!(is_fonet_bruteforce(&g, BIMATCHING_CAP), Ok(false));
    }

    #[test]
    fn contracted_drinker_source_is_a_fonet() {
        // (ex x2. ~p(x2)) \/ ex x1. all y. p(y)
        let g = linked("(ex x2. ~p(x2)) \\/ ex x1. all y. p(y)", &[(1, 4)]);
        let cert = verify_fonet(&g).unwrap();
        assert_eq!(cert.dualizer.assignment["x2"], Term::var("y"));
        assert_eq!(is_fonet_bruteforce(&g, BIMATCHING_CAP), Ok(true));
    }

    #[test]
    fn excluded_middle_over_conjunction() {
        let g = linked("(~p \\/ p) & (~q \\/ q)", &[(0, 1), (2, 3)]);
        assert!(verify_fonet(&g).is_ok());
        let bad = linked("(~p & p) \\/ 1", &[(0, 1)]);
        assert!(verify_fonet(&bad).is_err());
    }
}
