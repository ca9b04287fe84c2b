//! Labelled graphs, cograph algebra and cotrees.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("not a cograph: induced path {0:?}")]
    NotACograph([usize; 4]),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertices {0} and {1} share a colour but are adjacent")]
    AdjacentColour(usize, usize),
}

/// Undirected graph on vertices `0..n`, each carrying a label and an optional colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGraph<L> {
    labels: Vec<L>,
    adj: Vec<FixedBitSet>,
    colours: Vec<Option<u32>>,
}

impl<L> Default for UGraph<L> {
    fn default() -> Self {
        UGraph {
            labels: Vec::new(),
            adj: Vec::new(),
            colours: Vec::new(),
        }
    }
}

impl<L: Clone> UGraph<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(label: L) -> Self {
        let mut g = Self::new();
        g.add_vertex(label);
        g
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn add_vertex(&mut self, label: L) -> usize {
        let v = self.labels.len();
        self.labels.push(label);
        self.colours.push(None);
        for row in &mut self.adj {
            row.grow(v + 1);
        }
        self.adj.push(FixedBitSet::with_capacity(v + 1));
        v
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= n {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn label(&self, v: usize) -> &L {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn set_label(&mut self, v: usize, label: L) {
        self.labels[v] = label;
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].ones().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn colour(&self, v: usize) -> Option<u32> {
        self.colours[v]
    }

    pub fn colours(&self) -> &[Option<u32>] {
        &self.colours
    }

    pub fn set_colour(&mut self, v: usize, c: Option<u32>) {
        self.colours[v] = c;
    }

    /// Colour classes keyed by colour.
    pub fn colour_classes(&self) -> BTreeMap<u32, Vec<usize>> {
        let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, c) in self.colours.iter().enumerate() {
            if let Some(c) = c {
                out.entry(*c).or_default().push(v);
            }
        }
        out
    }

    pub fn check_colours(&self) -> Result<(), GraphError> {
        for class in self.colour_classes().values() {
            for (i, &u) in class.iter().enumerate() {
                for &v in &class[i + 1..] {
                    if self.has_edge(u, v) {
                        return Err(GraphError::AdjacentColour(u, v));
                    }
                }
            }
        }
        Ok(())
    }

    fn disjoint_sum(&self, other: &UGraph<L>, join: bool) -> UGraph<L> {
        let shift = self.n();
        let mut g = self.clone();
        let max_colour = self.colours.iter().flatten().max().map_or(0, |c| c + 1);
        for v in 0..other.n() {
            let w = g.add_vertex(other.labels[v].clone());
            g.colours[w] = other.colours[v].map(|c| c + max_colour);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift).expect("shifted edge in range");
        }
        if join {
            for u in 0..shift {
                for v in shift..g.n() {
                    g.add_edge(u, v).expect("cross edge in range");
                }
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn union(&self, other: &UGraph<L>) -> UGraph<L> {
        self.disjoint_sum(other, false)
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &UGraph<L>) -> UGraph<L> {
        self.disjoint_sum(other, true)
    }

    /// Subgraph induced on `keep` (renumbered in the given order), with the old index of each new vertex.
    pub fn induced(&self, keep: &[usize]) -> Result<(UGraph<L>, Vec<usize>), GraphError> {
        if keep.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut g = UGraph::new();
        for &v in keep {
            if v >= self.n() {
                return Err(GraphError::UnknownVertex(v));
            }
            let w = g.add_vertex(self.labels[v].clone());
            g.colours[w] = self.colours[v];
        }
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok((g, keep.to_vec()))
    }

    pub fn map_labels<M: Clone>(&self, f: impl Fn(usize, &L) -> M) -> UGraph<M> {
        UGraph {
            labels: self.labels.iter().enumerate().map(|(v, l)| f(v, l)).collect(),
            adj: self.adj.clone(),
            colours: self.colours.clone(),
        }
    }

    pub fn all_vertices(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n());
        s.insert_range(..);
        s
    }

    /// Connected components of the subgraph induced by `within`, each sorted, ordered by least vertex.
    pub fn components(&self, within: &FixedBitSet) -> Vec<Vec<usize>> {
        self.components_with(within, false)
    }

    /// Components of the complement of the subgraph induced by `within`.
    pub fn co_components(&self, within: &FixedBitSet) -> Vec<Vec<usize>> {
        self.components_with(within, true)
    }

    fn components_with(&self, within: &FixedBitSet, complement: bool) -> Vec<Vec<usize>> {
        let mut remaining = within.clone();
        let mut out = Vec::new();
        while let Some(start) = remaining.minimum() {
            remaining.set(start, false);
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let mut next = remaining.clone();
                if complement {
                    next.difference_with(&self.adj[v]);
                } else {
                    next.intersect_with(&self.adj[v]);
                }
                for w in next.ones() {
                    remaining.set(w, false);
                    comp.push(w);
                    queue.push_back(w);
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `S` is a module: every vertex outside `S` sees all of `S` or none of it.
    pub fn is_module(&self, s: &FixedBitSet) -> bool {
        (0..self.n()).filter(|v| !s.contains(*v)).all(|v| {
            let hits = self.adj[v].intersection(s).count();
            hits == 0 || hits == s.count_ones(..)
        })
    }
}

fn bitset_of(n: usize, items: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    items.iter().for_each(|&v| s.insert(v));
    s
}

/// An induced P4 inside `within`, found by scanning middle edges.
pub fn find_p4<L: Clone>(g: &UGraph<L>, within: &FixedBitSet) -> Option<[usize; 4]> {
    for b in within.ones() {
        for c in g.row(b).intersection(within).filter(|&c| c != b) {
            let mut ends_a = g.row(b).clone();
            ends_a.intersect_with(within);
            ends_a.difference_with(g.row(c));
            ends_a.set(c, false);
            let mut ends_d = g.row(c).clone();
            ends_d.intersect_with(within);
            ends_d.difference_with(g.row(b));
            ends_d.set(b, false);
            for a in ends_a.ones() {
                if let Some(d) = ends_d.ones().find(|&d| d != a && !g.has_edge(a, d)) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Union,
    Join,
}

impl Tag {
    pub fn symbol(self) -> &'static str {
        match self {
            Tag::Union => "⊎",
            Tag::Join => "⋈",
        }
    }
}

/// A ⊎/⋈ tree over vertex ids. Cotrees are the branching, alternating ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cotree {
    Leaf(usize),
    Node(Tag, Vec<Cotree>),
}

impl Cotree {
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Node(_, cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn tag(&self) -> Option<Tag> {
        match self {
            Cotree::Leaf(_) => None,
            Cotree::Node(t, _) => Some(*t),
        }
    }

    /// Branching (≥ 2 children) and alternating (no child shares its parent's tag).
    pub fn is_cotree(&self) -> bool {
        match self {
            Cotree::Leaf(_) => true,
            Cotree::Node(t, cs) => cs.len() >= 2 && cs.iter().all(|c| c.tag() != Some(*t) && c.is_cotree()),
        }
    }

    /// Edges of the represented cograph, as pairs with the smaller id first.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        self.collect_edges(&mut out);
        out
    }

    fn collect_edges(&self, out: &mut BTreeSet<(usize, usize)>) {
        if let Cotree::Node(t, cs) = self {
            cs.iter().for_each(|c| c.collect_edges(out));
            if *t == Tag::Join {
                let blocks: Vec<Vec<usize>> = cs.iter().map(Cotree::leaves).collect();
                for (i, bi) in blocks.iter().enumerate() {
                    for bj in &blocks[i + 1..] {
                        for &u in bi {
                            for &v in bj {
                                out.insert((u.min(v), u.max(v)));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Restricts to the leaves in `keep`, dropping emptied subtrees (may leave unary nodes).
    pub fn prune(&self, keep: &BTreeSet<usize>) -> Option<Cotree> {
        match self {
            Cotree::Leaf(v) => keep.contains(v).then(|| self.clone()),
            Cotree::Node(t, cs) => {
                let kept: Vec<Cotree> = cs.iter().filter_map(|c| c.prune(keep)).collect();
                (!kept.is_empty()).then(|| Cotree::Node(*t, kept))
            }
        }
    }

    /// Canonical string with children sorted, leaves rendered by `leaf`.
    pub fn fingerprint(&self, leaf: &impl Fn(usize) -> String) -> String {
        match self {
            Cotree::Leaf(v) => leaf(*v),
            Cotree::Node(t, cs) => {
                let mut parts: Vec<String> = cs.iter().map(|c| c.fingerprint(leaf)).collect();
                parts.sort();
                format!("{}({})", t.symbol(), parts.join(","))
            }
        }
    }

    pub fn render(&self, leaf: &impl Fn(usize) -> String) -> String {
        match self {
            Cotree::Leaf(v) => leaf(*v),
            Cotree::Node(t, cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.render(leaf)).collect();
                format!("{}({})", t.symbol(), parts.join(","))
            }
        }
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| v.to_string()))
    }
}

/// Graph of a ⊎/⋈ tree, one vertex per leaf in ascending id order; labels are the leaf ids.
pub fn cograph_of(t: &Cotree) -> UGraph<usize> {
    let mut ids = t.leaves();
    ids.sort_unstable();
    let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut g = UGraph::new();
    for &v in &ids {
        g.add_vertex(v);
    }
    for (u, v) in t.edges() {
        g.add_edge(index[&u], index[&v]).expect("leaf ids are distinct");
    }
    g
}

/// Absorbs unary nodes and children sharing their parent's tag until none remain.
pub fn absorb(t: &Cotree) -> Cotree {
    match t {
        Cotree::Leaf(_) => t.clone(),
        Cotree::Node(tag, cs) => {
            let mut kids = Vec::new();
            for c in cs {
                match absorb(c) {
                    Cotree::Node(ct, gs) if ct == *tag => kids.extend(gs),
                    other => kids.push(other),
                }
            }
            if kids.len() == 1 {
                kids.pop().expect("one child")
            } else {
                Cotree::Node(*tag, kids)
            }
        }
    }
}

/// Cotree of the subgraph induced on `keep`, computed by pruning then absorbing.
pub fn induced_cotree(t: &Cotree, keep: &BTreeSet<usize>) -> Result<Cotree, GraphError> {
    t.prune(keep).map(|p| absorb(&p)).ok_or(GraphError::EmptySubset)
}

/// Cotree of the subgraph induced on `within`; children ordered by least leaf.
pub fn cotree_within<L: Clone>(g: &UGraph<L>, within: &FixedBitSet) -> Result<Cotree, GraphError> {
    let n = within.count_ones(..);
    if n == 0 {
        return Err(GraphError::EmptySubset);
    }
    if n == 1 {
        return Ok(Cotree::Leaf(within.minimum().expect("non-empty")));
    }
    let comps = g.components(within);
    let (tag, parts) = if comps.len() > 1 {
        (Tag::Union, comps)
    } else {
        let co = g.co_components(within);
        if co.len() > 1 {
            (Tag::Join, co)
        } else {
            let w = find_p4(g, within).expect("connected and co-connected graph contains an induced P4");
            return Err(GraphError::NotACograph(w));
        }
    };
    let kids = parts
        .iter()
        .map(|p| cotree_within(g, &bitset_of(g.n(), p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cotree::Node(tag, kids))
}

pub fn cotree_of<L: Clone>(g: &UGraph<L>) -> Result<Cotree, GraphError> {
    cotree_within(g, &g.all_vertices())
}

pub fn is_cograph<L: Clone>(g: &UGraph<L>) -> bool {
    !g.is_empty() && cotree_of(g).is_ok()
}

/// Leaf sets under the cotree nodes, in preorder.
pub fn strong_modules<L: Clone>(g: &UGraph<L>) -> Result<Vec<BTreeSet<usize>>, GraphError> {
    let t = cotree_of(g)?;
    let flat = FlatCotree::new(&t, g.n());
    Ok((0..flat.len()).map(|i| flat.leaves_under(i).ones().collect()).collect())
}

/// Array form of a cotree with parent links and leaf sets, for constant-time scope queries.
#[derive(Clone, Debug)]
pub struct FlatCotree {
    parent: Vec<Option<usize>>,
    tag: Vec<Option<Tag>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    leaf_node: Vec<usize>,
    under: Vec<FixedBitSet>,
}

impl FlatCotree {
    /// `n` bounds the leaf ids.
    pub fn new(t: &Cotree, n: usize) -> FlatCotree {
        let mut f = FlatCotree {
            parent: Vec::new(),
            tag: Vec::new(),
            children: Vec::new(),
            depth: Vec::new(),
            leaf_node: vec![usize::MAX; n],
            under: Vec::new(),
        };
        f.add(t, None, 0, n);
        f
    }

    fn add(&mut self, t: &Cotree, parent: Option<usize>, depth: usize, n: usize) -> usize {
        let id = self.parent.len();
        self.parent.push(parent);
        self.tag.push(t.tag());
        self.children.push(Vec::new());
        self.depth.push(depth);
        self.under.push(FixedBitSet::with_capacity(n));
        match t {
            Cotree::Leaf(v) => {
                self.leaf_node[*v] = id;
                self.under[id].insert(*v);
            }
            Cotree::Node(_, cs) => {
                for c in cs {
                    let k = self.add(c, Some(id), depth + 1, n);
                    self.children[id].push(k);
                    let sub = self.under[k].clone();
                    self.under[id].union_with(&sub);
                }
            }
        }
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn tag(&self, node: usize) -> Option<Tag> {
        self.tag[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn leaf_node(&self, v: usize) -> usize {
        self.leaf_node[v]
    }

    pub fn leaves_under(&self, node: usize) -> &FixedBitSet {
        &self.under[node]
    }

    /// Lowest common ancestor of two leaves and its tag.
    pub fn meet(&self, v: usize, w: usize) -> Result<(usize, Tag), GraphError> {
        let get = |x: usize| match self.leaf_node.get(x) {
            Some(&k) if k != usize::MAX => Ok(k),
            _ => Err(GraphError::UnknownVertex(x)),
        };
        let (mut a, mut b) = (get(v)?, get(w)?);
        if a == b {
            return Err(GraphError::UnknownVertex(w));
        }
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("deeper node has a parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("deeper node has a parent");
        }
        while a != b {
            a = self.parent[a].expect("common ancestor exists");
            b = self.parent[b].expect("common ancestor exists");
        }
        Ok((a, self.tag[a].expect("meet of distinct leaves is internal")))
    }
}

/// Directed graph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DGraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl DGraph {
    pub fn new(n: usize) -> DGraph {
        DGraph { n, arcs: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= self.n {
            return Err(GraphError::UnknownVertex(v));
        }
        self.arcs.insert((u, v));
        Ok(())
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((u, 0)..(u + 1, 0)).map(|&(_, v)| v)
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |&&(_, w)| w == v).map(|&(u, _)| u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(v: usize) -> Cotree {
        Cotree::Leaf(v)
    }
    fn un(cs: Vec<Cotree>) -> Cotree {
        Cotree::Node(Tag::Union, cs)
    }
    fn jo(cs: Vec<Cotree>) -> Cotree {
        Cotree::Node(Tag::Join, cs)
    }

    // vertices a..g as 0..6
    fn left_tree() -> Cotree {
        un(vec![
            jo(vec![leaf(0), leaf(1)]),
            leaf(2),
            jo(vec![leaf(3), leaf(4), un(vec![leaf(5), leaf(6)])]),
        ])
    }

    fn right_tree() -> Cotree {
        un(vec![
            jo(vec![leaf(0), leaf(1)]),
            un(vec![leaf(2)]),
            jo(vec![leaf(3), jo(vec![leaf(4), un(vec![leaf(5), leaf(6)])])]),
        ])
    }

    fn graph_from(n: usize, edges: &[(usize, usize)]) -> UGraph<()> {
        let mut g = UGraph::new();
        (0..n).for_each(|_| {
            g.add_vertex(());
        });
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn union_and_join() {
        let a = UGraph::singleton('a');
        let b = UGraph::singleton('b');
        assert_eq!(a.union(&b).edge_count(), 0);
        assert_eq!(a.join(&b).edge_count(), 1);
        assert_eq!(a.join(&b).labels(), &['a', 'b']);
    }

    #[test]
    fn p4_is_not_a_cograph() {
        let g = graph_from(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(!is_cograph(&g));
        match cotree_of(&g) {
            Err(GraphError::NotACograph(w)) => {
                let (h, _) = g.induced(&w).unwrap();
                assert_eq!(h.edge_count(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_graphs_are_cographs() {
        for mask in 0..8u32 {
            let all = [(0, 1), (0, 2), (1, 2)];
            let edges: Vec<_> = (0..3).filter(|i| mask & (1 << i) != 0).map(|i| all[i]).collect();
            assert!(is_cograph(&graph_from(3, &edges)));
        }
    }

    #[test]
    fn example_trees_share_a_cograph() {
        let expected: BTreeSet<(usize, usize)> =
            [(0, 1), (3, 4), (3, 5), (4, 5), (3, 6), (4, 6)].into_iter().collect();
        assert_eq!(left_tree().edges(), expected);
        assert_eq!(right_tree().edges(), expected);
        assert!(left_tree().is_cotree());
        assert!(!right_tree().is_cotree());
        assert_eq!(absorb(&right_tree()), left_tree());
        assert_eq!(absorb(&left_tree()), left_tree());
    }

    #[test]
    fn cotree_recovers_example() {
        let g = cograph_of(&left_tree());
        let t = cotree_of(&g).unwrap();
        let fp = |v: usize| v.to_string();
        assert_eq!(t.fingerprint(&fp), left_tree().fingerprint(&fp));
    }

    #[test]
    fn induced_example_on_four_leftmost_leaves() {
        let keep: BTreeSet<usize> = [0, 1, 2, 3].into_iter().collect();
        let pruned = left_tree().prune(&keep).unwrap();
        assert_eq!(pruned, un(vec![jo(vec![leaf(0), leaf(1)]), leaf(2), jo(vec![leaf(3)])]));
        let absorbed = induced_cotree(&left_tree(), &keep).unwrap();
        assert_eq!(absorbed, un(vec![jo(vec![leaf(0), leaf(1)]), leaf(2), leaf(3)]));
        assert_eq!(induced_cotree(&left_tree(), &BTreeSet::new()), Err(GraphError::EmptySubset));
    }

    #[test]
    fn meets_follow_edges() {
        let g = cograph_of(&left_tree());
        let t = cotree_of(&g).unwrap();
        let flat = FlatCotree::new(&t, g.n());
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u != v {
                    let (_, tag) = flat.meet(u, v).unwrap();
                    assert_eq!(tag == Tag::Join, g.has_edge(u, v));
                }
            }
        }
        assert!(flat.meet(0, 0).is_err());
    }

    #[test]
    fn strong_modules_are_modules() {
        let g = cograph_of(&left_tree());
        let mods = strong_modules(&g).unwrap();
        assert_eq!(mods[0].len(), 7);
        for m in &mods {
            let s = bitset_of(g.n(), &m.iter().copied().collect::<Vec<_>>());
            assert!(g.is_module(&s));
        }
    }

    #[test]
    fn colour_check_rejects_adjacent_pair() {
        let mut g = graph_from(2, &[(0, 1)]);
        g.set_colour(0, Some(0));
        g.set_colour(1, Some(0));
        assert_eq!(g.check_colours(), Err(GraphError::AdjacentColour(0, 1)));
    }

    #[test]
    fn directed_graph_basics() {
        let mut d = DGraph::new(3);
        d.add_arc(0, 2).unwrap();
        d.add_arc(1, 2).unwrap();
        assert_eq!(d.successors(0).collect::<Vec<_>>(), vec![2]);
        assert_eq!(d.predecessors(2).collect::<Vec<_>>(), vec![0, 1]);
        assert!(d.add_arc(0, 3).is_err());
    }
}
