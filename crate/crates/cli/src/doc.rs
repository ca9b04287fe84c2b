//! The CP document format.
//!
//! ```text
//! # comment
//! TARGET ex x. (~p(x) \/ all y. p(y))
//! VERTICES
//! a            # label lifted from the target through MAP
//! b lit ~p(x)
//! c bind x
//! EDGES
//! a b
//! LINKS
//! b e
//! MAP
//! a 0          # target vertex by preorder index or by path name (r, r0, r01, ...)
//! ```
//!
//! The target is either `TARGET <formula>`, `TARGET MODAL <modal formula>`, or
//! an explicit graph given by `TARGET VERTICES` and `TARGET EDGES` sections.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use combproof::bifib::{cut_formula, fograph_witness, CheckReport, CombProof, Condition};
use combproof::fograph::{graph_of, FoLabel, Fograph};
use combproof::graphs::UGraph;
use combproof::syntax::{modal_to_fo, parse_formula, parse_modal, Formula, ModalFormula};

#[derive(Clone, Debug, PartialEq)]
pub enum TargetSpec {
    Formula(Formula),
    Modal(ModalFormula),
    Graph {
        vertices: Vec<(String, FoLabel)>,
        edges: Vec<(String, String)>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CpDocument {
    pub target: TargetSpec,
    pub vertices: Vec<(String, Option<FoLabel>)>,
    pub edges: Vec<(String, String)>,
    pub links: Vec<Vec<String>>,
    pub map: Vec<(String, String)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Target,
    TargetVertices,
    TargetEdges,
    Vertices,
    Edges,
    Links,
    Map,
}

pub fn parse_label(words: &[&str]) -> Result<FoLabel> {
    match words {
        ["bind", x] => Ok(FoLabel::Binder(x.to_string())),
        ["lit", rest @ ..] if !rest.is_empty() => match parse_formula(&rest.join(" "))? {
            Formula::Atom(a) => Ok(FoLabel::Lit(a)),
            Formula::One => Ok(FoLabel::Const(true)),
            Formula::Zero => Ok(FoLabel::Const(false)),
            f => bail!("`{f}` is not a literal"),
        },
        _ => bail!("expected `bind VAR` or `lit ATOM`"),
    }
}

pub fn label_text(l: &FoLabel) -> String {
    match l {
        FoLabel::Binder(x) => format!("bind {x}"),
        other => format!("lit {other}"),
    }
}

fn pair(words: &[&str]) -> Result<(String, String)> {
    match words {
        [a, b] | [a, "->", b] | [a, "--", b] => Ok((a.to_string(), b.to_string())),
        _ => bail!("expected two ids"),
    }
}

impl CpDocument {
    pub fn parse(src: &str) -> Result<CpDocument> {
        let mut section = Section::Preamble;
        let mut target_text: Vec<String> = Vec::new();
        let mut modal = false;
        let mut tv = Vec::new();
        let mut te = Vec::new();
        let mut doc = CpDocument {
            target: TargetSpec::Formula(Formula::One),
            vertices: Vec::new(),
            edges: Vec::new(),
            links: Vec::new(),
            map: Vec::new(),
        };
        let mut seen_target = false;
        for (no, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let ctx = || format!("line {}: `{}`", no + 1, raw.trim());
            let header = match words.as_slice() {
                ["TARGET", "VERTICES"] => Some(Section::TargetVertices),
                ["TARGET", "EDGES"] => Some(Section::TargetEdges),
                ["TARGET", ..] => Some(Section::Target),
                ["VERTICES"] => Some(Section::Vertices),
                ["EDGES"] => Some(Section::Edges),
                ["LINKS"] => Some(Section::Links),
                ["MAP"] => Some(Section::Map),
                _ => None,
            };
            if let Some(s) = header {
                section = s;
                if matches!(s, Section::Target | Section::TargetVertices | Section::TargetEdges) {
                    seen_target = true;
                }
                if s == Section::Target {
                    let rest = line["TARGET".len()..].trim();
                    let rest = match rest.strip_prefix("MODAL") {
                        Some(r) if r.is_empty() || r.starts_with(char::is_whitespace) => {
                            modal = true;
                            r.trim()
                        }
                        _ => rest,
                    };
                    if !rest.is_empty() {
                        target_text.push(rest.to_string());
                    }
                }
                continue;
            }
            match section {
                Section::Preamble => bail!("{}: content before the first section", ctx()),
                Section::Target => target_text.push(line.to_string()),
                Section::TargetVertices => {
                    let label = parse_label(&words[1..]).with_context(ctx)?;
                    tv.push((words[0].to_string(), label));
                }
                Section::TargetEdges => te.push(pair(&words).with_context(ctx)?),
                Section::Vertices => {
                    let label = if words.len() > 1 {
                        Some(parse_label(&words[1..]).with_context(ctx)?)
                    } else {
                        None
                    };
                    doc.vertices.push((words[0].to_string(), label));
                }
                Section::Edges => doc.edges.push(pair(&words).with_context(ctx)?),
                Section::Links => {
                    if words.len() < 2 {
                        bail!("{}: a link needs at least two ids", ctx());
                    }
                    doc.links.push(words.iter().map(|w| w.to_string()).collect());
                }
                Section::Map => doc.map.push(pair(&words).with_context(ctx)?),
            }
        }
        if !seen_target {
            bail!("missing TARGET section");
        }
        doc.target = if !tv.is_empty() || !te.is_empty() {
            if !target_text.is_empty() {
                bail!("target given both as a formula and as a graph");
            }
            TargetSpec::Graph { vertices: tv, edges: te }
        } else {
            let text = target_text.join(" ");
            if modal {
                TargetSpec::Modal(parse_modal(&text).context("target modal formula")?)
            } else {
                TargetSpec::Formula(parse_formula(&text).context("target formula")?)
            }
        };
        Ok(doc)
    }

    /// The formula the target stands for, if any.
    pub fn formula(&self) -> Option<Formula> {
        match &self.target {
            TargetSpec::Formula(f) => Some(f.clone()),
            TargetSpec::Modal(m) => Some(modal_to_fo(m)),
            TargetSpec::Graph { .. } => None,
        }
    }

    fn target_graph(&self, cuts: &[Formula]) -> Result<Result<Fograph, CheckReport>> {
        if let Some(f) = self.formula() {
            return Ok(Ok(graph_of(&cut_formula(&f, cuts))));
        }
        if !cuts.is_empty() {
            bail!("cuts need a target formula");
        }
        let TargetSpec::Graph { vertices, edges } = &self.target else {
            unreachable!("formula targets handled above")
        };
        let ids = index(vertices.iter().map(|(id, _)| id.as_str()), "target")?;
        let mut g = UGraph::new();
        for (_, l) in vertices {
            g.add_vertex(l.clone());
        }
        for (a, b) in edges {
            g.add_edge(lookup(&ids, a, "target")?, lookup(&ids, b, "target")?)?;
        }
        let names = vertices.iter().map(|(id, _)| id.clone()).collect();
        Ok(Fograph::with_names(g, names).map_err(|e| {
            let mut r = CheckReport::default();
            r.fail(Condition::Target, fograph_witness(&e), format!("target is not a fograph: {e}"));
            r
        }))
    }

    /// Builds the proof. The outer error is a malformed document; the inner one
    /// a structural refutation (source or target not a fograph, bad links).
    pub fn to_cp(&self, cuts: &[Formula]) -> Result<Result<CombProof, CheckReport>> {
        let target = match self.target_graph(cuts)? {
            Ok(t) => t,
            Err(r) => return Ok(Err(r)),
        };
        let ids = index(self.vertices.iter().map(|(id, _)| id.as_str()), "source")?;
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (s, t) in &self.map {
            let v = lookup(&ids, s, "source")?;
            if map[v] != usize::MAX {
                bail!("source vertex `{s}` is mapped twice");
            }
            map[v] = target_ref(&target, t)?;
        }
        if let Some(v) = map.iter().position(|&w| w == usize::MAX) {
            bail!("source vertex `{}` has no image", self.vertices[v].0);
        }
        let mut g = UGraph::new();
        for (v, (_, l)) in self.vertices.iter().enumerate() {
            g.add_vertex(l.clone().unwrap_or_else(|| target.label(map[v]).clone()));
        }
        for (a, b) in &self.edges {
            g.add_edge(lookup(&ids, a, "source")?, lookup(&ids, b, "source")?)?;
        }
        for (c, class) in self.links.iter().enumerate() {
            for id in class {
                let v = lookup(&ids, id, "source")?;
                if g.colour(v).is_some() {
                    bail!("source vertex `{id}` is in two links");
                }
                g.set_colour(v, Some(c as u32));
            }
        }
        let names = self.vertices.iter().map(|(id, _)| id.clone()).collect();
        let source = match Fograph::with_names(g, names) {
            Ok(s) => s,
            Err(e) => {
                let mut r = CheckReport::default();
                r.fail(Condition::Structure, fograph_witness(&e), format!("source is not a fograph: {e}"));
                return Ok(Err(r));
            }
        };
        let formula = if cuts.is_empty() { self.formula() } else { None };
        Ok(Ok(CombProof {
            source,
            target,
            formula,
            map,
        }))
    }

    /// A document for `cp` with explicit labels, ids `v0, v1, ...` and target indices.
    pub fn from_cp(cp: &CombProof) -> CpDocument {
        let target = match &cp.formula {
            Some(f) => TargetSpec::Formula(f.clone()),
            None => TargetSpec::Graph {
                vertices: (0..cp.target.n()).map(|w| (format!("t{w}"), cp.target.label(w).clone())).collect(),
                edges: cp.target.graph().edges().into_iter().map(|(a, b)| (format!("t{a}"), format!("t{b}"))).collect(),
            },
        };
        let id = |v: usize| format!("v{v}");
        let graph_target = cp.formula.is_none();
        CpDocument {
            target,
            vertices: (0..cp.source.n()).map(|v| (id(v), Some(cp.source.label(v).clone()))).collect(),
            edges: cp.source.graph().edges().into_iter().map(|(a, b)| (id(a), id(b))).collect(),
            links: cp
                .source
                .graph()
                .colour_classes()
                .values()
                .map(|class| class.iter().map(|&v| id(v)).collect())
                .collect(),
            map: cp
                .map
                .iter()
                .enumerate()
                .map(|(v, &w)| (id(v), if graph_target { format!("t{w}") } else { w.to_string() }))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match &self.target {
            TargetSpec::Formula(f) => writeln!(out, "TARGET {f}").unwrap(),
            TargetSpec::Modal(m) => writeln!(out, "TARGET MODAL {m}").unwrap(),
            TargetSpec::Graph { vertices, edges } => {
                out.push_str("TARGET VERTICES\n");
                for (id, l) in vertices {
                    writeln!(out, "{id} {}", label_text(l)).unwrap();
                }
                out.push_str("TARGET EDGES\n");
                for (a, b) in edges {
                    writeln!(out, "{a} {b}").unwrap();
                }
            }
        }
        out.push_str("VERTICES\n");
        for (id, l) in &self.vertices {
            match l {
                Some(l) => writeln!(out, "{id} {}", label_text(l)).unwrap(),
                None => writeln!(out, "{id}").unwrap(),
            }
        }
        out.push_str("EDGES\n");
        for (a, b) in &self.edges {
            writeln!(out, "{a} {b}").unwrap();
        }
        out.push_str("LINKS\n");
        for class in &self.links {
            writeln!(out, "{}", class.join(" ")).unwrap();
        }
        out.push_str("MAP\n");
        for (a, b) in &self.map {
            writeln!(out, "{a} {b}").unwrap();
        }
        out
    }
}

fn index<'a>(ids: impl Iterator<Item = &'a str>, side: &str) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::new();
    for (i, id) in ids.enumerate() {
        if out.insert(id.to_string(), i).is_some() {
            bail!("duplicate {side} id `{id}`");
        }
    }
    Ok(out)
}

fn lookup(ids: &HashMap<String, usize>, id: &str, side: &str) -> Result<usize> {
    ids.get(id).copied().ok_or_else(|| anyhow!("unknown {side} id `{id}`"))
}

fn target_ref(t: &Fograph, r: &str) -> Result<usize> {
    if let Some(w) = t.index_of(r) {
        return Ok(w);
    }
    match r.parse::<usize>() {
        Ok(w) if w < t.n() => Ok(w),
        _ => bail!("unknown target vertex `{r}`"),
    }
}

/// Source names by index, for printing witnesses.
pub fn name_table(cp: &CombProof) -> BTreeMap<usize, String> {
    (0..cp.source.n()).map(|v| (v, cp.source.name(v).to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use combproof::bifib::verify_cp;

    const DRINKER: &str = "\
TARGET ex x. (~p(x) \\/ all y. p(y))
VERTICES
a   # x'
b   # ~p(x')
c   # x
d   # y
e   # p(y)
EDGES
a b
c d
c e
LINKS
b e
MAP
a 0
b 1
c 0
d 2
e 3
";

    #[test]
    fn drinker_document_checks() {
        let doc = CpDocument::parse(DRINKER).unwrap();
        let cp = doc.to_cp(&[]).unwrap().unwrap();
        assert_eq!(cp.source.n(), 5);
        assert!(verify_cp(&cp).accepted());
    }

    #[test]
    fn render_parses_back() {
        let doc = CpDocument::parse(DRINKER).unwrap();
        let cp = doc.to_cp(&[]).unwrap().unwrap();
        let again = CpDocument::parse(&CpDocument::from_cp(&cp).render()).unwrap();
        let cp2 = again.to_cp(&[]).unwrap().unwrap();
        assert_eq!(cp2.map, cp.map);
        assert_eq!(cp2.source.graph(), cp.source.graph());
    }

    #[test]
    fn path_names_address_target_vertices() {
        let doc = CpDocument::parse(&DRINKER.replace("d 2", "d r01")).unwrap();
        assert_eq!(doc.to_cp(&[]).unwrap().unwrap().map[3], 2);
    }

    #[test]
    fn malformed_documents() {
        for (bad, why) in [
            ("VERTICES\na\n", "missing TARGET"),
            ("TARGET p\nVERTICES\na\na\nMAP\na 0\n", "duplicate"),
            ("TARGET p\nVERTICES\na\nMAP\n", "no image"),
            ("TARGET p\nVERTICES\na\nMAP\na 5\n", "unknown target"),
            ("TARGET p\nVERTICES\na\nEDGES\na b\nMAP\na 0\n", "unknown source"),
            ("TARGET p &\n", "target formula"),
        ] {
            let err = CpDocument::parse(bad).and_then(|d| d.to_cp(&[]).map(|_| ()));
            let msg = format!("{:#}", err.unwrap_err());
            assert!(msg.contains(why), "{msg}");
        }
    }

    #[test]
    fn explicit_target_graph() {
        let src = "\
TARGET VERTICES
t0 lit ~p
t1 lit p
VERTICES
a
b
LINKS
a b
MAP
a t0
b t1
";
        let cp = CpDocument::parse(src).unwrap().to_cp(&[]).unwrap().unwrap();
        assert!(cp.formula.is_none());
        assert!(verify_cp(&cp).accepted());
        let round = CpDocument::parse(&CpDocument::from_cp(&cp).render()).unwrap();
        assert_eq!(round.to_cp(&[]).unwrap().unwrap().target.graph(), cp.target.graph());
    }

    #[test]
    fn non_cograph_source_is_a_refutation() {
        let src = "TARGET (p & q) \\/ (~p & ~q)\nVERTICES\na\nb\nc\nd\nEDGES\na b\nb c\nc d\nMAP\na 0\nb 1\nc 2\nd 3\n";
        let r = CpDocument::parse(src).unwrap().to_cp(&[]).unwrap().unwrap_err();
        assert!(r.has(Condition::Structure));
        assert_eq!(r.failures[0].witness.len(), 4);
    }
}
