//! The homogeneous (label-free) proof format.
//!
//! ```text
//! KIND monadic                 # or prop
//! FORMULA all x. (~p(x) \/ p(x))   # or MODAL <modal formula>; needed to lift labels back
//! TARGET 3
//! dual 1 2
//! bind 0 1
//! bind 0 2
//! SOURCE 3
//! ...
//! MAP
//! 0 0
//! ```
//!
//! Graph lines are `edge U V`, `dual U V` and (monadic only) `bind BINDER LITERAL`,
//! over vertices `0..n`.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use combproof::graphs::UGraph;
use combproof::homogeneous::{DualizingGraph, HomogeneousCp, Mograph};
use combproof::syntax::{modal_to_fo, parse_formula, parse_modal, Formula, ModalFormula};

#[derive(Clone, Debug, PartialEq)]
pub enum HomTarget {
    Formula(Formula),
    Modal(ModalFormula),
}

#[derive(Clone, Debug, PartialEq)]
pub enum HomProof {
    Prop(HomogeneousCp<DualizingGraph>),
    Monadic(HomogeneousCp<Mograph>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomDocument {
    pub formula: Option<HomTarget>,
    pub proof: HomProof,
}

#[derive(Default)]
struct Lists {
    n: usize,
    edges: Vec<(usize, usize)>,
    dualities: Vec<(usize, usize)>,
    bindings: Vec<(usize, usize)>,
}

impl Lists {
    fn prop(&self) -> Result<DualizingGraph> {
        if !self.bindings.is_empty() {
            bail!("binding arcs in a propositional graph");
        }
        Ok(DualizingGraph::from_lists(self.n, &self.edges, &self.dualities)?)
    }

    fn monadic(&self) -> Result<Mograph> {
        Ok(Mograph::from_lists(self.n, &self.edges, &self.dualities, &self.bindings)?)
    }
}

fn write_graph(out: &mut String, edges: &UGraph<()>, dualities: &UGraph<()>, bindings: &[(usize, usize)]) {
    for (a, b) in edges.edges() {
        writeln!(out, "edge {a} {b}").unwrap();
    }
    for (a, b) in dualities.edges() {
        writeln!(out, "dual {a} {b}").unwrap();
    }
    for (a, b) in bindings {
        writeln!(out, "bind {a} {b}").unwrap();
    }
}

impl HomDocument {
    /// The first-order formula labels are lifted from.
    pub fn fo_formula(&self) -> Option<Formula> {
        match &self.formula {
            Some(HomTarget::Formula(f)) => Some(f.clone()),
            Some(HomTarget::Modal(m)) => Some(modal_to_fo(m)),
            None => None,
        }
    }

    pub fn parse(src: &str) -> Result<HomDocument> {
        let mut kind: Option<bool> = None;
        let mut formula = None;
        let (mut target, mut source) = (None::<Lists>, None::<Lists>);
        let mut map: Vec<(usize, usize)> = Vec::new();
        #[derive(PartialEq)]
        enum At {
            Head,
            Target,
            Source,
            Map,
        }
        let mut at = At::Head;
        for (no, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ctx = || format!("line {}: `{}`", no + 1, raw.trim());
            let words: Vec<&str> = line.split_whitespace().collect();
            let num = |w: &str| w.parse::<usize>().with_context(ctx);
            match words.as_slice() {
                ["KIND", "prop"] => kind = Some(false),
                ["KIND", "monadic"] => kind = Some(true),
                ["FORMULA", ..] => {
                    formula = Some(HomTarget::Formula(parse_formula(line["FORMULA".len()..].trim()).with_context(ctx)?))
                }
                ["MODAL", ..] => formula = Some(HomTarget::Modal(parse_modal(line["MODAL".len()..].trim()).with_context(ctx)?)),
                ["TARGET", n] => {
                    at = At::Target;
                    target = Some(Lists { n: num(n)?, ..Lists::default() });
                }
                ["SOURCE", n] => {
                    at = At::Source;
                    source = Some(Lists { n: num(n)?, ..Lists::default() });
                }
                ["MAP"] => at = At::Map,
                [a, b] if at == At::Map => map.push((num(a)?, num(b)?)),
                [kw @ ("edge" | "dual" | "bind"), a, b] if at == At::Target || at == At::Source => {
                    let lists = if at == At::Target { target.as_mut() } else { source.as_mut() }.expect("section opened");
                    let pair = (num(a)?, num(b)?);
                    match *kw {
                        "edge" => lists.edges.push(pair),
                        "dual" => lists.dualities.push(pair),
                        _ => lists.bindings.push(pair),
                    }
                }
                _ => bail!("{}: unexpected line", ctx()),
            }
        }
        let (Some(t), Some(s)) = (target, source) else {
            bail!("missing TARGET or SOURCE section");
        };
        let mut m = vec![usize::MAX; s.n];
        for (v, w) in map {
            if v >= s.n || w >= t.n {
                bail!("map entry {v} {w} out of range");
            }
            m[v] = w;
        }
        if let Some(v) = m.iter().position(|&w| w == usize::MAX) {
            bail!("source vertex {v} has no image");
        }
        let proof = match kind {
            Some(false) => HomProof::Prop(HomogeneousCp {
                source: s.prop().context("source")?,
                target: t.prop().context("target")?,
                map: m,
            }),
            Some(true) => HomProof::Monadic(HomogeneousCp {
                source: s.monadic().context("source")?,
                target: t.monadic().context("target")?,
                map: m,
            }),
            None => bail!("missing KIND line"),
        };
        Ok(HomDocument { formula, proof })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let kind = match self.proof {
            HomProof::Prop(_) => "prop",
            HomProof::Monadic(_) => "monadic",
        };
        writeln!(out, "KIND {kind}").unwrap();
        match &self.formula {
            Some(HomTarget::Formula(f)) => writeln!(out, "FORMULA {f}").unwrap(),
            Some(HomTarget::Modal(m)) => writeln!(out, "MODAL {m}").unwrap(),
            None => {}
        }
        let map = match &self.proof {
            HomProof::Prop(h) => {
                writeln!(out, "TARGET {}", h.target.n()).unwrap();
                write_graph(&mut out, h.target.edges(), h.target.dualities(), &[]);
                writeln!(out, "SOURCE {}", h.source.n()).unwrap();
                write_graph(&mut out, h.source.edges(), h.source.dualities(), &[]);
                &h.map
            }
            HomProof::Monadic(h) => {
                writeln!(out, "TARGET {}", h.target.n()).unwrap();
                let arcs: Vec<_> = h.target.bindings().arcs().collect();
                write_graph(&mut out, h.target.edges(), h.target.dualities(), &arcs);
                writeln!(out, "SOURCE {}", h.source.n()).unwrap();
                let arcs: Vec<_> = h.source.bindings().arcs().collect();
                write_graph(&mut out, h.source.edges(), h.source.dualities(), &arcs);
                &h.map
            }
        };
        out.push_str("MAP\n");
        for (v, w) in map.iter().enumerate() {
            writeln!(out, "{v} {w}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monadic_round_trip() {
        let src = "\
KIND monadic
FORMULA all x. (~p(x) \\/ p(x))
TARGET 3
dual 1 2
bind 0 1
bind 0 2
SOURCE 3
dual 1 2
bind 0 1
bind 0 2
MAP
0 0
1 1
2 2
";
        let d = HomDocument::parse(src).unwrap();
        assert!(matches!(d.proof, HomProof::Monadic(_)));
        assert_eq!(HomDocument::parse(&d.render()).unwrap(), d);
    }

    #[test]
    fn prop_rejects_bindings() {
        let src = "KIND prop\nTARGET 2\ndual 0 1\nbind 0 1\nSOURCE 2\ndual 0 1\nMAP\n0 0\n1 1\n";
        assert!(format!("{:#}", HomDocument::parse(src).unwrap_err()).contains("binding arcs"));
    }

    #[test]
    fn partial_map() {
        let src = "KIND prop\nTARGET 2\ndual 0 1\nSOURCE 2\ndual 0 1\nMAP\n0 0\n";
        assert!(HomDocument::parse(src).is_err());
    }
}
