//! DOT and condensed-text rendering of combinatorial proofs.

use std::fmt::Write as _;

use combproof::bifib::CombProof;
use combproof::fograph::Fograph;
use combproof::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Dot,
    Condensed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: Format,
    pub show_labels: bool,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn cluster(out: &mut String, name: &str, prefix: &str, g: &Fograph, opts: RenderOptions) {
    writeln!(out, "  subgraph cluster_{name} {{").unwrap();
    writeln!(out, "    label=\"{name}\";").unwrap();
    for v in 0..g.n() {
        let text = if opts.show_labels {
            format!("{}: {}", g.name(v), g.label(v))
        } else {
            g.name(v).to_string()
        };
        let colour = match g.graph().colour(v) {
            Some(c) => format!(", style=filled, fillcolor=\"/set312/{}\"", c % 12 + 1),
            None => String::new(),
        };
        let shape = if g.label(v).is_binder() { "box" } else { "ellipse" };
        writeln!(out, "    {prefix}{v} [label=\"{}\", shape={shape}{colour}];", escape(&text)).unwrap();
    }
    for (a, b) in g.graph().edges() {
        writeln!(out, "    {prefix}{a} -> {prefix}{b} [dir=none];").unwrap();
    }
    for (b, l) in g.binding_graph().arcs() {
        writeln!(out, "    {prefix}{b} -> {prefix}{l} [style=dashed, color=gray];").unwrap();
    }
    writeln!(out, "  }}").unwrap();
}

/// Two clusters (source, target), graph edges undirected, binding arcs dashed,
/// links as fill colours and the map as dotted arcs.
pub fn dot(cp: &CombProof, opts: RenderOptions) -> String {
    let mut out = String::from("digraph cp {\n  compound=true;\n");
    cluster(&mut out, "source", "s", &cp.source, opts);
    cluster(&mut out, "target", "t", &cp.target, opts);
    for (v, &w) in cp.map.iter().enumerate() {
        writeln!(out, "  s{v} -> t{w} [style=dotted, constraint=false];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Prints `f` and records the column of each graph vertex, in preorder.
fn layout(f: &Formula, out: &mut String, cols: &mut Vec<usize>) {
    fn operand(g: &Formula, parens: bool, out: &mut String, cols: &mut Vec<usize>) {
        if parens {
            out.push('(');
            layout(g, out, cols);
            out.push(')');
        } else {
            layout(g, out, cols);
        }
    }
    let prec = |g: &Formula| match g {
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    };
    match f {
        Formula::Atom(_) | Formula::One | Formula::Zero => {
            cols.push(out.chars().count());
            write!(out, "{f}").unwrap();
        }
        Formula::And(a, b) => {
            operand(a, prec(a) < 2 || prec(a) == 0, out, cols);
            out.push_str(" & ");
            operand(b, prec(b) < 3 || prec(b) == 0, out, cols);
        }
        Formula::Or(a, b) => {
            operand(a, prec(a) < 1 || prec(a) == 0, out, cols);
            out.push_str(" \\/ ");
            operand(b, prec(b) < 2 || prec(b) == 0, out, cols);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { "all " } else { "ex " });
            cols.push(out.chars().count());
            write!(out, "{x}. ").unwrap();
            layout(a, out, cols);
        }
    }
}

/// The source drawn over the formula: each column stacks the source vertices
/// mapped to the vertex written below it, `id:c` marking link colour `c`.
/// Source edges follow the formula. Falls back to a plain listing for graph targets.
pub fn condensed(cp: &CombProof, opts: RenderOptions) -> String {
    let mut out = String::new();
    let tag = |v: usize| {
        let mut s = cp.source.name(v).to_string();
        if let Some(c) = cp.source.graph().colour(v) {
            write!(s, ":{c}").unwrap();
        }
        if opts.show_labels {
            write!(s, "={}", cp.source.label(v)).unwrap();
        }
        s
    };
    let Some(f) = &cp.formula else {
        for (v, &w) in cp.map.iter().enumerate() {
            writeln!(out, "{} -> {}", tag(v), cp.target.name(w)).unwrap();
        }
        return with_edges(out, cp);
    };
    let f = if f.is_rectified() { f.clone() } else { f.rectify() };
    let mut text = String::new();
    let mut cols = Vec::new();
    layout(&f, &mut text, &mut cols);
    let mut stacks: Vec<Vec<String>> = vec![Vec::new(); cols.len()];
    for (v, &w) in cp.map.iter().enumerate() {
        stacks[w].push(tag(v));
    }
    let height = stacks.iter().map(Vec::len).max().unwrap_or(0);
    for row in (0..height).rev() {
        let mut line: Vec<char> = Vec::new();
        for (w, stack) in stacks.iter().enumerate() {
            if let Some(s) = stack.get(row) {
                let start = cols[w].max(line.len() + usize::from(!line.is_empty()));
                line.resize(start, ' ');
                line.extend(s.chars());
            }
        }
        writeln!(out, "{}", line.into_iter().collect::<String>().trim_end()).unwrap();
    }
    writeln!(out, "{text}").unwrap();
    with_edges(out, cp)
}

fn with_edges(mut out: String, cp: &CombProof) -> String {
    let edges: Vec<String> = cp
        .source
        .graph()
        .edges()
        .into_iter()
        .map(|(a, b)| format!("{}-{}", cp.source.name(a), cp.source.name(b)))
        .collect();
    writeln!(out, "edges: {}", edges.join(" ")).unwrap();
    out
}

pub fn render(cp: &CombProof, opts: RenderOptions) -> String {
    match opts.format {
        Format::Dot => dot(cp, opts),
        Format::Condensed => condensed(cp, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use combproof::syntax::parse_formula;

    #[test]
    fn layout_columns_follow_preorder() {
        let f = parse_formula("ex x. (~p(x) \\/ all y. p(y))").unwrap();
        let (mut text, mut cols) = (String::new(), Vec::new());
        layout(&f, &mut text, &mut cols);
        assert_eq!(text, f.to_string());
        let at: Vec<char> = cols.iter().map(|&c| text.chars().nth(c).unwrap()).collect();
        assert_eq!(at, vec!['x', '~', 'y', 'p']);
    }

    #[test]
    fn layout_matches_display() {
        for s in ["(p & q) \\/ r", "p & (q \\/ r)", "(all x. p(x)) & q", "p \\/ (q \\/ r)", "(p \\/ q) \\/ r"] {
            let f = parse_formula(s).unwrap();
            let (mut text, mut cols) = (String::new(), Vec::new());
            layout(&f, &mut text, &mut cols);
            assert_eq!(text, f.to_string());
            assert_eq!(cols.len(), combproof::fograph::graph_of(&f).n());
        }
    }
}
