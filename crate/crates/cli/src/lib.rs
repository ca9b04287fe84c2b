//! Command-line front end: file formats, rendering and the commands behind the
//! `combproof` binary.

pub mod doc;
pub mod homfile;
pub mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use combproof::bifib::{verify_cp, verify_cut_cp, CheckReport, CombProof};
use combproof::calculus::{compile_checked, parse_rproof, prop_tautology, ProofError};
use combproof::fograph::{graph_of, Quantifier};
use combproof::homogeneous::{
    from_homogeneous_monadic, from_homogeneous_prop, modal_mograph, to_homogeneous_monadic, to_homogeneous_prop,
    verify_homogeneous_cp_monadic, verify_homogeneous_cp_prop,
};
use combproof::syntax::{modal_to_fo, parse_formula, parse_modal, Formula};
use rayon::prelude::*;

use doc::{CpDocument, TargetSpec};
use homfile::{HomDocument, HomProof, HomTarget};
use render::{Format, RenderOptions};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Refuted = 1,
    Usage = 2,
}

#[derive(Parser, Debug)]
#[command(name = "combproof", version, about = "Build, check and render combinatorial proofs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Prop,
    Monadic,
    Modal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the graph of a formula
    Graph {
        formula: String,
        /// Read a modal formula and translate it first
        #[arg(long)]
        modal: bool,
    },
    /// Verify CP documents
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Cut formula appended to the target as `B & ~B` (repeatable)
        #[arg(long = "cut", value_name = "B")]
        cuts: Vec<String>,
        /// Files verified concurrently
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compile an R-proof (s-expression) into a CP document
    Compile {
        proof: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a CP document to a homogeneous file, or back with --inverse
    Homog {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Monadic)]
        mode: Mode,
        #[arg(long)]
        inverse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a CP document as DOT or condensed text
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        labels: bool,
    },
    /// Truth-table validity of a propositional formula
    Oracle { formula: String },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(output: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Runs a command, writing to `out` and `err`. Errors are usage errors.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Status {
    let r = match cli.command {
        Command::Graph { formula, modal } => cmd_graph(&formula, modal, out, err),
        Command::Check { files, cuts, jobs } => cmd_check(&files, &cuts, jobs, out),
        Command::Compile { proof, output } => cmd_compile(&proof, &output, out, err),
        Command::Homog {
            file,
            mode,
            inverse,
            output,
        } => cmd_homog(&file, mode, inverse, &output, out, err),
        Command::Render { file, format, labels } => cmd_render(
            &file,
            RenderOptions {
                format,
                show_labels: labels,
            },
            out,
            err,
        ),
        Command::Oracle { formula } => cmd_oracle(&formula, out),
    };
    match r {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            Status::Usage
        }
    }
}

pub fn cmd_graph(text: &str, modal: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let f = if modal {
        modal_to_fo(&parse_modal(text)?)
    } else {
        parse_formula(text)?
    };
    let f = if f.is_rectified() {
        f
    } else {
        let r = f.rectify();
        writeln!(err, "warning: formula is not rectified; using `{r}`")?;
        r
    };
    let g = graph_of(&f);
    writeln!(out, "formula: {f}")?;
    writeln!(out, "vertices: {}", g.n())?;
    for v in 0..g.n() {
        let kind = match g.binder_kind(v) {
            Ok(Quantifier::Existential) => "ex ",
            Ok(Quantifier::Universal) => "all ",
            Err(_) => "",
        };
        writeln!(out, "  {v} {} {kind}{}", g.name(v), g.label(v))?;
    }
    let edges = g.graph().edges();
    writeln!(out, "edges: {}", edges.len())?;
    for (a, b) in edges {
        writeln!(out, "  {a} -- {b}")?;
    }
    let arcs: Vec<_> = g.binding_graph().arcs().collect();
    writeln!(out, "binding arcs: {}", arcs.len())?;
    for (b, l) in arcs {
        writeln!(out, "  {b} -> {l}")?;
    }
    Ok(Status::Ok)
}

/// Loads and verifies one document.
pub fn check_document(src: &str, cuts: &[Formula]) -> Result<CheckReport> {
    let doc = CpDocument::parse(src)?;
    let cp = match doc.to_cp(cuts)? {
        Ok(cp) => cp,
        Err(r) => return Ok(r),
    };
    if cuts.is_empty() {
        return Ok(verify_cp(&cp));
    }
    let f = doc.formula().expect("cuts require a formula target");
    Ok(verify_cut_cp(&f, cuts, &cp))
}

fn verdict(name: &str, src: &str, cuts: &[Formula]) -> (String, Status) {
    match check_document(src, cuts) {
        Ok(r) if r.accepted() => (format!("{name}: accepted\n"), Status::Ok),
        Ok(r) => {
            let mut s = format!("{name}: rejected\n");
            for f in &r.failures {
                s.push_str(&format!("  {f}\n"));
            }
            (s, Status::Refuted)
        }
        Err(e) => (format!("{name}: error: {e:#}\n"), Status::Usage),
    }
}

pub fn cmd_check(files: &[PathBuf], cuts: &[String], jobs: usize, out: &mut dyn Write) -> Result<Status> {
    let cuts: Vec<Formula> = cuts
        .iter()
        .map(|c| parse_formula(c).with_context(|| format!("cut `{c}`")))
        .collect::<Result<_>>()?;
    let one = |p: &PathBuf| match read(p) {
        Ok(src) => verdict(&p.display().to_string(), &src, &cuts),
        Err(e) => (format!("{}: error: {e:#}\n", p.display()), Status::Usage),
    };
    let results: Vec<(String, Status)> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
        pool.install(|| files.par_iter().map(one).collect())
    } else {
        files.iter().map(one).collect()
    };
    let mut status = Status::Ok;
    for (text, s) in results {
        out.write_all(text.as_bytes())?;
        status = status.max(s);
    }
    Ok(status)
}

/// The document text for `cp`, parsed back and re-verified.
fn checked_document(doc: &CpDocument) -> Result<String> {
    let text = doc.render();
    let r = check_document(&text, &[])?;
    if !r.accepted() {
        bail!("emitted document does not verify:\n{r}");
    }
    Ok(text)
}

pub fn cmd_compile(path: &Path, output: &Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let p = parse_rproof(&read(path)?)?;
    let cp = match compile_checked(&p) {
        Ok(cp) => cp,
        Err(e @ (ProofError::IllFormed { .. } | ProofError::Unverified(_) | ProofError::Source(_))) => {
            writeln!(err, "{}: {e}", path.display())?;
            return Ok(Status::Refuted);
        }
        Err(e) => return Err(e.into()),
    };
    let text = checked_document(&CpDocument::from_cp(&cp))?;
    emit(output, &text, out)?;
    Ok(Status::Ok)
}

fn load_cp(path: &Path) -> Result<(CpDocument, std::result::Result<CombProof, CheckReport>)> {
    let doc = CpDocument::parse(&read(path)?)?;
    let cp = doc.to_cp(&[])?;
    Ok((doc, cp))
}

pub fn cmd_homog(
    path: &Path,
    mode: Mode,
    inverse: bool,
    output: &Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status> {
    let refuted = |err: &mut dyn Write, msg: String| -> Result<Status> {
        writeln!(err, "{}: {msg}", path.display())?;
        Ok(Status::Refuted)
    };
    if inverse {
        let h = HomDocument::parse(&read(path)?)?;
        let Some(f) = h.fo_formula() else {
            bail!("a FORMULA or MODAL line is needed to lift labels");
        };
        let cp = match (&h.proof, mode) {
            (HomProof::Prop(p), Mode::Prop) => from_homogeneous_prop(p, &f),
            (HomProof::Monadic(m), Mode::Monadic | Mode::Modal) => from_homogeneous_monadic(m, &f),
            _ => bail!("file KIND does not match --mode"),
        };
        let cp = match cp {
            Ok(cp) => cp,
            Err(e) => return refuted(err, e.to_string()),
        };
        let mut doc = CpDocument::from_cp(&cp);
        if let Some(HomTarget::Modal(m)) = &h.formula {
            doc.target = TargetSpec::Modal(m.clone());
        }
        emit(output, &checked_document(&doc)?, out)?;
        return Ok(Status::Ok);
    }
    let (doc, cp) = load_cp(path)?;
    let cp = match cp {
        Ok(cp) => cp,
        Err(r) => return refuted(err, r.to_string()),
    };
    let formula = match (&doc.target, mode) {
        (TargetSpec::Modal(m), Mode::Modal) => Some(HomTarget::Modal(m.clone())),
        (_, Mode::Modal) => bail!("--mode modal needs a `TARGET MODAL` document"),
        (TargetSpec::Formula(f), _) => Some(HomTarget::Formula(f.clone())),
        (TargetSpec::Modal(m), _) => Some(HomTarget::Modal(m.clone())),
        (TargetSpec::Graph { .. }, _) => None,
    };
    let proof = match mode {
        Mode::Prop => to_homogeneous_prop(&cp).map(HomProof::Prop),
        Mode::Monadic | Mode::Modal => to_homogeneous_monadic(&cp).map(HomProof::Monadic),
    };
    let mut proof = match proof {
        Ok(p) => p,
        Err(e) => return refuted(err, e.to_string()),
    };
    if let (Some(HomTarget::Modal(m)), HomProof::Monadic(h)) = (&formula, &mut proof) {
        match modal_mograph(m) {
            Ok(t) if t == h.target => h.target = t,
            Ok(_) => return refuted(err, "modal mograph differs from the mograph of the translation".into()),
            Err(e) => return refuted(err, e.to_string()),
        }
    }
    let text = HomDocument { formula, proof }.render();
    let back = HomDocument::parse(&text)?;
    let report = match &back.proof {
        HomProof::Prop(h) => verify_homogeneous_cp_prop(h),
        HomProof::Monadic(h) => verify_homogeneous_cp_monadic(h),
    };
    if !report.accepted() {
        bail!("emitted homogeneous proof does not verify:\n{report}");
    }
    emit(output, &text, out)?;
    Ok(Status::Ok)
}

pub fn cmd_render(path: &Path, opts: RenderOptions, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let (_, cp) = load_cp(path)?;
    match cp {
        Ok(cp) => {
            out.write_all(render::render(&cp, opts).as_bytes())?;
            Ok(Status::Ok)
        }
        Err(r) => {
            writeln!(err, "{}: {r}", path.display())?;
            Ok(Status::Refuted)
        }
    }
}

pub fn cmd_oracle(text: &str, out: &mut dyn Write) -> Result<Status> {
    let f = parse_formula(text)?;
    let r = prop_tautology(&f)?;
    if r.valid {
        writeln!(out, "valid")?;
        return Ok(Status::Ok);
    }
    let model: Vec<String> = r
        .countermodel
        .unwrap_or_default()
        .into_iter()
        .map(|(a, v)| format!("{a}={}", u8::from(v)))
        .collect();
    writeln!(out, "invalid: {}", model.join(" "))?;
    Ok(Status::Refuted)
}
