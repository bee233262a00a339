//! Command-line front end.
//!
//! Every subcommand reads one program file and prints text, JSON or DOT.
//! Exit status: 0 success, 1 usage error, 2 program error, 3 resource guard.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::algebra::{classify, Algebra, CausalValue, Justification};
use crate::cg::{self, CausalGraphView, DEFAULT_MAX_ATOMS_ENUM};
use crate::error::Error;
use crate::program::{parse_program, validate, Atom, LabelledProgram};
use crate::wfs::{self, QLiteral};
use crate::wnp::{self, ProvenanceValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PROGRAM: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ecj", version, about = "Causal well-founded models with algebraic justifications")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Largest number of addends a value may reach
    #[arg(long, global = true, default_value_t = Algebra::default().max_addends)]
    max_addends: usize,

    /// Largest number of undefined atoms for stable-model enumeration
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ATOMS_ENUM)]
    max_atoms_enum: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Least and greatest fixpoint value of every atom
    Wfm { file: PathBuf },
    /// Causal value of a literal with its classified addends
    Why {
        file: PathBuf,
        /// `p`, `not p` or `undef p`
        #[arg(short = 'l', long = "literal")]
        literal: String,
    },
    /// Why-not provenance of a literal
    Wnp {
        file: PathBuf,
        #[arg(short = 'l', long = "literal")]
        literal: String,
    },
    /// Causal-graph stable models
    CgModels { file: PathBuf },
    /// Causal graphs justifying an atom in each causal-graph stable model
    CgJust {
        file: PathBuf,
        #[arg(short = 'a', long = "atom")]
        atom: String,
        /// Also write the graphs in DOT format to this file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Validate a program
    Check { file: PathBuf },
}

/// One addend of a causal value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddendRecord {
    pub term_text: String,
    pub vertices: Vec<String>,
    /// Edges of the transitive reduction.
    pub edges: Vec<(String, String)>,
    pub causes: Vec<String>,
    pub enablers: Vec<String>,
    pub inhibitors: Vec<String>,
    pub enabled: bool,
}

impl AddendRecord {
    pub fn of(g: &Justification) -> Self {
        let class = classify(g);
        let names = |s: std::collections::BTreeSet<crate::algebra::Label>| {
            s.into_iter().map(|l| l.to_string()).collect()
        };
        AddendRecord {
            term_text: g.to_string(),
            vertices: g.vertices().iter().map(|v| v.to_string()).collect(),
            edges: g
                .reduction_edges()
                .iter()
                .map(|(u, v)| (u.to_string(), v.to_string()))
                .collect(),
            causes: names(class.causes),
            enablers: names(class.enablers),
            inhibitors: names(class.inhibitors),
            enabled: class.enabled,
        }
    }
}

/// Result of `why`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub literal: String,
    pub value: String,
    pub addends: Vec<AddendRecord>,
}

impl OutputRecord {
    pub fn new(literal: &QLiteral, v: &CausalValue) -> Self {
        OutputRecord {
            literal: literal.to_string(),
            value: v.to_string(),
            addends: v.addends().iter().map(AddendRecord::of).collect(),
        }
    }
}

#[derive(Serialize)]
struct WfmRecord {
    atoms: Vec<WfmRow>,
}

#[derive(Serialize)]
struct WfmRow {
    atom: String,
    lfp: String,
    gfp: String,
}

#[derive(Serialize)]
struct WnpRecord {
    literal: String,
    value: String,
    terms: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ModelsRecord {
    models: Vec<std::collections::BTreeMap<String, String>>,
}

#[derive(Serialize)]
struct GraphRecord {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

#[derive(Serialize)]
struct JustRecord {
    atom: String,
    models: Vec<Vec<GraphRecord>>,
}

#[derive(Serialize)]
struct CheckRecord {
    diagnostics: Vec<crate::program::Diagnostic>,
}

enum Failure {
    Usage(String),
    Engine(Error),
    Program(String),
    /// Validation report and number of diagnostics.
    Invalid(String, usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

/// Runs the command line `args` (program name first) against stdout and
/// stderr and returns the exit status.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Invalid(text, count)) => {
            let _ = out.write_all(text.as_bytes());
            let _ = writeln!(err, "error: {count} diagnostic(s)");
            EXIT_PROGRAM
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Program(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PROGRAM
        }
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Resource(_) => EXIT_RESOURCE,
                _ => EXIT_PROGRAM,
            }
        }
    }
}

fn load(path: &Path) -> Result<LabelledProgram, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Program(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_program(&text)?)
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("records serialize");
    s.push('\n');
    s
}

fn no_dot(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Dot {
        return Err(Failure::Usage("`--format dot` applies to cg-just only".into()));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let alg = Algebra {
        max_addends: cli.max_addends,
    };
    match &cli.command {
        Command::Wfm { file } => {
            no_dot(cli)?;
            let p = load(file)?;
            let w = wfs::causal_wfm_with(&alg, &p)?;
            let rows: Vec<WfmRow> = w
                .atoms
                .iter()
                .map(|a| WfmRow {
                    atom: a.to_string(),
                    lfp: w.lfp.get(a).to_string(),
                    gfp: w.gfp.get(a).to_string(),
                })
                .collect();
            Ok(match cli.format {
                Format::Json => json(&WfmRecord { atoms: rows }),
                _ => wfm_text(&rows),
            })
        }
        Command::Why { file, literal } => {
            no_dot(cli)?;
            let lit = QLiteral::parse(literal).map_err(|e| Failure::Usage(e.to_string()))?;
            let p = load(file)?;
            let w = wfs::causal_wfm_with(&alg, &p)?;
            let record = OutputRecord::new(&lit, &wfs::query_with(&alg, &w, &lit)?);
            Ok(match cli.format {
                Format::Json => json(&record),
                _ => why_text(&record),
            })
        }
        Command::Wnp { file, literal } => {
            no_dot(cli)?;
            let lit = QLiteral::parse(literal).map_err(|e| Failure::Usage(e.to_string()))?;
            let p = load(file)?;
            let v = wnp::why_with(&alg, &p, &lit)?;
            let record = WnpRecord {
                literal: lit.to_string(),
                value: v.to_string(),
                terms: prov_terms(&v),
            };
            Ok(match cli.format {
                Format::Json => json(&record),
                _ => {
                    let mut s = format!("{} = {}\n", record.literal, record.value);
                    for t in v.terms() {
                        let tag = if wnp::classify_hypothetical(t) {
                            "hypothetical"
                        } else {
                            "actual"
                        };
                        let _ = writeln!(s, "  {t}    [{tag}]");
                    }
                    s
                }
            })
        }
        Command::CgModels { file } => {
            no_dot(cli)?;
            let p = load(file)?;
            let models = cg::cg_stable_models_with(&alg, &p, cli.max_atoms_enum)?;
            let record = ModelsRecord {
                models: models
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|(a, v)| (a.to_string(), v.value().to_string()))
                            .collect()
                    })
                    .collect(),
            };
            Ok(match cli.format {
                Format::Json => json(&record),
                _ => {
                    let mut s = String::new();
                    for (k, m) in record.models.iter().enumerate() {
                        let _ = writeln!(s, "model {}", k + 1);
                        for (a, v) in m {
                            let _ = writeln!(s, "  {a} = {v}");
                        }
                    }
                    if record.models.is_empty() {
                        s.push_str("no causal-graph stable models\n");
                    }
                    s
                }
            })
        }
        Command::CgJust { file, atom, dot } => {
            let p = load(file)?;
            let a = Atom::new(atom);
            let models = cg::cg_stable_models_with(&alg, &p, cli.max_atoms_enum)?;
            let graphs: Vec<Vec<CausalGraphView>> = models
                .iter()
                .map(|m| cg::cg_justifications(m, &a))
                .collect::<crate::Result<_>>()?;
            let dot_text: String = graphs.iter().flatten().map(cg::to_dot).collect();
            if let Some(path) = dot {
                std::fs::write(path, &dot_text)
                    .map_err(|e| Failure::Program(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(match cli.format {
                Format::Dot => dot_text,
                Format::Json => json(&JustRecord {
                    atom: atom.clone(),
                    models: graphs
                        .iter()
                        .map(|gs| gs.iter().map(graph_record).collect())
                        .collect(),
                }),
                Format::Text => {
                    let mut s = String::new();
                    for (k, gs) in graphs.iter().enumerate() {
                        let _ = writeln!(s, "model {}: {} graph(s) for {atom}", k + 1, gs.len());
                        for g in gs {
                            let _ = writeln!(s, "  {}", graph_line(g));
                        }
                    }
                    s
                }
            })
        }
        Command::Check { file } => {
            no_dot(cli)?;
            let p = load(file)?;
            let diagnostics = validate(&p);
            let text = match cli.format {
                Format::Json => json(&CheckRecord {
                    diagnostics: diagnostics.clone(),
                }),
                _ => {
                    let mut s = String::new();
                    for d in &diagnostics {
                        let _ = writeln!(s, "{d}");
                    }
                    if diagnostics.is_empty() {
                        let _ = writeln!(s, "ok: {} rules, {} atoms", p.rules.len(), p.atoms().len());
                    }
                    s
                }
            };
            if diagnostics.is_empty() {
                Ok(text)
            } else {
                Err(Failure::Invalid(text, diagnostics.len()))
            }
        }
    }
}

fn wfm_text(rows: &[WfmRow]) -> String {
    let width = rows.iter().map(|r| r.atom.len()).max().unwrap_or(0).max(4);
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(s, "{:<width$}  lfp: {}", r.atom, r.lfp);
        let _ = writeln!(s, "{:<width$}  gfp: {}", "", r.gfp);
    }
    s
}

fn why_text(r: &OutputRecord) -> String {
    let mut s = format!("{} = {}\n", r.literal, r.value);
    for a in &r.addends {
        let mut tags = Vec::new();
        for (name, set) in [
            ("causes", &a.causes),
            ("enablers", &a.enablers),
            ("inhibitors", &a.inhibitors),
        ] {
            if !set.is_empty() {
                tags.push(format!("{name}: {}", set.join(", ")));
            }
        }
        let state = if a.enabled { "enabled" } else { "disabled" };
        let _ = writeln!(s, "  {}    [{}] {state}", a.term_text, tags.join("; "));
    }
    s
}

fn prov_terms(v: &ProvenanceValue) -> Vec<Vec<String>> {
    v.terms()
        .iter()
        .map(|t| t.literals().iter().map(|l| l.to_string()).collect())
        .collect()
}

fn graph_record(g: &CausalGraphView) -> GraphRecord {
    GraphRecord {
        vertices: g.vertices.iter().map(|v| v.to_string()).collect(),
        edges: g
            .reduction()
            .into_iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect(),
    }
}

fn graph_line(g: &CausalGraphView) -> String {
    let mut edges = g.reduction();
    edges.sort();
    let vertices: Vec<&str> = g.vertices.iter().map(|v| v.as_str()).collect();
    let edges: Vec<String> = edges.iter().map(|(u, v)| format!("{u} -> {v}")).collect();
    format!("{{{}}} [{}]", vertices.join(", "), edges.join(", "))
}
