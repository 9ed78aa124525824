//! Command-line driver. [`run`] parses arguments, loads a graph file or a
//! built-in `example:NAME`, runs one command and returns the exit code:
//! 0 success, 1 validation failure, 2 parse or usage error, 3 failed
//! precondition (property W, the exchange test, or the search bound).

mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::builtins;
use crate::format::{kgraph_dot, parse_graph, print_kgraph, print_qgraph, qgraph_dot, GraphFile};
use crate::kgraph::{KGraph, Skeleton};
use crate::lattice::Degree;
use crate::periodicity::{default_bound, periodicity_group, Equivalence};
use crate::transforms::{
    canonical_iso_check, eg1, induced_path_map_check, pullback, pushout, verify_pullback_periodic, verify_qgraph,
    PushoutError,
};

use report::{AnalysisDoc, QuotientCheckDoc, RoundtripDoc, ValidationDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pgraph", version, about = "Periodicity, pullbacks and pushouts of higher-rank graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a file describes a k-graph or a quotient graph.
    Validate { input: String },
    /// Compute the periodicity group and related data.
    Analyze {
        input: String,
        #[command(flatten)]
        search: Search,
    },
    /// Quotient a k-graph by its periodicity group.
    Pushout {
        input: String,
        #[command(flatten)]
        search: Search,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pull a quotient graph back to a k-graph.
    Pullback {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient, pull back, and check the canonical isomorphism.
    Roundtrip {
        input: String,
        #[command(flatten)]
        search: Search,
    },
    /// Write a Graphviz drawing.
    ExportDot {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a built-in example, or list them.
    Example { name: Option<String> },
}

#[derive(clap::Args, Debug)]
pub struct Search {
    /// Search bound, one entry per color or a single entry for all. Defaults
    /// to twice the vertex count times the widest color, at most 4.
    #[arg(long)]
    pub bound: Option<String>,
    /// Depth of the extra path-level cross-check, if any.
    #[arg(long)]
    pub depth: Option<u32>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.format == OutputFormat::Json;
    match &cli.command {
        Command::Validate { input } => validate(&load(input)?, json, out),
        Command::Analyze { input, search } => analyze(&load(input)?, search, json, out),
        Command::Pushout { input, search, out: path } => {
            let g = kgraph_of(load(input)?, "pushout")?;
            let bound = bound_for(search, &g)?;
            let report = periodicity_group(&g, &bound);
            let po = pushout(&g, &report).map_err(pushout_failure)?;
            emit(out, path.as_ref(), &print_qgraph(&po.qgraph))
        }
        Command::Pullback { input, out: path } => {
            let GraphFile::QGraph(gamma) = load(input)? else {
                return Err(Failure::new(EXIT_PRECONDITION, "pullback expects a quotient graph"));
            };
            let pb = pullback(&gamma).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
            emit(out, path.as_ref(), &print_kgraph(pb.graph.skeleton()))
        }
        Command::Roundtrip { input, search } => roundtrip(load(input)?, search, json, out),
        Command::ExportDot { input, out: path } => {
            let title = input.strip_prefix("example:").unwrap_or(input);
            let dot = match load(input)? {
                GraphFile::KGraph(s) => {
                    let g = s.validate().map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
                    kgraph_dot(g.skeleton(), title)
                }
                GraphFile::QGraph(gamma) => {
                    verify_qgraph(&gamma).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
                    qgraph_dot(&gamma, title)
                }
            };
            emit(out, path.as_ref(), &dot)
        }
        Command::Example { name: None } => {
            emit(out, None, &builtins::NAMES.iter().map(|n| format!("{n}\n")).collect::<String>())
        }
        Command::Example { name: Some(name) } => match builtin(name) {
            Some(GraphFile::KGraph(s)) => emit(out, None, &print_kgraph(&s)),
            Some(GraphFile::QGraph(gamma)) => emit(out, None, &print_qgraph(&gamma)),
            None => Err(unknown_example(name)),
        },
    }
}

fn builtin(name: &str) -> Option<GraphFile> {
    match name {
        "eg1" => Some(GraphFile::QGraph(eg1())),
        _ => builtins::kgraph(name).map(GraphFile::KGraph),
    }
}

fn unknown_example(name: &str) -> Failure {
    Failure::new(EXIT_PARSE, format!("unknown example `{name}`; known: {}", builtins::NAMES.join(", ")))
}

/// Reads `example:NAME` or a file path.
fn load(input: &str) -> Result<GraphFile, Failure> {
    if let Some(name) = input.strip_prefix("example:") {
        return builtin(name).ok_or_else(|| unknown_example(name));
    }
    let text = std::fs::read_to_string(input).map_err(|e| Failure::new(EXIT_PARSE, format!("{input}: {e}")))?;
    parse_graph(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{input}: {e}")))
}

fn kgraph_of(file: GraphFile, command: &str) -> Result<KGraph, Failure> {
    match file {
        GraphFile::KGraph(s) => s.validate().map_err(|e| Failure::new(EXIT_INVALID, e.to_string())),
        GraphFile::QGraph(_) => Err(Failure::new(EXIT_PRECONDITION, format!("{command} expects a k-graph"))),
    }
}

/// Largest default bound entry.
pub const DEFAULT_BOUND_CAP: u32 = 4;

fn bound_for(search: &Search, g: &KGraph) -> Result<Degree, Failure> {
    match &search.bound {
        Some(text) => parse_bound(text, g.rank()),
        None => Ok(default_bound(g, DEFAULT_BOUND_CAP)),
    }
}

/// `a,b,…` with one positive entry per color, or one entry for all colors.
fn parse_bound(text: &str, rank: usize) -> Result<Degree, Failure> {
    let entries: Vec<u32> = text
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::new(EXIT_PARSE, format!("bad bound `{text}`")))?;
    if entries.contains(&0) {
        return Err(Failure::new(EXIT_PARSE, "bound entries must be positive"));
    }
    match entries.len() {
        1 => Ok(Degree::uniform(rank, entries[0])),
        n if n == rank => Ok(Degree(entries)),
        n => Err(Failure::new(EXIT_PARSE, format!("bound has {n} entries but the graph has {rank} colors"))),
    }
}

fn pushout_failure(e: PushoutError) -> Failure {
    let code = match e {
        PushoutError::Invalid(_) => EXIT_INVALID,
        _ => EXIT_PRECONDITION,
    };
    Failure::new(code, e.to_string())
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Outcome {
    let io = |e: std::io::Error| Failure::new(EXIT_PARSE, e.to_string());
    match path {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn emit_doc<T: Serialize>(out: &mut dyn Write, json: bool, doc: &T, text: impl FnOnce() -> String) -> Outcome {
    let body = if json { serde_json::to_string_pretty(doc).expect("documents serialize") + "\n" } else { text() };
    emit(out, None, &body)
}

fn validate(file: &GraphFile, json: bool, out: &mut dyn Write) -> Outcome {
    let doc = match file {
        GraphFile::KGraph(s) => ValidationDoc::kgraph(s, validate_skeleton(s)),
        GraphFile::QGraph(gamma) => ValidationDoc::qgraph(gamma, verify_qgraph(gamma).map_err(|e| e.to_string())),
    };
    emit_doc(out, json, &doc, || doc.text())?;
    match &doc.error {
        Some(e) => Err(Failure::new(EXIT_INVALID, e.clone())),
        None => Ok(()),
    }
}

fn validate_skeleton(s: &Skeleton) -> Result<(), String> {
    s.clone().validate().map(|_| ()).map_err(|e| e.to_string())
}

fn analyze(file: &GraphFile, search: &Search, json: bool, out: &mut dyn Write) -> Outcome {
    let (g, quotient_check) = match file {
        GraphFile::KGraph(s) => (s.clone().validate().map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?, None),
        GraphFile::QGraph(gamma) => {
            let pb = pullback(gamma).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
            let bound = bound_for(search, &pb.graph)?;
            let check = if gamma.quotient().subgroup().is_trivial() {
                None
            } else {
                let c = verify_pullback_periodic(gamma, &bound)
                    .map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
                Some(QuotientCheckDoc::new(gamma, &c))
            };
            (pb.graph, check)
        }
    };
    let bound = bound_for(search, &g)?;
    let mut eq = Equivalence::new(&g);
    let report = crate::periodicity::periodicity_group_with(&mut eq, &bound);
    let cross_check = search.depth.map(|depth| {
        let quotient = crate::lattice::quotient_structure(&report.group);
        induced_path_map_check(&g, &quotient, &Degree::uniform(g.rank(), depth))
            .map_err(|f| format!("{} at degrees {} and {}", g.path_name(&f.path), f.n, f.n_prime))
    });
    let doc = AnalysisDoc::new(&g, &report, quotient_check, cross_check);
    emit_doc(out, json, &doc, || doc.text())
}

fn roundtrip(file: GraphFile, search: &Search, json: bool, out: &mut dyn Write) -> Outcome {
    let g = kgraph_of(file, "roundtrip")?;
    let bound = bound_for(search, &g)?;
    let report = periodicity_group(&g, &bound);
    let po = pushout(&g, &report).map_err(pushout_failure)?;
    let cert = canonical_iso_check(&po.graph, &po.qgraph);
    let doc = RoundtripDoc::new(&po, &cert);
    emit_doc(out, json, &doc, || doc.text())?;
    cert.map(|_| ()).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))
}
