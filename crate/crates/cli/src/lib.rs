//! `lapstate`: generate graph Laplacian states, test graphicality and decide
//! zero discord from the command line.
//!
//! Every command writes one JSON document to stdout and, unless `--quiet`,
//! a one-line summary to stderr. Exit status is 0 on success (verdict true
//! where there is one), 1 when a check-style verdict is false and 2 on any
//! input or validation error, in which case stdout carries
//! `{"error": {"kind": ..., "message": ...}}`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use laplacian_states::criteria::{zero_discord_structural, StructuralOptions};
use laplacian_states::density::{dominance_margins, from_graph, graphicality_defect, is_graphical};
use laplacian_states::io::{parse_density, parse_graph, to_canonical_json, to_dot, DensityDocument, GraphDocument};
use laplacian_states::oracle::{blocks_of_density, discord_estimate, is_commuting_normal_family};
use laplacian_states::states::{
    isotropic_graph, werner_graph, xstate_graph, IsotropicParams, WernerParams, XStateSpec,
};
use laplacian_states::{ClusteredGraph, DensityMatrix, Error, LaplacianKind};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lapstate", version, about = "Graph Laplacian quantum states and structural zero-discord checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Suppress the summary line on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the graph of a Werner, isotropic or X state.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Test whether a density matrix is a graph Laplacian state.
    CheckState { input: PathBuf },
    /// Build the density matrix of a graph.
    FromGraph {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Signless)]
        kind: Kind,
    },
    /// Structural zero-discord verdict for a clustered graph.
    DiscordStructure {
        input: PathBuf,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = Kind::Signless)]
        kind: Kind,
        #[arg(long, default_value_t = laplacian_states::tol::STRUCTURAL)]
        tol: f64,
        /// Stop at the first violated entry.
        #[arg(long)]
        fail_fast: bool,
    },
    /// Matrix-level commuting-normal-family verdict for a graph or density matrix.
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = Kind::Signless)]
        kind: Kind,
        #[arg(long, default_value_t = laplacian_states::tol::STRUCTURAL)]
        tol: f64,
        /// Also estimate the discord by a grid search over qubit bases (n = 2).
        #[arg(long)]
        estimate_discord: bool,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Write the graph as DOT text.
    ExportDot {
        input: PathBuf,
        #[command(flatten)]
        shape: ShapeArgs,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    Werner {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        x: f64,
    },
    Isotropic {
        #[arg(long)]
        d: usize,
        #[arg(long = "F", alias = "fidelity")]
        fidelity: f64,
    },
    Xstate {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ShapeArgs {
    /// Number of clusters and cluster size.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    clusters: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Laplacian,
    Signless,
}

impl From<Kind> for LaplacianKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Laplacian => LaplacianKind::Combinatorial,
            Kind::Signless => LaplacianKind::Signless,
        }
    }
}

/// Why a command stopped. `kind` is a stable machine-readable tag.
#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::ZeroWeight { .. } => "zero_weight",
            Error::ComplexLoop { .. } => "complex_loop",
            Error::NonFiniteWeight { .. } => "non_finite_weight",
            Error::ConflictingEdge { .. } => "conflicting_edge",
            Error::EmptyVertexSet => "empty_vertex_set",
            Error::NotSquare { .. } => "not_square",
            Error::NotHermitian { .. } => "not_hermitian",
            Error::NotPositiveSemidefinite { .. } => "not_positive_semidefinite",
            Error::TraceNotUnit { .. } => "trace_not_unit",
            Error::ZeroTrace => "zero_trace",
            Error::NotGraphical { .. } => "not_graphical",
            Error::ShapeMismatch { .. } => "shape_mismatch",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NotOrthonormal { .. } => "not_orthonormal",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotXState(_) => "not_xstate",
            Error::Format(_) => "malformed_json",
        };
        Failure { kind, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { kind: "usage", message: message.into() }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct RowDefect {
    row: usize,
    margin: f64,
}

#[derive(Serialize)]
struct GraphicalityReport {
    graphical: bool,
    order: usize,
    violations: Vec<RowDefect>,
}

#[derive(Serialize)]
struct OracleReport {
    verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<LaplacianKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discord_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<usize>,
}

/// What a successful command produced.
struct Output {
    body: String,
    summary: String,
    code: i32,
}

impl Output {
    fn json<T: Serialize>(value: &T, summary: String, code: i32) -> Self {
        let mut body = to_canonical_json(value);
        body.push('\n');
        Output { body, summary, code }
    }
}

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(stderr, "{e}");
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            return report_failure(usage(first.trim_start_matches("error: ")), stdout, stderr, true);
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            let _ = stdout.write_all(out.body.as_bytes());
            if !cli.quiet {
                let _ = writeln!(stderr, "{}", out.summary);
            }
            out.code
        }
        Err(f) => report_failure(f, stdout, stderr, cli.quiet),
    }
}

fn report_failure(f: Failure, stdout: &mut dyn Write, stderr: &mut dyn Write, quiet: bool) -> i32 {
    let report = ErrorReport { error: ErrorBody { kind: f.kind, message: &f.message } };
    let _ = writeln!(stdout, "{}", to_canonical_json(&report));
    if !quiet {
        let _ = writeln!(stderr, "error: {}", f.message);
    }
    EXIT_ERROR
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure { kind: "io", message: format!("{}: {e}", path.display()) })?;
    Ok(text)
}

/// `--clusters` wins; otherwise the document's own `shape` field.
fn resolve_shape(flag: &ShapeArgs, document: Option<(usize, usize)>) -> Result<(usize, usize), Failure> {
    match (flag.clusters.as_deref(), document) {
        (Some(&[m, n]), Some(doc)) if doc != (m, n) => Err(Failure {
            kind: "shape_mismatch",
            message: format!("--clusters {m} {n} disagrees with the document shape {} {}", doc.0, doc.1),
        }),
        (Some(&[m, n]), _) => Ok((m, n)),
        (Some(_), _) => Err(usage("--clusters takes exactly two values")),
        (None, Some(doc)) => Ok(doc),
        (None, None) => Err(usage("cluster shape unknown; pass --clusters M N")),
    }
}

fn read_graph(path: &Path) -> Result<(GraphDocument, laplacian_states::WeightedDigraph), Failure> {
    let doc = parse_graph(&read_input(path)?)?;
    let graph = doc.to_graph()?;
    Ok((doc, graph))
}

fn clustered(doc: &GraphDocument, graph: laplacian_states::WeightedDigraph, shape: &ShapeArgs) -> Result<ClusteredGraph, Failure> {
    let (m, n) = resolve_shape(shape, doc.shape())?;
    Ok(ClusteredGraph::new(graph, m, n)?)
}

fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Gen { family } => generate(family),
        Command::CheckState { input } => {
            let rho = parse_density(&read_input(&input)?)?.to_density()?;
            check_state(&rho)
        }
        Command::FromGraph { input, kind } => {
            let (_, graph) = read_graph(&input)?;
            let kind = LaplacianKind::from(kind);
            let rho = from_graph(&graph, kind)?;
            let summary = format!("{kind} state of order {}", rho.order());
            Ok(Output::json(&DensityDocument::from_matrix(rho.as_matrix()), summary, EXIT_OK))
        }
        Command::DiscordStructure { input, shape, kind, tol, fail_fast } => {
            let (doc, graph) = read_graph(&input)?;
            let cg = clustered(&doc, graph, &shape)?;
            let report = zero_discord_structural(&cg, kind.into(), StructuralOptions { tol, fail_fast })?;
            let summary = if report.verdict {
                "zero discord: blocks form a commuting normal family".to_string()
            } else {
                format!("nonzero discord: {} violated entries", report.failures.len())
            };
            let code = if report.verdict { EXIT_OK } else { EXIT_FALSE };
            Ok(Output::json(&report, summary, code))
        }
        Command::Oracle { input, shape, kind, tol, estimate_discord, grid } => {
            oracle(&read_input(&input)?, &shape, kind.into(), tol, estimate_discord.then_some(grid))
        }
        Command::ExportDot { input, shape } => {
            let (doc, graph) = read_graph(&input)?;
            let n = match (&shape.clusters, doc.shape()) {
                (None, None) => None,
                _ => Some(clustered(&doc, graph.clone(), &shape)?.cluster_size()),
            };
            let body = to_dot(&graph, n);
            Ok(Output { body, summary: format!("DOT for {} vertices", graph.order()), code: EXIT_OK })
        }
    }
}

fn generate(family: Family) -> Result<Output, Failure> {
    let (cg, name) = match family {
        Family::Werner { d, x } => (werner_graph(WernerParams::new(d, x)?)?, format!("Werner d={d} x={x}")),
        Family::Isotropic { d, fidelity } => {
            (isotropic_graph(IsotropicParams::new(d, fidelity)?)?, format!("isotropic d={d} F={fidelity}"))
        }
        Family::Xstate { spec } => {
            let text = read_input(&spec)?;
            let spec: XStateSpec = serde_json::from_str(&text).map_err(|e| Failure::from(Error::Format(e.to_string())))?;
            (xstate_graph(&spec)?, format!("X state {}x{}", spec.m, spec.n))
        }
    };
    let doc = GraphDocument::from_graph(cg.graph(), Some((cg.clusters(), cg.cluster_size())));
    let summary = format!("{name}: {} vertices, {} edge records", doc.vertices, doc.edges.len());
    Ok(Output::json(&doc, summary, EXIT_OK))
}

fn check_state(rho: &DensityMatrix) -> Result<Output, Failure> {
    let graphical = is_graphical(rho);
    let violations = dominance_margins(rho)
        .into_iter()
        .enumerate()
        .filter(|&(_, margin)| margin < -laplacian_states::tol::GRAPHICAL_MARGIN)
        .map(|(row, margin)| RowDefect { row, margin })
        .collect();
    let summary = match graphicality_defect(rho) {
        None => "graphical".to_string(),
        Some(e) => format!("not graphical: {e}"),
    };
    let report = GraphicalityReport { graphical, order: rho.order(), violations };
    Ok(Output::json(&report, summary, if graphical { EXIT_OK } else { EXIT_FALSE }))
}

fn oracle(
    text: &str,
    shape: &ShapeArgs,
    kind: LaplacianKind,
    tol: f64,
    grid: Option<usize>,
) -> Result<Output, Failure> {
    let probe: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::from(Error::Format(e.to_string())))?;
    let (rho, doc_shape, used_kind) = if probe.get("vertices").is_some() {
        let doc = parse_graph(text)?;
        (from_graph(&doc.to_graph()?, kind)?, doc.shape(), Some(kind))
    } else {
        (parse_density(text)?.to_density()?, None, None)
    };
    let (m, n) = resolve_shape(shape, doc_shape)?;
    let verdict = is_commuting_normal_family(&blocks_of_density(&rho, m, n)?, tol);
    let estimate = grid.map(|r| discord_estimate(&rho, m, n, r)).transpose()?;
    let mut summary = if verdict { "commuting normal family".to_string() } else { "not a commuting normal family".to_string() };
    if let Some(e) = estimate {
        summary.push_str(&format!(", discord estimate {e:.6e}"));
    }
    let report = OracleReport { verdict, kind: used_kind, discord_estimate: estimate, grid: grid.filter(|_| estimate.is_some()) };
    Ok(Output::json(&report, summary, if verdict { EXIT_OK } else { EXIT_FALSE }))
}
