use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use graph_lines::corpus::{sweep, CorpusError, CorpusSpec, Source};
use graph_lines::discharge::{discharge, verify_certificate, CertificateCheck, DischargeCertificate};
use graph_lines::format::{parse_edge_list, parse_graph6, to_graph6, Connectivity};
use graph_lines::lines::{LineRecord, MetricGraph, Pair};
use graph_lines::structure::{all_c4_modules, find_hole, find_house, reduce_c4_modules, C4Module};
use graph_lines::verify::{run_check, CheckKind};
use graph_lines::{Graph, VertexSet};

/// Metric lines, {house, hole}-free structure and discharging certificates
/// for small graphs.
///
/// Exit status is 0 when every check passes, 1 when any check fails, and 2
/// on usage or input errors.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the line family of each input graph.
    Lines(Input),
    /// Report houses, holes, C4-modules and universal edges or 2-pairs.
    Classify(Input),
    /// Remove C4-module vertices until none is left.
    Reduce(Input),
    /// Run the weight transfer and verify its certificate.
    Discharge(Input),
    /// Run one property check and print a report per graph.
    Check {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        input: Input,
    },
    /// Run a check over an enumerated or streamed corpus.
    Sweep(SweepArgs),
}

#[derive(clap::Args)]
struct Input {
    /// Input file, or `-` for standard input.
    file: PathBuf,
    /// graph6 holds one graph per line; an edge list is one graph per file.
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dbe,
    Dbe2,
    Pipeline,
    Suite,
}

impl From<Kind> for CheckKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Dbe => CheckKind::Dbe,
            Kind::Dbe2 => CheckKind::Dbe2,
            Kind::Pipeline => CheckKind::Pipeline,
            Kind::Suite => CheckKind::Suite,
        }
    }
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Enumerate every connected graph on 2 to N vertices.
    #[arg(long = "n", value_name = "N", required_unless_present = "input", conflicts_with = "input")]
    n: Option<usize>,
    /// Read graph6 lines from a file (`-` for standard input) instead of enumerating.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Keep only {house, hole}-free graphs.
    #[arg(long)]
    hh_free: bool,
    /// Keep only graphs without a C4-module.
    #[arg(long)]
    no_c4_module: bool,
    #[arg(long, value_enum)]
    check: Kind,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Stop after this many graphs pass the filters.
    #[arg(long)]
    limit: Option<usize>,
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Parses every graph in the input, failing on the first bad one.
fn read_graphs(input: &Input, connectivity: Connectivity) -> Result<Vec<Graph>> {
    let text = read_text(&input.file)?;
    match input.format {
        Format::Edges => Ok(vec![parse_edge_list(&text, connectivity).context("edge list")?]),
        Format::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_graph6(l, connectivity).with_context(|| format!("line {}", i + 1)))
            .collect(),
    }
}

fn emit(value: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct LinesOutput {
    graph6: String,
    n: usize,
    line_count: usize,
    l1: usize,
    l2: usize,
    has_universal_line: bool,
    lines: Vec<LineRecord>,
}

#[derive(Serialize)]
struct Classification {
    graph6: String,
    hh_free: Option<bool>,
    house: Option<VertexSet>,
    hole: Option<VertexSet>,
    c4_modules: Vec<C4Module>,
    universal_edge: Option<Pair>,
    universal_2pair: Option<Pair>,
}

#[derive(Serialize)]
struct DischargeOutput {
    graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<DischargeCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<CertificateCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Returns whether every graph passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Lines(input) => {
            for g in read_graphs(&input, Connectivity::Required)? {
                let fam = MetricGraph::new(g.clone())?.all_lines();
                emit(&LinesOutput {
                    graph6: to_graph6(&g),
                    n: g.n(),
                    line_count: fam.len(),
                    l1: fam.l1().len(),
                    l2: fam.l2().len(),
                    has_universal_line: fam.has_universal_line(),
                    lines: fam.records(),
                })?;
            }
            Ok(true)
        }
        Command::Classify(input) => {
            for g in read_graphs(&input, Connectivity::Required)? {
                let mg = MetricGraph::new(g.clone())?;
                let house = find_house(&g);
                // Hole search is bounded; past the bound only a house can settle it.
                let hole_search = find_hole(&g);
                let hh_free = match &hole_search {
                    Ok(h) => Some(h.is_none() && house.is_none()),
                    Err(_) if house.is_some() => Some(false),
                    Err(_) => None,
                };
                let hole = hole_search.ok().flatten();
                emit(&Classification {
                    graph6: to_graph6(&g),
                    hh_free,
                    house,
                    hole,
                    c4_modules: all_c4_modules(&g),
                    universal_edge: mg.universal_edge(),
                    universal_2pair: mg.universal_two_pair(),
                })?;
            }
            Ok(true)
        }
        Command::Reduce(input) => {
            let mut all_ok = true;
            for g in read_graphs(&input, Connectivity::Required)? {
                match reduce_c4_modules(&g) {
                    Ok(trace) => emit(&trace)?,
                    Err(e) => {
                        all_ok = false;
                        emit(&serde_json::json!({ "graph6": to_graph6(&g), "error": e.to_string() }))?;
                    }
                }
            }
            Ok(all_ok)
        }
        Command::Discharge(input) => {
            let mut all_ok = true;
            for g in read_graphs(&input, Connectivity::Required)? {
                let mg = MetricGraph::new(g.clone())?;
                let out = match discharge(&mg) {
                    Ok(cert) => {
                        let check = verify_certificate(&mg, &cert);
                        all_ok &= cert.ok && check.ok;
                        DischargeOutput {
                            graph6: to_graph6(&g),
                            certificate: Some(cert),
                            verification: Some(check),
                            error: None,
                        }
                    }
                    Err(e) => {
                        all_ok = false;
                        DischargeOutput {
                            graph6: to_graph6(&g),
                            certificate: None,
                            verification: None,
                            error: Some(e.to_string()),
                        }
                    }
                };
                emit(&out)?;
            }
            Ok(all_ok)
        }
        Command::Check { kind, input } => {
            let mut all_ok = true;
            for g in read_graphs(&input, Connectivity::Any)? {
                let report = run_check(kind.into(), &g);
                all_ok &= report.passed();
                emit(&report)?;
            }
            Ok(all_ok)
        }
        Command::Sweep(args) => {
            let source = match (&args.input, args.n) {
                (Some(p), _) if p.as_os_str() == "-" => Source::Stdin,
                (Some(p), _) => Source::Path(p.clone()),
                (None, Some(n)) => Source::Builtin { min_n: 2, max_n: n },
                (None, None) => bail!("either --n or --input is required"),
            };
            let spec = CorpusSpec {
                source,
                hh_free: args.hh_free,
                no_c4_module: args.no_c4_module,
                limit: args.limit,
            };
            let jobs = args
                .jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
            let result = sweep(&spec, args.check.into(), jobs).map_err(|e| match e {
                CorpusError::Io(io) => anyhow::Error::new(io).context("reading corpus"),
                other => other.into(),
            })?;
            emit(&result)?;
            Ok(result.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
