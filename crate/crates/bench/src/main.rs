use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bcd_core::estimators::DEFAULT_TAU;
use bcd_core::{abcd, betweenness_all, compute_rv, ebcd, load_edge_list, required_samples, DirectedGraph, EdgeListSource, VertexId};
use bcd_bench::experiment::{run_on_graph, ExperimentConfig, OutputFormat, VertexSelection};
use bcd_bench::gadget::{generate_gadget, GadgetKind};
use bcd_bench::report::{Row, SetReport};
use bcd_bench::scaling::timing_scaling_report;
use bcd_bench::HarnessError;
use clap::{Parser, Subcommand};
use serde_json::json;

/// Betweenness centrality of individual vertices in directed graphs.
#[derive(Debug, Parser)]
#[command(name = "bcd", version)]
struct Cli {
    /// Read edge weights from a third column.
    #[arg(long, global = true)]
    weighted: bool,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertices that can reach VERTEX.
    Rv {
        graph: PathBuf,
        vertex: u64,
        /// Also list the member labels.
        #[arg(long)]
        members: bool,
    },
    /// Exact betweenness of one vertex.
    Exact { graph: PathBuf, vertex: u64 },
    /// Sampled betweenness of one vertex.
    Approx {
        graph: PathBuf,
        vertex: u64,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact when the reach set has at most TAU members, sampled otherwise.
    Bcd {
        graph: PathBuf,
        /// Vertex labels; omit when using --random-set.
        vertices: Vec<u64>,
        #[arg(long, conflicts_with = "vertices")]
        random_set: Option<usize>,
        /// Allow out-degree-0 vertices in the random set.
        #[arg(long)]
        include_sinks: bool,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count of the approximate branch (defaults to TAU).
        #[arg(long)]
        samples: Option<usize>,
        /// Dependency bound K for --epsilon/--delta (defaults to n - 2).
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, requires = "delta")]
        epsilon: Option<f64>,
        #[arg(long, requires = "epsilon")]
        delta: Option<f64>,
        /// Compute exact scores for the error column.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact betweenness of every vertex.
    All { graph: PathBuf },
    /// Write a fan or broom gadget graph as an edge list.
    Gadget {
        #[arg(long)]
        kind: GadgetKind,
        #[arg(long)]
        n: usize,
    },
    /// Sample count needed for an additive error bound.
    Plan {
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        k: f64,
        #[arg(long)]
        rv: usize,
    },
    /// Exact-betweenness wall time on gadgets of increasing size.
    Scaling {
        #[arg(long)]
        kind: GadgetKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<DirectedGraph, HarnessError> {
    Ok(load_edge_list(&EdgeListSource::path(path).weighted(cli.weighted))?)
}

fn lookup(g: &DirectedGraph, label: u64) -> Result<VertexId, HarnessError> {
    g.vertex(label).ok_or(HarnessError::UnknownVertex(label))
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let text = match &cli.command {
        Command::Rv { graph, vertex, members } => {
            let g = load(&cli, graph)?;
            let rs = compute_rv(&g, lookup(&g, *vertex)?);
            let labels: Vec<u64> = rs.members().iter().map(|&v| g.label(v)).collect();
            match cli.format {
                OutputFormat::Json => {
                    let mut obj = json!({
                        "target": vertex,
                        "rv_size": rs.size(),
                        "rv_ratio": rs.ratio(&g),
                        "rv_seconds": rs.rv_seconds(),
                    });
                    if *members {
                        obj["members"] = json!(labels);
                    }
                    serde_json::to_string_pretty(&obj).expect("json") + "\n"
                }
                OutputFormat::Tsv => {
                    let mut s = format!(
                        "target\trv_size\trv_ratio\trv_seconds\n{vertex}\t{}\t{}\t{}\n",
                        rs.size(),
                        rs.ratio(&g),
                        rs.rv_seconds()
                    );
                    if *members {
                        s.push_str("# members\n");
                        for l in labels {
                            s.push_str(&format!("{l}\n"));
                        }
                    }
                    s
                }
            }
        }
        Command::Exact { graph, vertex } => {
            let g = load(&cli, graph)?;
            let est = ebcd(&g, lookup(&g, *vertex)?);
            render(&SetReport::from_rows(vec![Row::from_estimate(&g, &est, None)]), cli.format)
        }
        Command::Approx { graph, vertex, samples, seed } => {
            if *samples == 0 {
                return Err(HarnessError::Config("samples must be >= 1".into()));
            }
            let g = load(&cli, graph)?;
            let est = abcd(&g, lookup(&g, *vertex)?, *samples, *seed);
            render(&SetReport::from_rows(vec![Row::from_estimate(&g, &est, None)]), cli.format)
        }
        Command::Bcd { graph, vertices, random_set, include_sinks, tau, seed, samples, k, epsilon, delta, oracle } => {
            let selection = match random_set {
                Some(size) => VertexSelection::Random { size: *size, include_sinks: *include_sinks },
                None if vertices.is_empty() => {
                    return Err(HarnessError::Config("give vertex labels or --random-set".into()))
                }
                None => VertexSelection::Labels(vertices.clone()),
            };
            let cfg = ExperimentConfig {
                graph: graph.clone(),
                weighted: cli.weighted,
                vertices: selection,
                tau: *tau,
                samples: *samples,
                seed: *seed,
                k: *k,
                epsilon: *epsilon,
                delta: *delta,
                format: cli.format,
                oracle: *oracle,
            };
            cfg.validate()?;
            let g = load(&cli, graph)?;
            render(&run_on_graph(&g, &cfg)?, cli.format)
        }
        Command::All { graph } => {
            let g = load(&cli, graph)?;
            let bc = betweenness_all(&g);
            match cli.format {
                OutputFormat::Json => {
                    let rows: Vec<_> = g.vertices().map(|v| json!({"vertex": g.label(v), "bc": bc[v.index()]})).collect();
                    serde_json::to_string_pretty(&rows).expect("json") + "\n"
                }
                OutputFormat::Tsv => {
                    let mut s = String::from("vertex\tbc\n");
                    for v in g.vertices() {
                        s.push_str(&format!("{}\t{}\n", g.label(v), bc[v.index()]));
                    }
                    s
                }
            }
        }
        Command::Gadget { kind, n } => {
            let gadget = generate_gadget(*kind, *n)?;
            eprintln!("target {}", gadget.graph.label(gadget.target));
            let mut buf = Vec::new();
            gadget.graph.write_edge_list(&mut buf)?;
            String::from_utf8(buf).expect("edge list is utf-8")
        }
        Command::Plan { epsilon, delta, k, rv } => {
            let plan = required_samples(*epsilon, *delta, *k, *rv)?;
            match cli.format {
                OutputFormat::Json => serde_json::to_string_pretty(&plan).expect("json") + "\n",
                OutputFormat::Tsv => format!(
                    "epsilon\tdelta\tk\trv_size\trequired_samples\n{}\t{}\t{}\t{}\t{}\n",
                    plan.epsilon, plan.delta, plan.k, plan.rv_size, plan.required_samples
                ),
            }
        }
        Command::Scaling { kind, sizes, reps } => {
            let report = timing_scaling_report(*kind, sizes, *reps)?;
            match cli.format {
                OutputFormat::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
                OutputFormat::Tsv => report.to_tsv(),
            }
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn render(report: &SetReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Tsv => report.to_tsv(),
        OutputFormat::Json => report.to_json() + "\n",
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), HarnessError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
