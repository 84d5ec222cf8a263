use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use minleaf::enumerate::{enumerate_connected_cubic, universe_from_graph6, CanonicalGraph};
use minleaf::family::build_gm;
use minleaf::graph6::parse_graph6_str;
use minleaf::verify::{
    audit_universe, probe_conjecture, verify_theorem_bound, verify_universe, BoundKind, VerifyConfig,
};
use minleaf::{min_leaf_spanning_tree, Budget, Graph, SolveStatus};

/// Exit status when a report is incomplete because some solve ran out of budget.
const EXIT_INCOMPLETE: u8 = 2;

#[derive(Parser)]
#[command(name = "minleaf", version, about = "Minimum-leaf spanning trees of cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bound {
    Theorem,
    Conjecture,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph and print a witness file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
        /// Seconds before the exact search gives up.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// List connected cubic graphs of order N as graph6 lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Use a graph6 stream as the universe instead of generating it.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a leaf bound over all connected cubic graphs of the given orders.
    Verify {
        #[arg(long, value_enum)]
        bound: Bound,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Per-graph limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Use a graph6 stream as the universe (single order only).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Build level M of the extremal family: graph6 plus a JSON sidecar.
    Family {
        #[arg(long)]
        m: u32,
        /// graph6 goes here and the sidecar to the same path with `.json` appended.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit optimal trees of all connected cubic graphs of order N.
    Audit {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn seconds(s: Option<f64>) -> Result<Option<Duration>> {
    s.map(|s| Duration::try_from_secs_f64(s).context("invalid --time-limit"))
        .transpose()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn exit_for(complete: bool) -> ExitCode {
    if complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INCOMPLETE)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { file, format, time_limit } => {
            let text = read(&file)?;
            let g = match format {
                Format::Graph6 => {
                    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).context("empty graph6 file")?;
                    parse_graph6_str(line)?
                }
                Format::Edgelist => Graph::parse_edge_list(&text)?,
            };
            let budget = Budget {
                max_nodes: None,
                time_limit: seconds(time_limit)?,
            };
            let outcome = min_leaf_spanning_tree(&g, budget)?;
            print!("{}", outcome.to_witness_file());
            Ok(exit_for(outcome.status == SolveStatus::Exact))
        }
        Command::Enumerate { n, input, out } => {
            let graphs = match input {
                Some(path) => {
                    let external = universe_from_graph6(&read(&path)?, n)?;
                    eprintln!(
                        "read {} classes ({} rejected, {} duplicates)",
                        external.enumeration.len(),
                        external.rejected,
                        external.duplicates
                    );
                    let internal = enumerate_connected_cubic(n)?;
                    if internal.labels() != external.enumeration.labels() {
                        eprintln!(
                            "warning: external stream has {} classes, internal generation has {}",
                            external.enumeration.len(),
                            internal.len()
                        );
                    }
                    external.enumeration
                }
                None => {
                    let e = enumerate_connected_cubic(n)?;
                    if e.odd_order {
                        eprintln!("no cubic graph has odd order {n}");
                    }
                    e
                }
            };
            emit(out.as_deref(), &graphs.to_graph6_lines())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            bound,
            n,
            jobs,
            time_limit,
            input,
            out,
            timings,
        } => {
            let cfg = VerifyConfig {
                jobs,
                time_limit: seconds(time_limit)?,
                timings,
            };
            let kind = match bound {
                Bound::Theorem => BoundKind::Theorem,
                Bound::Conjecture => BoundKind::Conjecture,
            };
            let reports = match input {
                Some(path) => {
                    let [order] = n[..] else {
                        bail!("--in takes exactly one order");
                    };
                    let universe: Vec<CanonicalGraph> = universe_from_graph6(&read(&path)?, order)?.enumeration.graphs;
                    vec![verify_universe(kind, order, &universe, &cfg)?]
                }
                None => match kind {
                    BoundKind::Theorem => verify_theorem_bound(&n, &cfg)?,
                    BoundKind::Conjecture => probe_conjecture(&n, &cfg)?,
                },
            };
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.to_jsonl());
                let max = r.max_min_leaves.map_or("-".to_string(), |m| m.to_string());
                eprintln!(
                    "n={} universe={} solved={} max_min_leaves={} violations={} incomplete={}{}",
                    r.n,
                    r.universe_size,
                    r.solved,
                    max,
                    r.violations.len(),
                    r.incomplete.len(),
                    r.skipped.as_ref().map_or(String::new(), |s| format!(" skipped: {s}"))
                );
                for note in &r.notes {
                    eprintln!("  {note}");
                }
            }
            emit(out.as_deref(), &text)?;
            Ok(exit_for(reports.iter().all(|r| r.incomplete.is_empty())))
        }
        Command::Family { m, out } => {
            let level = build_gm(m)?;
            let graph6 = format!("{}\n", level.graph6()?);
            let sidecar = format!("{}\n", serde_json::to_string(&level.sidecar()?)?);
            match out {
                Some(path) => {
                    emit(Some(&path), &graph6)?;
                    let mut json = path.into_os_string();
                    json.push(".json");
                    emit(Some(Path::new(&json)), &sidecar)?;
                }
                None => print!("{graph6}{sidecar}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit { n, jobs, time_limit, out } => {
            let cfg = VerifyConfig {
                jobs,
                time_limit: seconds(time_limit)?,
                timings: false,
            };
            let report = audit_universe(n, &cfg)?;
            eprintln!(
                "n={} universe={} audited={} skipped={} flagged={} incomplete={}",
                report.n,
                report.universe_size,
                report.audited().count(),
                report.skipped_count(),
                report.flagged().count(),
                report.incomplete.len()
            );
            emit(out.as_deref(), &report.to_jsonl())?;
            Ok(exit_for(report.incomplete.is_empty()))
        }
    }
}
