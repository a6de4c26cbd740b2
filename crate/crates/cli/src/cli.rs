//! Subcommand dispatch. Exit codes: 0 success, 1 input error, 2 violated
//! precondition, 3 refused because the instance exceeds the exact-search
//! limit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use dynmon::cascade::{hull, proportional_thresholds, Rho};
use dynmon::constructors::{
    abw_construct, theorem1_construct, theorem1_params, tree_construct, v2_baseline, ConstructError, Method,
    Theorem1Options, DEFAULT_DELTA,
};
use dynmon::exact::{min_monopoly_exact, ExactError, ExactOptions, DEFAULT_LIMIT};
use dynmon::generators::{generate, Family, GeneratorSpec};
use dynmon::graph::{girth, parse_graph, Graph, Vertex};
use serde::Serialize;

use crate::bench::{run_bench, write_csv, BenchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Precondition(String),
    SizeLimit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::SizeLimit(_) => EXIT_SIZE_LIMIT,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Precondition(m) | CliError::SizeLimit(m) => m,
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::InvalidDelta(_) | ConstructError::InvalidEpsilon(_) => CliError::Input(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dynmon", version, about = "Dynamic monopolies for degree-proportional thresholds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance and write it as an edge list
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Print the girth of a graph
    Girth {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
    },
    /// Compute the activation hull of a seed set
    Hull {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long)]
        rho: Rho,
        #[arg(long = "seed-set")]
        seed_set: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a seed set is a monopoly
    Verify {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long)]
        rho: Rho,
        #[arg(long = "seed-set")]
        seed_set: PathBuf,
    },
    /// Exact minimum monopoly by exhaustive search
    Solve {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long)]
        rho: Rho,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        #[arg(long)]
        force: bool,
    },
    /// Build a monopoly with one of the constructions
    Construct {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        #[arg(long)]
        rho: Rho,
        #[arg(long)]
        method: Method,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long = "rng-seed", default_value_t = 0)]
        rng_seed: u64,
        #[arg(long = "max-rounds")]
        max_rounds: Option<usize>,
        #[arg(long = "max-restarts", default_value_t = 0)]
        max_restarts: usize,
        #[arg(long = "allow-low-girth")]
        allow_low_girth: bool,
    },
    /// Parameters derived from epsilon for the girth-5 construction
    Params {
        #[arg(long)]
        epsilon: f64,
        /// Also print the default round count for a graph of this order
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a benchmark sweep described by a JSON config
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Whitespace-separated vertex ids; `#` starts a comment that runs to the
/// end of the line.
pub fn parse_seed_set(text: &str, n: usize) -> Result<Vec<Vertex>, String> {
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let v: Vertex = tok.parse().map_err(|_| format!("line {}: bad vertex id {tok:?}", i + 1))?;
            if v >= n {
                return Err(format!("line {}: vertex {v} out of range (n = {n})", i + 1));
            }
            ids.push(v);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn read_seed_set(path: &Path, n: usize) -> Result<Vec<Vertex>, CliError> {
    parse_seed_set(&read_text(path)?, n).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| CliError::Input(e.to_string()))
}

fn write_line(out: &mut dyn Write, line: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Serialize)]
struct SolveRecord {
    h: usize,
    witness: Vec<Vertex>,
    nodes_explored: u64,
    runtime_ms: u64,
}

pub fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Gen { family, n, p, seed, output } => {
            let spec = GeneratorSpec { family, n, p, rng_seed: seed };
            let g = generate(&spec).map_err(|e| CliError::Input(e.to_string()))?;
            fs::write(&output, g.to_edge_list()).map_err(|e| CliError::Input(format!("{}: {e}", output.display())))?;
            write_line(out, format!("wrote {} ({} vertices, {} edges)", output.display(), g.n(), g.m()))
        }
        Command::Girth { graph } => {
            let g = read_graph(&graph)?;
            write_line(out, girth(&g))
        }
        Command::Hull { graph, rho, seed_set, json } => {
            let g = read_graph(&graph)?;
            let seed = read_seed_set(&seed_set, g.n())?;
            let phi = proportional_thresholds(&g, rho);
            let res = hull(&g, &phi, &seed).expect("seed validated");
            if json {
                print_json(out, &res)
            } else {
                write_line(out, format!("active: {} of {}", res.active_count(), g.n()))?;
                write_line(out, format!("generations: {}", res.generations()))?;
                write_line(out, format!("is_monopoly: {}", res.is_monopoly()))
            }
        }
        Command::Verify { graph, rho, seed_set } => {
            let g = read_graph(&graph)?;
            let seed = read_seed_set(&seed_set, g.n())?;
            let phi = proportional_thresholds(&g, rho);
            let res = hull(&g, &phi, &seed).expect("seed validated");
            if res.is_monopoly() {
                write_line(out, format!("monopoly: yes ({} seeds, {} vertices)", seed.len(), g.n()))
            } else {
                write_line(out, format!("monopoly: no ({} of {} active)", res.active_count(), g.n()))
            }
        }
        Command::Solve { graph, rho, limit, force } => {
            let g = read_graph(&graph)?;
            let phi = proportional_thresholds(&g, rho);
            let started = Instant::now();
            let res = min_monopoly_exact(&g, &phi, ExactOptions { limit, force }).map_err(|e| match e {
                ExactError::TooLarge { .. } => CliError::SizeLimit(e.to_string()),
                ExactError::ProfileMismatch { .. } => CliError::Input(e.to_string()),
            })?;
            print_json(
                out,
                &SolveRecord {
                    h: res.h,
                    witness: res.witness,
                    nodes_explored: res.nodes_explored,
                    runtime_ms: started.elapsed().as_millis() as u64,
                },
            )
        }
        Command::Construct {
            graph,
            rho,
            method,
            delta,
            epsilon,
            rng_seed,
            max_rounds,
            max_restarts,
            allow_low_girth,
        } => {
            let g = read_graph(&graph)?;
            let seed = match method {
                Method::Abw => abw_construct(&g, &proportional_thresholds(&g, rho), rng_seed)?,
                Method::V2 => v2_baseline(&g, rho)?,
                Method::Tree => tree_construct(&g, rho)?,
                Method::Girth5 => {
                    let delta = match (delta, epsilon) {
                        (Some(d), _) => d,
                        (None, Some(eps)) => theorem1_params(eps)?.delta,
                        (None, None) => DEFAULT_DELTA,
                    };
                    let opts = Theorem1Options { delta, epsilon, rng_seed, max_rounds, max_restarts, allow_low_girth };
                    theorem1_construct(&g, rho, opts)?
                }
            };
            print_json(out, &seed)
        }
        Command::Params { epsilon, n } => {
            let p = theorem1_params(epsilon)?;
            write_line(out, format!("epsilon = {}", p.epsilon))?;
            write_line(out, format!("delta = {:.9}", p.delta))?;
            write_line(out, format!("rho_max = {:.6e}", p.rho_max))?;
            write_line(out, format!("p2 = {:.6e}", p.p2))?;
            if let Some(n) = n {
                write_line(out, format!("rounds = {}", p.default_rounds(n)))?;
            }
            Ok(())
        }
        Command::Bench { config, output } => {
            let text = read_text(&config)?;
            let mut cfg: BenchConfig =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", config.display())))?;
            if let Some(dir) = config.parent() {
                cfg.rebase(dir);
            }
            let target = output
                .or_else(|| cfg.output.clone())
                .ok_or_else(|| CliError::Input("bench needs -o FILE or an \"output\" entry in the config".into()))?;
            let report = run_bench(&cfg).map_err(|e| CliError::Input(e.to_string()))?;
            let file = fs::File::create(&target).map_err(|e| CliError::Input(format!("{}: {e}", target.display())))?;
            write_csv(&report.rows, file).map_err(|e| CliError::Input(e.to_string()))?;
            write_line(out, format!("{} rows written to {}", report.rows.len(), target.display()))?;
            for s in &report.summary {
                write_line(
                    out,
                    format!(
                        "{:<7} rows={:<5} mean size/rho_n={:.4} max={:.4}",
                        s.method, s.rows, s.mean_ratio, s.max_ratio
                    ),
                )?;
            }
            for s in &report.skipped {
                write_line(out, format!("skipped {} rho={} {}: {}", s.family, s.rho, s.method, s.reason))?;
            }
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
