//! Benchmark sweeps: every (instance, ρ, method, trial) cell runs a
//! constructor, re-verifies the seed and records it next to the known upper
//! bounds for the instance.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use dynmon::cascade::{proportional_thresholds, Rho};
use dynmon::constructors::{
    abw_construct, theorem1_construct, tree_construct, v2_baseline, ConstructError, Method, MonopolySeed,
    Theorem1Options, DEFAULT_DELTA,
};
use dynmon::exact::{abw_bound, min_monopoly_exact, ExactOptions};
use dynmon::generators::{generate, GeneratorError, GeneratorSpec};
use dynmon::graph::{parse_graph, ParseError};
use dynmon::{is_monopoly, Graph};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Instances up to this order are cross-checked against the exact oracle.
pub const ORACLE_CHECK_MAX_N: usize = 12;

const FACTOR_583: f64 = 3.0 + 2.0 * std::f64::consts::SQRT_2;
const FACTOR_492: f64 = 4.92;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot read instance {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("instance {path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("instance {0}: {1}")]
    Generator(String, GeneratorError),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("cell {0}: constructed seed is not a monopoly")]
    Invalid(String),
    #[error("cell {cell}: seed of size {size} beats the exact minimum {h}")]
    OracleMismatch { cell: String, size: usize, h: usize },
    #[error("cell {cell}: tree seed of size {size} exceeds floor(rho n) = {bound}")]
    TreeBound { cell: String, size: usize, bound: usize },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceSpec {
    Generated(GeneratorSpec),
    File { path: PathBuf },
}

/// A fixed ρ, or `1/Delta`: the reciprocal of the instance's maximum degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoSpec {
    Fixed(Rho),
    InverseMaxDegree,
}

impl FromStr for RhoSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1/Delta" | "1/delta" | "inverse_max_degree" => Ok(RhoSpec::InverseMaxDegree),
            other => other.parse().map(RhoSpec::Fixed).map_err(|e| e.to_string()),
        }
    }
}

impl fmt::Display for RhoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoSpec::Fixed(r) => write!(f, "{r}"),
            RhoSpec::InverseMaxDegree => f.write_str("1/Delta"),
        }
    }
}

impl<'de> Deserialize<'de> for RhoSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for RhoSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSpec {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<usize>,
    #[serde(default)]
    pub max_restarts: usize,
    #[serde(default)]
    pub allow_low_girth: bool,
}

impl MethodSpec {
    pub fn new(method: Method) -> Self {
        MethodSpec { method, delta: None, max_rounds: None, max_restarts: 0, allow_low_girth: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub instances: Vec<InstanceSpec>,
    pub rhos: Vec<RhoSpec>,
    pub methods: Vec<MethodSpec>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub rng_seed_base: u64,
    /// Only used for the `(2+ε)ρn` column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_trials() -> usize {
    1
}

impl BenchConfig {
    /// Resolves relative instance paths against `dir`.
    pub fn rebase(&mut self, dir: &Path) {
        for inst in &mut self.instances {
            if let InstanceSpec::File { path } = inst {
                if path.is_relative() {
                    *path = dir.join(&*path);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub rho: String,
    pub delta: Option<f64>,
    pub method: String,
    pub trial: usize,
    pub seed_size: usize,
    pub bound_abw: f64,
    pub bound_583: f64,
    pub bound_492: f64,
    pub bound_2eps: Option<f64>,
    pub bound_rho_n: f64,
    pub valid: bool,
    pub rounds: Option<usize>,
    pub fallback: Option<bool>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedCell {
    pub family: String,
    pub rho: String,
    pub method: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub method: String,
    pub rows: usize,
    pub mean_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub skipped: Vec<SkippedCell>,
    pub summary: Vec<MethodSummary>,
}

struct Instance {
    family: String,
    /// Size coordinate used in the cell hash: the spec's `n` for generated
    /// instances, the vertex count for files.
    key_n: usize,
    graph: Graph,
}

fn load_instance(spec: &InstanceSpec) -> Result<Instance, BenchError> {
    match spec {
        InstanceSpec::Generated(gs) => {
            let graph = generate(gs).map_err(|e| BenchError::Generator(gs.family.to_string(), e))?;
            Ok(Instance { family: gs.family.to_string(), key_n: gs.n, graph })
        }
        InstanceSpec::File { path } => {
            let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io { path: path.clone(), source })?;
            let graph = parse_graph(&text).map_err(|source| BenchError::Parse { path: path.clone(), source })?;
            Ok(Instance { family: format!("file:{}", path.display()), key_n: graph.n(), graph })
        }
    }
}

/// Stable per-cell RNG seed: the first eight bytes (little endian) of
/// SHA-256 over `base|family|n|rho|method|trial`.
pub fn cell_seed(base: u64, family: &str, n: usize, rho: &str, method: Method, trial: usize) -> u64 {
    let key = format!("{base}|{family}|{n}|{rho}|{method}|{trial}");
    let digest = Sha256::digest(key.as_bytes());
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

struct Cell<'a> {
    inst: &'a Instance,
    rho_spec: RhoSpec,
    method: &'a MethodSpec,
    trial: usize,
}

enum Outcome {
    Row(BenchRow),
    Skipped(SkippedCell),
}

fn run_cell(cell: &Cell<'_>, base: u64, epsilon: Option<f64>) -> Result<Outcome, BenchError> {
    let g = &cell.inst.graph;
    let method = cell.method.method;
    let skip = |rho: String, reason: String| {
        Ok(Outcome::Skipped(SkippedCell { family: cell.inst.family.clone(), rho, method: method.to_string(), reason }))
    };
    let rho = match cell.rho_spec {
        RhoSpec::Fixed(r) => r,
        RhoSpec::InverseMaxDegree => match g.max_degree() {
            0 => return skip(cell.rho_spec.to_string(), "graph has no edges, so 1/Delta is undefined".into()),
            delta => Rho::reciprocal(delta as u64).expect("Δ >= 1"),
        },
    };
    let rho_label = rho.to_string();
    let seed = cell_seed(base, &cell.inst.family, cell.inst.key_n, &rho_label, method, cell.trial);
    let phi = proportional_thresholds(g, rho);

    let started = Instant::now();
    let result: Result<MonopolySeed, ConstructError> = match method {
        Method::Abw => abw_construct(g, &phi, seed),
        Method::V2 => v2_baseline(g, rho),
        Method::Tree => tree_construct(g, rho),
        Method::Girth5 => theorem1_construct(
            g,
            rho,
            Theorem1Options {
                delta: cell.method.delta.unwrap_or(DEFAULT_DELTA),
                epsilon,
                rng_seed: seed,
                max_rounds: cell.method.max_rounds,
                max_restarts: cell.method.max_restarts,
                allow_low_girth: cell.method.allow_low_girth,
            },
        ),
    };
    let runtime_ms = started.elapsed().as_millis() as u64;
    let label = || format!("{}/{}/{}/{}", cell.inst.family, rho_label, method, cell.trial);
    let built = match result {
        Ok(s) => s,
        Err(ConstructError::VerificationFailed) => return Err(BenchError::Invalid(label())),
        Err(e) => return skip(rho_label, e.to_string()),
    };
    // independent re-check before the row is emitted
    let valid = built.verified && is_monopoly(g, &phi, &built.seed).expect("seed ids in range");
    if !valid {
        return Err(BenchError::Invalid(label()));
    }

    if method == Method::Tree && built.size > rho.floor_times(g.n()) {
        return Err(BenchError::TreeBound { cell: label(), size: built.size, bound: rho.floor_times(g.n()) });
    }
    if g.n() <= ORACLE_CHECK_MAX_N {
        let h = min_monopoly_exact(g, &phi, ExactOptions::default()).expect("n below the oracle limit").h;
        if built.size < h {
            return Err(BenchError::OracleMismatch { cell: label(), size: built.size, h });
        }
    }

    let rho_n = rho.to_f64() * g.n() as f64;
    Ok(Outcome::Row(BenchRow {
        family: cell.inst.family.clone(),
        n: g.n(),
        m: g.m(),
        rho: rho_label,
        delta: built.params.delta,
        method: method.to_string(),
        trial: cell.trial,
        seed_size: built.size,
        bound_abw: abw_bound(g, &phi).to_f64().unwrap_or(f64::NAN),
        bound_583: FACTOR_583 * rho_n,
        bound_492: FACTOR_492 * rho_n,
        bound_2eps: epsilon.map(|e| (2.0 + e) * rho_n),
        bound_rho_n: rho_n,
        valid,
        rounds: built.params.rounds,
        fallback: built.params.fallback,
        runtime_ms,
    }))
}

/// Runs every cell of the sweep. Cells execute in parallel; rows come back
/// in config order (instance, ρ, method, trial). Randomised methods run
/// `trials` times, deterministic ones once.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    if config.trials == 0 {
        return Err(BenchError::NoTrials);
    }
    let instances: Vec<Instance> = config.instances.iter().map(load_instance).collect::<Result<_, _>>()?;

    let mut cells = Vec::new();
    for inst in &instances {
        for &rho_spec in &config.rhos {
            for method in &config.methods {
                let trials = if method.method.is_randomized() { config.trials } else { 1 };
                for trial in 0..trials {
                    cells.push(Cell { inst, rho_spec, method, trial });
                }
            }
        }
    }

    let outcomes: Vec<Outcome> =
        cells.par_iter().map(|c| run_cell(c, config.rng_seed_base, config.epsilon)).collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Row(r) => rows.push(r),
            Outcome::Skipped(s) => skipped.push(s),
        }
    }
    let summary = summarize(&rows);
    Ok(BenchReport { rows, skipped, summary })
}

fn summarize(rows: &[BenchRow]) -> Vec<MethodSummary> {
    let mut by_method: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in rows {
        by_method.entry(&r.method).or_default().push(r.seed_size as f64 / r.bound_rho_n);
    }
    by_method
        .into_iter()
        .map(|(method, ratios)| MethodSummary {
            method: method.to_string(),
            rows: ratios.len(),
            mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
            max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
        .collect()
}

/// Writes the rows as CSV with a header line, even when there are no rows.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record([
        "family",
        "n",
        "m",
        "rho",
        "delta",
        "method",
        "trial",
        "seed_size",
        "bound_abw",
        "bound_583",
        "bound_492",
        "bound_2eps",
        "bound_rho_n",
        "valid",
        "rounds",
        "fallback",
        "runtime_ms",
    ])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
