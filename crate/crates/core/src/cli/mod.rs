//! Command-line front end: `analyze`, `extract`, `experiment`, `verify`.
//!
//! Every command writes JSON-lines records in input order to `--out` or
//! stdout. Wall-clock times go to stderr only, so identical configurations
//! give byte-identical output. Exit codes: 0 everything passed, 1 a
//! property was falsified or a certificate is invalid, 2 usage or input
//! error (including certificates for the wrong host).

mod analyze;
mod experiment;
mod extract;
mod verify_cmd;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::generate::Family;
use crate::graph::{dimacs, graph6, Graph};
use crate::profile::ConstantsProfile;

pub use experiment::SUITES;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Directory searched for `<name>.json` profiles beyond the built-in ones.
pub const PROFILE_DIR_ENV: &str = "MINOR_TOOLKIT_PROFILE_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "minor-toolkit",
    version,
    about = "Graph minors, connectivity and coloring with checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-graph quantities, exact parameters within the gates, and bound checks.
    Analyze(CommonArgs),
    /// Dense, highly connected subgraphs and complete minors with certificates.
    Extract {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        extract: ExtractArgs,
    },
    /// Batch property suites.
    Experiment {
        #[command(flatten)]
        common: CommonArgs,
        /// Suite name; see the list printed for an unknown name.
        #[arg(long)]
        suite: String,
        /// Largest instance order used by the suite.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Re-check certificate files.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// graph6 file holding the host; otherwise the embedded host is used.
        #[arg(long)]
        host: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// graph6 (one graph per line) or DIMACS `.col` files.
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Generator spec, e.g. `gnp:40:0.3` or `planted:80:20:0.95:0.05`.
    #[arg(long)]
    generate: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value = "desk-small")]
    profile: String,
    /// Profile override `key=value`; repeatable.
    #[arg(long = "set")]
    sets: Vec<String>,
    /// Oracle gate `key=value`; repeatable.
    #[arg(long = "gates")]
    gates: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Re-check every certificate before writing it.
    #[arg(long)]
    verify: bool,
    /// Load the whole configuration from a JSON file instead.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ExtractArgs {
    /// dense | minor | mader | disjoint | chromatic
    #[arg(long, default_value = "dense")]
    mode: String,
    #[arg(long, default_value_t = 3)]
    t: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Number of pieces for `disjoint`.
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Piece size cap for `disjoint`.
    #[arg(long, default_value_t = 60)]
    cap: usize,
}

/// Size limits for the exponential oracles, plus the search budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gates {
    pub chromatic: usize,
    pub independence: usize,
    pub hall: usize,
    pub hadwiger: usize,
    pub connectivity: usize,
    pub budget: u64,
}

impl Default for Gates {
    fn default() -> Self {
        Self { chromatic: 40, independence: 40, hall: 16, hadwiger: 12, connectivity: 400, budget: 2_000_000 }
    }
}

impl Gates {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let bad = || format!("bad value `{value}` for gate `{key}`");
        let slot = match key {
            "chromatic" => &mut self.chromatic,
            "independence" => &mut self.independence,
            "hall" => &mut self.hall,
            "hadwiger" => &mut self.hadwiger,
            "connectivity" => &mut self.connectivity,
            "budget" => {
                self.budget = value.parse().map_err(|_| bad())?;
                return Ok(());
            }
            _ => {
                return Err(format!(
                    "unknown gate `{key}` (chromatic, independence, hall, hadwiger, connectivity, budget)"
                ))
            }
        };
        *slot = value.parse().map_err(|_| bad())?;
        Ok(())
    }
}

/// Everything a run depends on; a run is reproducible from this alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub generate: Option<String>,
    pub seed: u64,
    pub count: usize,
    pub profile: String,
    pub overrides: Vec<(String, String)>,
    pub gates: Gates,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub verify: bool,
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub r: Option<usize>,
    #[serde(default)]
    pub cap: Option<usize>,
    #[serde(default)]
    pub suite: Option<String>,
    #[serde(default)]
    pub max_n: Option<usize>,
    #[serde(default)]
    pub host: Option<PathBuf>,
}

/// A usage or input problem; the message is printed and the exit code is 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn split_kv(s: &str) -> Result<(String, String), UsageError> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| UsageError(format!("expected key=value, got `{s}`")))
}

impl ExperimentConfig {
    fn from_common(command: &str, c: &CommonArgs) -> Result<Self, UsageError> {
        if let Some(path) = &c.config {
            let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            let cfg: Self = serde_json::from_str(&text)?;
            if cfg.command != command {
                return Err(UsageError(format!("config is for `{}`, not `{command}`", cfg.command)));
            }
            return Ok(cfg);
        }
        let mut gates = Gates::default();
        for g in &c.gates {
            let (k, v) = split_kv(g)?;
            gates.set(&k, &v).map_err(UsageError)?;
        }
        Ok(Self {
            command: command.to_string(),
            inputs: c.inputs.clone(),
            generate: c.generate.clone(),
            seed: c.seed,
            count: c.count,
            profile: c.profile.clone(),
            overrides: c.sets.iter().map(|s| split_kv(s)).collect::<Result<_, _>>()?,
            gates,
            out: c.out.clone(),
            jobs: c.jobs.max(1),
            verify: c.verify,
            mode: None,
            t: None,
            k: None,
            r: None,
            cap: None,
            suite: None,
            max_n: None,
            host: None,
        })
    }

    pub fn resolve_profile(&self) -> Result<ConstantsProfile, UsageError> {
        let dir = std::env::var_os(PROFILE_DIR_ENV).map(PathBuf::from);
        let mut p = ConstantsProfile::named(&self.profile, dir.as_deref())?;
        for (k, v) in &self.overrides {
            p.set(k, v)?;
        }
        p.validate()?;
        Ok(p)
    }
}

/// One graph to process, or the reason it could not be read.
#[derive(Clone, Debug)]
pub(crate) struct Instance {
    pub source: String,
    pub graph: Result<Graph, String>,
}

pub(crate) fn load_instances(cfg: &ExperimentConfig) -> Result<Vec<Instance>, UsageError> {
    let mut out = Vec::new();
    for path in &cfg.inputs {
        let name = path.display().to_string();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                out.push(Instance { source: name, graph: Err(format!("cannot read: {e}")) });
                continue;
            }
        };
        let before = out.len();
        if is_dimacs(path) {
            out.push(Instance { source: name.clone(), graph: dimacs::parse(&text).map_err(|e| e.to_string()) });
        } else {
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let graph = graph6::decode_str(line).map_err(|e| format!("line {}: {e}", i + 1));
                out.push(Instance { source: format!("{name}:{}", i + 1), graph });
            }
        }
        if out.len() == before {
            eprintln!("warning: {name} contains no graphs");
        }
    }
    if let Some(spec) = &cfg.generate {
        let family: Family = spec.parse()?;
        for i in 0..cfg.count as u64 {
            let seed = cfg.seed.wrapping_add(i);
            let graph = family.generate(seed).map_err(|e| e.to_string());
            out.push(Instance { source: format!("{family}#{seed}"), graph });
        }
    }
    Ok(out)
}

fn is_dimacs(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("col" | "dimacs"))
}

/// Runs `f` over the items on `jobs` worker threads, keeping input order.
pub(crate) fn map_ordered<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}

pub(crate) fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>, UsageError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub(crate) fn write_records<T: Serialize>(out: &mut dyn Write, records: &[T]) -> Result<(), UsageError> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Error record for an instance that could not be read.
#[derive(Serialize)]
pub(crate) struct ErrorRecord<'a> {
    pub source: &'a str,
    pub error: &'a str,
}

pub(crate) fn error_value(source: &str, error: &str) -> serde_json::Value {
    serde_json::to_value(ErrorRecord { source, error }).expect("serializable")
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let started = Instant::now();
    let result = match cli.command {
        Command::Analyze(c) => ExperimentConfig::from_common("analyze", &c).and_then(|cfg| analyze::run(&cfg)),
        Command::Extract { common, extract } => {
            ExperimentConfig::from_common("extract", &common).and_then(|mut cfg| {
                if common.config.is_none() {
                    cfg.mode = Some(extract.mode);
                    cfg.t = Some(extract.t);
                    cfg.k = Some(extract.k);
                    cfg.r = Some(extract.r);
                    cfg.cap = Some(extract.cap);
                }
                extract::run(&cfg)
            })
        }
        Command::Experiment { common, suite, max_n } => {
            ExperimentConfig::from_common("experiment", &common).and_then(|mut cfg| {
                if common.config.is_none() {
                    cfg.suite = Some(suite);
                    cfg.max_n = max_n;
                }
                experiment::run(&cfg)
            })
        }
        Command::Verify { common, host } => ExperimentConfig::from_common("verify", &common).and_then(|mut cfg| {
            if common.config.is_none() {
                cfg.host = host;
            }
            verify_cmd::run(&cfg)
        }),
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}
