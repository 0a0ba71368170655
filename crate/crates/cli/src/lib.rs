//! Command implementations for the `nilcone` binary.
//!
//! Every command renders into a `String` first so the binary can write it in
//! one piece; output never depends on thread scheduling.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcone::checks::{parse_check_list, run_suite, CheckContext, CheckKind, CheckReport, Verdict, DEFAULT_BUDGET};
use nilcone::combinatorics::{bipartitions, diagram, flag_shape, is_distinguished, Bipartition, Partition};
use nilcone::fiber::{
    codimension_bound, fiber_dimension_bound, fiber_polynomial_with_bound, orbit_dimension, FiberPolynomial,
};
use nilcone::{FiberCounter, PrimeSchedule};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_DIR_ENV: &str = "NILCONE_CACHE_DIR";
pub const CACHE_FILE: &str = "fiber-cache-v1.jsonl";

pub const ORBITS_SCHEMA: &str = "nilcone.orbits/1";
pub const FIBER_POLY_SCHEMA: &str = "nilcone.fiber-poly/1";
pub const CHECK_SCHEMA: &str = "nilcone.check/1";
pub const CLOSURE_SCHEMA: &str = "nilcone.closure-order/1";

#[derive(Debug, Parser)]
#[command(name = "nilcone", version, about = "Fiber census and paving checks for enhanced nilpotent orbit resolutions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Comma-separated sampling primes, in order [default: first 16 primes]
    #[arg(long, global = true)]
    pub primes: Option<String>,
    /// Fixed held-out prime; by default the prime after the last sample
    #[arg(long, global = true)]
    pub holdout: Option<u32>,
    /// Worker threads [default: all cores]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Memo cache file (JSON lines); overrides the cache directory variable
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Directory holding the memo cache
    #[arg(long, global = true, env = CACHE_DIR_ENV, hide_env_values = true)]
    pub cache_dir: Option<PathBuf>,
    /// Node budget for exhaustive searches
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Report wall-clock milliseconds (makes output run-dependent)
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One row per bipartition: diagram, flag shape, orbit dimension
    Orbits(OrbitsArgs),
    /// Point counts of one fiber and the interpolated polynomial
    FiberPoly(FiberPolyArgs),
    /// Run verification checks over all bipartitions up to n
    Check(CheckArgs),
    /// Hasse diagram of the closure order on bipartitions of n
    ClosureOrder(SizeArg),
}

#[derive(Debug, Args)]
pub struct SizeArg {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long, required_unless_present_any = ["mu", "nu"])]
    pub n: Option<usize>,
    /// Single bipartition: the first partition, e.g. 3,1,1
    #[arg(long, conflicts_with = "n")]
    pub mu: Option<String>,
    /// Single bipartition: the second partition, e.g. 3,2
    #[arg(long, conflicts_with = "n")]
    pub nu: Option<String>,
}

#[derive(Debug, Args)]
pub struct FiberPolyArgs {
    /// Resolved orbit, e.g. "mu=;nu=2"
    #[arg(long)]
    pub big: String,
    /// Orbit of the base point, e.g. "mu=;nu=1,1"
    #[arg(long)]
    pub small: String,
    /// flag: flag variety dimension; codim: half the orbit codimension;
    /// auto: the smaller of the two; or an explicit integer
    #[arg(long, default_value = "auto")]
    pub degree_bound: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated check names or "all"
    #[arg(long, default_value = "all")]
    pub checks: String,
}

/// Errors in the invocation itself, as opposed to failures of the mathematics.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(msg.into()).into())
}

pub struct Output {
    pub text: String,
    pub exit_code: u8,
}

pub fn run(cli: &Cli) -> anyhow::Result<Output> {
    let schedule = schedule(&cli.global)?;
    let counter = FiberCounter::new();
    let cache = cache_path(&cli.global);
    if let Some(path) = &cache {
        if path.exists() {
            counter.load_from_path(path).with_context(|| format!("loading cache {}", path.display()))?;
        }
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            return usage("--jobs must be at least 1");
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build()?;
    let ctx = CheckContext { counter, schedule, budget: cli.global.budget };
    let output = pool.install(|| match &cli.command {
        Command::Orbits(a) => cmd_orbits(&cli.global, a),
        Command::FiberPoly(a) => cmd_fiber_poly(&cli.global, &ctx.counter, &ctx.schedule, a),
        Command::Check(a) => cmd_check(&cli.global, &ctx, a),
        Command::ClosureOrder(a) => cmd_closure_order(&cli.global, &ctx.counter, a.n),
    })?;
    if let Some(path) = &cache {
        save_cache(&ctx.counter, path)?;
    }
    Ok(output)
}

fn schedule(g: &GlobalArgs) -> anyhow::Result<PrimeSchedule> {
    let primes = match &g.primes {
        Some(s) => PrimeSchedule::parse_primes(s).map_err(|e| UsageError(e.to_string()))?,
        None => PrimeSchedule::default().primes,
    };
    PrimeSchedule::new(primes, g.holdout).map_err(|e| UsageError(format!("invalid prime schedule: {e}")).into())
}

fn cache_path(g: &GlobalArgs) -> Option<PathBuf> {
    g.cache.clone().or_else(|| g.cache_dir.as_ref().map(|d| d.join(CACHE_FILE)))
}

fn save_cache(counter: &FiberCounter, path: &Path) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    counter.save_to_path(path).with_context(|| format!("writing cache {}", path.display()))
}

fn parse_bipartition(s: &str) -> anyhow::Result<Bipartition> {
    s.parse::<Bipartition>().map_err(|e| UsageError(format!("bad bipartition {s:?}: {e}")).into())
}

fn parse_partition(s: Option<&String>) -> anyhow::Result<Partition> {
    match s {
        None => Ok(Partition::empty()),
        Some(s) => s.parse::<Partition>().map_err(|e| UsageError(format!("bad partition {s:?}: {e}")).into()),
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_orbits(g: &GlobalArgs, a: &OrbitsArgs) -> anyhow::Result<Output> {
    let list = match a.n {
        Some(n) => bipartitions(n),
        None => vec![Bipartition::new(parse_partition(a.mu.as_ref())?, parse_partition(a.nu.as_ref())?)],
    };
    let rows = list
        .par_iter()
        .map(|b| {
            let shape = flag_shape(b);
            Ok((b.clone(), diagram(b).column_heights, shape.dims().to_vec(), shape.j(), orbit_dimension(b)?, is_distinguished(b)))
        })
        .collect::<nilcone::Result<Vec<_>>>()?;
    let text = match g.format {
        Format::Json => json_text(&json!({
            "schema": ORBITS_SCHEMA,
            "inputs": { "n": a.n, "mu": a.mu, "nu": a.nu },
            "rows": rows.iter().map(|(b, heights, dims, j, dim, dist)| json!({
                "bipartition": b,
                "column_heights": heights,
                "dims": dims,
                "j": j,
                "orbit_dimension": dim,
                "distinguished": dist,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["schema", "bipartition", "column_heights", "dims", "j", "orbit_dimension", "distinguished"],
            rows.iter()
                .map(|(b, heights, dims, j, dim, dist)| {
                    vec![
                        ORBITS_SCHEMA.to_string(),
                        b.to_string(),
                        join(heights, " "),
                        join(dims, " "),
                        j.to_string(),
                        dim.to_string(),
                        dist.to_string(),
                    ]
                })
                .collect(),
        )?,
    };
    Ok(Output { text, exit_code: 0 })
}

fn resolve_bound(choice: &str, big: &Bipartition, small: &Bipartition) -> anyhow::Result<(usize, &'static str)> {
    let flag = fiber_dimension_bound(&flag_shape(big));
    Ok(match choice {
        "flag" => (flag, "flag"),
        "codim" => (codimension_bound(big, small)?, "codim"),
        "auto" => {
            let codim = codimension_bound(big, small)?;
            if codim < flag {
                (codim, "codim")
            } else {
                (flag, "flag")
            }
        }
        other => match other.parse::<usize>() {
            Ok(d) => (d, "explicit"),
            Err(_) => return usage(format!("bad --degree-bound {other:?}; expected flag, codim, auto or an integer")),
        },
    })
}

fn fiber_record(fp: &FiberPolynomial, source: &str) -> Value {
    let counts: BTreeMap<String, u64> = fp.counts.iter().map(|(p, c)| (p.to_string(), *c)).collect();
    let mut notes = Vec::new();
    if fp.counts.values().all(|&c| c == 0) && fp.holdout_count == 0 {
        notes.push("empty fiber: the base orbit is not in the closure of the resolved orbit".to_string());
    }
    let (polynomial, text, error) = match &fp.polynomial {
        Ok(p) => (json!(p.coeffs()), json!(p.to_string()), Value::Null),
        Err(e) => (Value::Null, Value::Null, json!(e.to_string())),
    };
    json!({
        "schema": FIBER_POLY_SCHEMA,
        "inputs": {
            "big": fp.big,
            "small": fp.small,
            "dims": fp.shape.dims(),
            "j": fp.shape.j(),
            "degree_bound": fp.degree_bound,
            "bound_source": source,
            "holdout": fp.holdout,
        },
        "counts": counts,
        "polynomial": polynomial,
        "polynomial_text": text,
        "verdict": if fp.is_certificate() { Verdict::Pass } else { Verdict::Fail },
        "witnesses": {
            "holdout": {
                "prime": fp.holdout,
                "count": fp.holdout_count,
                "predicted": fp.polynomial.as_ref().ok().map(|p| p.eval(fp.holdout as u64).to_string()),
            },
            "error": error,
            "notes": notes,
        },
    })
}

pub fn cmd_fiber_poly(g: &GlobalArgs, counter: &FiberCounter, schedule: &PrimeSchedule, a: &FiberPolyArgs) -> anyhow::Result<Output> {
    let big = parse_bipartition(&a.big)?;
    let small = parse_bipartition(&a.small)?;
    if big.n() != small.n() {
        return usage(format!("{big} and {small} have different sizes"));
    }
    let (bound, source) = resolve_bound(&a.degree_bound, &big, &small)?;
    let fp = fiber_polynomial_with_bound(counter, &big, &small, schedule, bound)
        .map_err(|e| UsageError(format!("cannot sample the fiber: {e}")))?;
    let exit_code = if fp.is_certificate() { 0 } else { 1 };
    let record = fiber_record(&fp, source);
    let text = match g.format {
        Format::Json => json_text(&record),
        Format::Csv => csv_text(
            &["schema", "big", "small", "degree_bound", "counts", "holdout", "holdout_count", "polynomial", "verdict"],
            vec![vec![
                FIBER_POLY_SCHEMA.to_string(),
                big.to_string(),
                small.to_string(),
                bound.to_string(),
                fp.counts.iter().map(|(p, c)| format!("{p}:{c}")).collect::<Vec<_>>().join(" "),
                fp.holdout.to_string(),
                fp.holdout_count.to_string(),
                match &fp.polynomial {
                    Ok(p) => p.to_string(),
                    Err(e) => format!("error: {e}"),
                },
                record["verdict"].as_str().unwrap_or_default().to_string(),
            ]],
        )?,
    };
    Ok(Output { text, exit_code })
}

/// Hex SHA-256 of the compact JSON witness.
pub fn witness_digest(witness: &Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_string(witness).expect("serializable").as_bytes()))
}

pub fn cmd_check(g: &GlobalArgs, ctx: &CheckContext, a: &CheckArgs) -> anyhow::Result<Output> {
    let selection: Vec<CheckKind> = parse_check_list(&a.checks).map_err(|e| UsageError(e.to_string()))?;
    let schedule = &ctx.schedule;
    let mut reports: Vec<CheckReport> = run_suite(ctx, a.n, &selection)?;
    if !g.timings {
        for r in &mut reports {
            r.millis = 0;
        }
    }
    let tally = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (passed, failed, exhausted) = (tally(Verdict::Pass), tally(Verdict::Fail), tally(Verdict::BudgetExceeded));
    let exit_code = if failed + exhausted == 0 { 0 } else { 1 };
    let text = match g.format {
        Format::Json => {
            let over_budget: Vec<Value> =
                reports.iter().filter(|r| r.verdict == Verdict::BudgetExceeded).map(|r| json!({ "check": r.check, "inputs": r.inputs })).collect();
            json_text(&json!({
                "schema": CHECK_SCHEMA,
                "inputs": {
                    "n": a.n,
                    "checks": selection.iter().map(|k| k.name()).collect::<Vec<_>>(),
                    "primes": schedule.primes,
                    "holdout": schedule.holdout,
                    "budget": g.budget,
                },
                "summary": { "pass": passed, "fail": failed, "budget_exceeded": exhausted },
                "budget_exceeded": over_budget,
                "verdict": if exit_code == 0 { Verdict::Pass } else { Verdict::Fail },
                "reports": reports,
            }))
        }
        Format::Csv => csv_text(
            &["schema", "check", "inputs", "verdict", "witness_digest", "millis"],
            reports
                .iter()
                .map(|r| {
                    vec![
                        CHECK_SCHEMA.to_string(),
                        r.check.clone(),
                        serde_json::to_string(&r.inputs).expect("serializable"),
                        r.verdict.to_string(),
                        witness_digest(&r.witness),
                        r.millis.to_string(),
                    ]
                })
                .collect(),
        )?,
    };
    Ok(Output { text, exit_code })
}

/// Nodes plus covering pairs `(above, below)` as node indices.
pub type Hasse = (Vec<Bipartition>, Vec<(usize, usize)>);

/// Covering relations of the closure order: `above` covers `below`.
pub fn closure_hasse(counter: &FiberCounter, n: usize) -> anyhow::Result<Hasse> {
    let all = bipartitions(n);
    let k = all.len();
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let flags = cells
        .par_iter()
        .map(|&(i, j)| counter.closure_contains(&all[i], &all[j], 2))
        .collect::<nilcone::Result<Vec<bool>>>()?;
    let below = |i: usize, j: usize| i != j && flags[i * k + j];
    for i in 0..k {
        for j in 0..k {
            if below(i, j) && below(j, i) {
                bail!("closure order is not antisymmetric at {} and {}", all[i], all[j]);
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if below(i, j) && !(0..k).any(|c| below(i, c) && below(c, j)) {
                edges.push((i, j));
            }
        }
    }
    Ok((all, edges))
}

pub fn cmd_closure_order(g: &GlobalArgs, counter: &FiberCounter, n: usize) -> anyhow::Result<Output> {
    let (nodes, edges) = closure_hasse(counter, n)?;
    let text = match g.format {
        Format::Json => json_text(&json!({
            "schema": CLOSURE_SCHEMA,
            "inputs": { "n": n },
            "nodes": nodes,
            "edges": edges.iter().map(|&(a, b)| json!({ "above": nodes[a], "below": nodes[b] })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["schema", "above", "below"],
            edges.iter().map(|&(a, b)| vec![CLOSURE_SCHEMA.to_string(), nodes[a].to_string(), nodes[b].to_string()]).collect(),
        )?,
    };
    Ok(Output { text, exit_code: 0 })
}
