//! `shintani`: command-line front end for shintani-core.
//!
//! Exit codes: 0 success, 1 error, 2 an identity check did not hold.

mod cache;
mod config;
mod output;
mod tasks;

use cache::{Cache, Lookup};
use clap::{Parser, Subcommand};
use config::{parse_int_list, JobConfig, ModulusConfig, Num};
use serde_json::{json, Value};
use shintani_core::{Error, VERSION};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use tasks::{Check, Ctx, Outcome, Task};

/// Largest supported working precision: IEEE double.
const MAX_PREC: u32 = 53;
const DEFAULT_PRIME_BOUND: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "shintani", version, about = "Shintani cones, Lerch zeta values and Hecke L-values of totally real fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// TOML job file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in bits (at most 53).
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Prime bound for Euler products.
    #[arg(long, global = true)]
    prime_bound: Option<u64>,
    /// Output JSON path (stdout when absent); timings go to `<out>.timings.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Result cache directory.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Minimal polynomial, constant term first (instead of a config file).
    #[arg(long, global = true, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Modulus generated by a rational integer.
    #[arg(long, global = true)]
    modulus: Option<i64>,
    /// Nonpositive points `s = -k`.
    #[arg(long, global = true, value_delimiter = ',')]
    k: Vec<u32>,
    /// Real points `s > 1`.
    #[arg(long, global = true, value_delimiter = ',')]
    s: Vec<f64>,
    /// Orders for `ler-vector`.
    #[arg(long, global = true, value_delimiter = ',')]
    n: Vec<u32>,
    /// CSV export of tables (`cohomology`).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Report dimension consequences that rely on the plectic hypotheses.
    #[arg(long, global = true)]
    assume_plectic: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Field invariants, units, class numbers and characters of the modulus.
    Field,
    /// Shintani decomposition of the ring of integers with its invariants.
    Cones,
    /// Exact Lerch values at s = -k for every point of the torsor.
    LerchNeg,
    /// Numeric Lerch values at real s > 1.
    LerchPos,
    /// Exact Gauss sums with the product identity.
    Gauss,
    /// Hecke L-values assembled from Lerch values.
    Hecke,
    /// Functional equation at critical pairs.
    Funeq,
    /// Primitive against imprimitive Lerch sums.
    Imprimitive,
    /// Koszul cohomology dimensions and the logarithm-sheaf table.
    Cohomology,
    /// Normalized special-value vector at s = n.
    LerVector,
    /// Built-in verification suite.
    VerifyAll,
}

impl Command {
    fn task(self) -> Task {
        match self {
            Command::Field => Task::Field,
            Command::Cones => Task::Cones,
            Command::LerchNeg => Task::LerchNeg,
            Command::LerchPos => Task::LerchPos,
            Command::Gauss => Task::Gauss,
            Command::Hecke => Task::Hecke,
            Command::Funeq => Task::Funeq,
            Command::Imprimitive => Task::Imprimitive,
            Command::Cohomology => Task::Cohomology,
            Command::LerVector => Task::LerVector,
            Command::VerifyAll => Task::VerifyAll,
        }
    }
}

fn load_config(cli: &Cli, task: Task) -> Result<JobConfig, Error> {
    let mut cfg = match (&cli.config, &cli.poly) {
        (Some(p), _) => JobConfig::load(p)?,
        (None, Some(_)) => JobConfig::default(),
        (None, None) if task == Task::VerifyAll => JobConfig::default(),
        (None, None) => return Err(Error::InvalidInput("either --config or --poly is required".into())),
    };
    if let Some(p) = &cli.poly {
        cfg.field.min_poly = parse_int_list(p)?;
    }
    if let Some(m) = cli.modulus {
        cfg.modulus = ModulusConfig { generators: vec![vec![Num::Int(m)]] };
    }
    if !cli.k.is_empty() {
        cfg.task.k = cli.k.clone();
    }
    if !cli.s.is_empty() {
        cfg.task.s = cli.s.clone();
    }
    if !cli.n.is_empty() {
        cfg.task.n = cli.n.clone();
    }
    if cli.assume_plectic {
        cfg.task.assume_plectic = true;
    }
    if let Some(kind) = &cfg.task.kind {
        if kind != task.name() {
            return Err(Error::InvalidInput(format!("config is for task {kind:?}, not {:?}", task.name())));
        }
    }
    tasks::resolve_defaults(task, &mut cfg);
    Ok(cfg)
}

fn error_json(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ']).next().unwrap_or("Error").to_string();
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

fn payload(o: &Outcome) -> Value {
    json!({
        "provenance": o.provenance,
        "results": o.results,
        "verification": {
            "all_hold": o.checks.iter().all(|c| c.holds),
            "checks": o.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        },
        "csv": o.csv,
    })
}

fn write(path: &PathBuf, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<bool, Error> {
    let start = Instant::now();
    let task = cli.cmd.task();
    let cfg = load_config(cli, task)?;
    let prec = cli.prec.or(cfg.task.prec).unwrap_or(MAX_PREC);
    if prec > MAX_PREC {
        return Err(Error::Precision(format!("{prec} bits requested; only {MAX_PREC}-bit floating point is available")));
    }
    let prime_bound = cli.prime_bound.or(cfg.task.prime_bound).unwrap_or(DEFAULT_PRIME_BOUND);
    let out_path = cli.out.clone().or_else(|| cfg.output.clone());
    let cache_dir = cli.cache.clone().or_else(|| cfg.cache.clone());
    let mut inputs_cfg = cfg.clone();
    inputs_cfg.output = None;
    inputs_cfg.cache = None;
    let inputs = json!({ "config": inputs_cfg, "prec": prec, "prime_bound": prime_bound });
    let key = json!({ "version": VERSION, "task": task.name(), "inputs": inputs });
    let hash = cache::key_of(&key);

    let cache = match &cache_dir {
        Some(d) if task != Task::VerifyAll => Some(Cache::open(d, VERSION).map_err(|e| Error::InvalidInput(format!("cache: {e}")))?),
        _ => None,
    };
    let mut cache_state = if cache.is_some() { "miss" } else { "disabled" };
    let mut hit = None;
    if let Some(c) = &cache {
        match c.get(&hash) {
            Lookup::Hit(v) => {
                hit = Some(v);
                cache_state = "hit";
            }
            Lookup::Miss => {}
            Lookup::Corrupt(m) => {
                eprintln!("warning: ignoring corrupt cache entry ({m})");
                cache_state = "corrupt";
            }
        }
    }
    let setup_ms;
    let payload = match hit {
        Some(v) => {
            setup_ms = 0.0;
            v
        }
        None => {
            let t = Instant::now();
            let ctx = Ctx::new(cfg, prime_bound, cli.jobs)?;
            setup_ms = t.elapsed().as_secs_f64() * 1e3;
            let o = tasks::run(task, &ctx)?;
            let p = payload(&o);
            if let Some(c) = &cache {
                match c.put(&hash, &p) {
                    Ok(true) => {}
                    Ok(false) => eprintln!("warning: cache is locked by another writer; result not stored"),
                    Err(e) => eprintln!("warning: could not write cache entry: {e}"),
                }
            }
            p
        }
    };
    let all_hold = payload["verification"]["all_hold"].as_bool().unwrap_or(true);
    if let (Some(path), Some(csv)) = (&cli.csv, payload["csv"].as_str()) {
        write(path, csv)?;
    }
    let doc = json!({
        "library": { "name": "shintani", "version": VERSION },
        "task": task.name(),
        "inputs": inputs,
        "conventions": output::conventions(),
        "provenance": payload["provenance"],
        "results": payload["results"],
        "verification": payload["verification"],
        "cache_key": hash,
    });
    let text = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    match &out_path {
        Some(p) => {
            write(p, &text)?;
            let timings = json!({
                "cache": cache_state,
                "setup_ms": setup_ms,
                "total_ms": start.elapsed().as_secs_f64() * 1e3,
                "jobs": cli.jobs,
            });
            let mut tp = p.clone().into_os_string();
            tp.push(".timings.json");
            write(&PathBuf::from(tp), &(serde_json::to_string_pretty(&timings).unwrap() + "\n"))?;
        }
        None => print!("{text}"),
    }
    Ok(all_hold)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed: at least one identity check did not hold");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(1)
        }
    }
}
