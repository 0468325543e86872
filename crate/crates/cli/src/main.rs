//! `burn`: run burning simulations, verification suites and geometry queries.

mod config;

use clap::{Parser, Subcommand};
use config::{EngineName, RunConfig};
use gburn::analysis::verify::{run_suite, Scale, SUITES};
use gburn::lattice::{ball_cardinality, round_toward_origin, sample_sphere_uniform, sphere_cardinality, RealPoint};
use gburn::process::{run_trace_with, RunOptions};
use gburn::{BurnError, Exec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "burn", version, about = "Graph burning on growing lattice grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a strategy and write a CSV trace plus a JSON sidecar.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        engine: Option<EngineName>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(long)]
        stride: Option<u64>,
        /// Monte Carlo samples per checkpoint.
        #[arg(long)]
        samples: Option<u64>,
        /// Run the engines single-threaded.
        #[arg(long)]
        sequential: bool,
    },
    /// Run a named verification suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value = "quick")]
        scale: ScaleArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact geometry queries, answered as JSON lines.
    Geom {
        #[command(subcommand)]
        query: Geom,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ScaleArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Geom {
    /// |B₁(0, r)| in Z^d.
    Ball { d: usize, r: u64 },
    /// |S₁(0, r)| in Z^d.
    Sphere { d: usize, r: u64 },
    /// Uniform points of S₁(0, r).
    Sample { d: usize, r: u64, count: u64, seed: u64 },
    /// Nearest lattice point of no larger L1 norm.
    #[command(allow_negative_numbers = true)]
    Roundstar { x: f64, y: f64 },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: 1, kind: "config", message: message.into() }
    }
}

impl From<BurnError> for Failure {
    fn from(e: BurnError) -> Self {
        let (code, kind) = match &e {
            BurnError::InvalidActivation { .. } | BurnError::OutsideGrid { .. } => (2, "strategy_validity"),
            BurnError::BudgetExceeded { .. } | BurnError::Overflow(_) => (3, "resource_budget"),
            _ => (1, "config"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::config(format!("io: {e}"))
    }
}

const BUDGET_VAR: &str = "BURN_BUDGET_CELLS";

fn run_options(sequential: bool) -> Result<RunOptions, Failure> {
    let mut opts = RunOptions::default();
    if sequential {
        opts.exec = Exec::Seq;
    }
    if let Ok(v) = std::env::var(BUDGET_VAR) {
        opts.cell_budget = v
            .trim()
            .parse()
            .map_err(|_| Failure::config(format!("{BUDGET_VAR} must be a nonnegative integer, got `{v}`")))?;
    }
    Ok(opts)
}

fn simulate(cfg_path: &PathBuf, overrides: SimOverrides) -> Result<(), Failure> {
    let text = std::fs::read_to_string(cfg_path)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", cfg_path.display())))?;
    let mut cfg: RunConfig =
        serde_json::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", cfg_path.display())))?;
    cfg.seed = overrides.seed.or(cfg.seed);
    cfg.engine = overrides.engine.or(cfg.engine);
    cfg.out = overrides.out.or(cfg.out);
    cfg.horizon = overrides.horizon.unwrap_or(cfg.horizon);
    cfg.samples = overrides.samples.or(cfg.samples);
    if overrides.stride.is_some() {
        cfg.stride = overrides.stride;
        cfg.checkpoints = None;
    }
    if cfg.strategy.is_stochastic() && cfg.seed.is_none() {
        if let gburn::strategies::StrategySpec::EpochRandom { seed: Some(s), .. } = cfg.strategy {
            cfg.seed = Some(s);
        } else {
            return Err(Failure::config("stochastic strategy needs an explicit seed (--seed or \"seed\")"));
        }
    }
    let opts = run_options(overrides.sequential)?;
    let trace = run_trace_with(opts, &cfg.strategy, &cfg.growth, cfg.horizon, &cfg.checkpoint_list(), cfg.engine(), cfg.seed)?;

    match &cfg.out {
        Some(path) => {
            trace.write_csv(BufWriter::new(File::create(path)?))?;
            if let Some(side) = cfg.sidecar_path() {
                trace.write_sidecar(BufWriter::new(File::create(&side)?))?;
            }
            let last = trace.records.last();
            let summary = json!({
                "csv": path,
                "sidecar": cfg.sidecar_path(),
                "rows": trace.records.len(),
                "engine": trace.engine,
                "final_n": last.map(|r| r.n),
                "final_density": last.map(|r| r.density),
                "collisions": trace.collisions,
            });
            println!("{summary}");
        }
        None => trace.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

struct SimOverrides {
    seed: Option<u64>,
    engine: Option<EngineName>,
    out: Option<PathBuf>,
    horizon: Option<u64>,
    stride: Option<u64>,
    samples: Option<u64>,
    sequential: bool,
}

fn verify(suite: &str, scale: ScaleArg, out: Option<PathBuf>) -> Result<bool, Failure> {
    if !SUITES.contains(&suite) {
        return Err(Failure::config(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
    }
    let scale = match scale {
        ScaleArg::Quick => Scale::Quick,
        ScaleArg::Full => Scale::Full,
    };
    let report = run_suite(suite, scale, run_options(false)?)?;
    let text = serde_json::to_string(&report).map_err(|e| Failure::config(e.to_string()))?;
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(report.pass)
}

fn geom(q: Geom) -> Result<(), Failure> {
    let mut w = io::stdout().lock();
    match q {
        Geom::Ball { d, r } => writeln!(w, "{}", json!({"query": "ball", "d": d, "r": r, "count": ball_cardinality(d, r)?}))?,
        Geom::Sphere { d, r } => {
            writeln!(w, "{}", json!({"query": "sphere", "d": d, "r": r, "count": sphere_cardinality(d, r)?}))?
        }
        Geom::Sample { d, r, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let p = sample_sphere_uniform(d, r, &mut rng)?;
                writeln!(w, "{}", json!({"query": "sample", "point": p}))?;
            }
        }
        Geom::Roundstar { x, y } => {
            let p = round_toward_origin(&RealPoint::new(vec![x, y])?)?;
            writeln!(w, "{}", json!({"query": "roundstar", "x": x, "y": y, "point": p}))?
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            eprintln!("{}", json!({"error": "usage", "message": message, "exit_code": 1}));
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Simulate { config, seed, engine, out, horizon, stride, samples, sequential } => simulate(
            &config,
            SimOverrides { seed, engine, out, horizon, stride, samples, sequential },
        )
        .map(|_| 0),
        Command::Verify { suite, scale, out } => verify(&suite, scale, out).map(|pass| if pass { 0 } else { 4 }),
        Command::Geom { query } => geom(query).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", json!({"error": f.kind, "message": f.message, "exit_code": f.code}));
            ExitCode::from(f.code)
        }
    }
}
