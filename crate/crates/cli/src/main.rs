//! `nrp`: generate data, run the accelerated Perceptrons, check their
//! dynamics equivalences and sweep parameter grids.
//!
//! Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.

mod exec;
mod source;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use nrp_core::algorithms::{check_equivalence_with, Equivalence};
use nrp_core::datagen::{generate, GenSpec};
use nrp_core::format::{fmt_real, save_dataset, write_dataset};
use rayon::prelude::*;

use exec::{execute, Algo, DynamicsOpts, Horizon, Order, Preset, Weights, SUMMARY_HEADER};
use source::{GenArgs, Mode, SourceArgs};

/// Bad flags or flag combinations; exits with 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser)]
#[command(name = "nrp", version, about = "Accelerated Perceptrons as no-regret dynamics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a synthetic dataset.
    Gen(GenCmd),
    /// Run one algorithm; prints a summary line, optionally writes the trace.
    Run(RunCmd),
    /// Compare an original-form algorithm with its dynamics.
    Equiv(EquivCmd),
    /// Run a parameter grid; one summary row per cell.
    Sweep(SweepCmd),
}

#[derive(Args)]
struct GenCmd {
    #[command(flatten)]
    gen: GenArgs,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DynArgs {
    /// Pairing for `--algo dynamics`.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long, value_enum)]
    weights: Option<Weights>,
    #[arg(long, value_enum)]
    order: Option<Order>,
}

impl DynArgs {
    fn opts(&self) -> DynamicsOpts {
        DynamicsOpts { preset: self.preset, weights: self.weights, order: self.order }
    }
}

#[derive(Args)]
struct RunCmd {
    #[arg(long, value_enum)]
    algo: Algo,
    #[command(flatten)]
    source: SourceArgs,
    /// Rounds (updates for vanilla), or `auto` for the theory horizon.
    #[arg(long = "T", default_value = "auto")]
    horizon: Horizon,
    /// Trace CSV destination.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Keep every k-th trace row (the last row is always kept).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    every: u64,
    /// Write NaN instead of the wall-clock time, for byte-stable output.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    dynamics: DynArgs,
}

#[derive(Args)]
struct EquivCmd {
    /// smooth (alias prop1), ji (alias prop2), nag or mpfp.
    #[arg(long, value_parser = parse_equivalence)]
    which: Equivalence,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long = "T", default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    horizon: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Scale the p-player's step size by `1 + δ` (the check should then fail).
    #[arg(long)]
    perturb: Option<f64>,
}

#[derive(Args)]
struct SweepCmd {
    /// Comma-separated lists; an empty list gives an empty grid.
    #[arg(long)]
    algo: String,
    #[arg(long)]
    n: String,
    #[arg(long)]
    gamma: String,
    #[arg(long, default_value = "2")]
    p: String,
    /// Seeds; `a..b` ranges are accepted.
    #[arg(long, default_value = "0")]
    seed: String,
    /// Horizons, each a positive integer or `auto`.
    #[arg(long = "T")]
    horizon: String,
    #[arg(long, default_value_t = 4)]
    d: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    dynamics: DynArgs,
}

fn parse_equivalence(s: &str) -> Result<Equivalence, String> {
    Equivalence::from_str(s).map_err(|e| e.to_string())
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_gen(cmd: GenCmd) -> anyhow::Result<ExitCode> {
    let ds = generate::<f64>(&cmd.gen.spec()?)?;
    match &cmd.out {
        Some(path) => save_dataset(&ds, path)?,
        None => write_dataset(&ds, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(cmd: RunCmd) -> anyhow::Result<ExitCode> {
    let ds = cmd.source.load()?;
    let p = cmd.source.gen.p.unwrap_or_else(|| ds.norm_exponent());
    let opts = cmd.dynamics.opts();
    let horizon = cmd.horizon.resolve(cmd.algo, &opts, &ds, p)?;
    let outcome = execute(cmd.algo, &ds, horizon, p, &opts, !cmd.no_timing)?;
    if let Some(path) = &cmd.trace {
        outcome.write_trace(output(&Some(path.clone()))?, cmd.every as usize)?;
    }
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(SUMMARY_HEADER)?;
    w.write_record(outcome.summary_fields())?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_equiv(cmd: EquivCmd) -> anyhow::Result<ExitCode> {
    let ds = cmd.source.load()?;
    let report = check_equivalence_with(cmd.which, &ds, cmd.horizon as usize, cmd.tol, cmd.perturb)?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["quantity", "max_abs", "max_rel", "worst_round", "pass"])?;
    for dev in &report.deviations {
        w.write_record([
            dev.quantity.clone(),
            fmt_real(dev.abs),
            fmt_real(dev.rel),
            dev.worst_round.map(|t| t.to_string()).unwrap_or_default(),
            dev.pass.to_string(),
        ])?;
    }
    w.flush()?;
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    eprintln!("{verdict} {} T={} tol={:e}", report.which, report.horizon, cmd.tol);
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_list<T: FromStr>(flag: &str, s: &str) -> Result<Vec<T>, Usage>
where
    T::Err: fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|item| !item.is_empty())
        .map(|item| item.parse().map_err(|e| Usage(format!("--{flag} `{item}`: {e}"))))
        .collect()
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, Usage> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let bad = || Usage(format!("--seed range `{item}`"));
                let a: u64 = a.parse().map_err(|_| bad())?;
                let b: u64 = b.parse().map_err(|_| bad())?;
                out.extend(a..b);
            }
            None => out.push(item.parse().map_err(|_| Usage(format!("--seed `{item}`")))?),
        }
    }
    Ok(out)
}

fn thread_cap() -> Result<Option<usize>, Usage> {
    match std::env::var("NRP_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(Usage(format!("NRP_THREADS must be a positive integer, got `{v}`"))),
        },
    }
}

struct Cell {
    algo: Algo,
    spec: GenSpec,
    horizon: Horizon,
}

const SWEEP_HEADER: [&str; 12] = [
    "algo",
    "n",
    "d",
    "gamma",
    "p",
    "seed",
    "T",
    "final_margin",
    "final_normalized_margin",
    "Rw",
    "Rp",
    "wallclock_ms",
];

fn cmd_sweep(cmd: SweepCmd) -> anyhow::Result<ExitCode> {
    let algos: Vec<Algo> = cmd
        .algo
        .split(',')
        .map(str::trim)
        .filter(|a| !a.is_empty())
        .map(|a| <Algo as clap::ValueEnum>::from_str(a, true).map_err(|_| Usage(format!("--algo `{a}`"))))
        .collect::<Result<_, _>>()?;
    let ns: Vec<usize> = parse_list("n", &cmd.n)?;
    let gammas: Vec<f64> = parse_list("gamma", &cmd.gamma)?;
    let ps: Vec<f64> = parse_list("p", &cmd.p)?;
    let seeds = parse_seeds(&cmd.seed)?;
    let horizons: Vec<Horizon> = parse_list("T", &cmd.horizon)?;
    let opts = cmd.dynamics.opts();
    let timed = !cmd.no_timing;

    let mut cells = Vec::new();
    for &algo in &algos {
        for &n in &ns {
            for &gamma in &gammas {
                for &p in &ps {
                    for &seed in &seeds {
                        for &horizon in &horizons {
                            let spec = GenSpec { n, d: cmd.d, gamma, norm_exponent: p, mode: cmd.mode.into(), seed };
                            spec.validate().map_err(|e| Usage(e.to_string()))?;
                            cells.push(Cell { algo, spec, horizon });
                        }
                    }
                }
            }
        }
    }

    let run_cell = |cell: &Cell| -> anyhow::Result<Vec<String>> {
        let ds = generate::<f64>(&cell.spec)?;
        let p = cell.spec.norm_exponent;
        let horizon = cell.horizon.resolve(cell.algo, &opts, &ds, p)?;
        let o = execute(cell.algo, &ds, horizon, p, &opts, timed)?;
        let s = o.summary_fields();
        Ok(vec![
            s[0].clone(),
            s[1].clone(),
            s[2].clone(),
            fmt_real(cell.spec.gamma),
            fmt_real(p),
            cell.spec.seed.to_string(),
            s[4].clone(),
            s[5].clone(),
            s[6].clone(),
            s[7].clone(),
            s[8].clone(),
            s[9].clone(),
        ])
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_cap()? {
        pool = pool.num_threads(k);
    }
    // collect keeps grid order whatever the scheduling
    let rows: Vec<anyhow::Result<Vec<String>>> = pool.build()?.install(|| cells.par_iter().map(run_cell).collect());

    let mut w = csv::Writer::from_writer(output(&cmd.out)?);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record(row?)?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn is_usage(err: &anyhow::Error) -> bool {
    use nrp_core::Error as E;
    err.chain().any(|e| {
        e.is::<Usage>()
            || matches!(
                e.downcast_ref::<E>(),
                Some(E::BadSpec(_) | E::BadNormExponent(_) | E::IncompatibleConfig(_))
            )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Gen(c) => cmd_gen(c),
        Cmd::Run(c) => cmd_run(c),
        Cmd::Equiv(c) => cmd_equiv(c),
        Cmd::Sweep(c) => cmd_sweep(c),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_usage(&err) { 2 } else { 1 })
        }
    }
}
