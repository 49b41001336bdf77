//! Running one algorithm on one dataset and turning the result into CSV rows.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::ValueEnum;
use nrp_core::algorithms::*;
use nrp_core::format::fmt_real;
use nrp_core::{run_dynamics, Dataset64, DynamicsConfig64, PlayOrder, RoundRecord, Trace64, WeightSchedule};

use crate::Usage;

pub const TRACE_HEADER: [&str; 8] = [
    "t",
    "alpha",
    "margin_avg",
    "normalized_margin",
    "l1_delta_p",
    "regret_w_running",
    "regret_p_running",
    "gap_bound",
];

pub const SUMMARY_HEADER: [&str; 10] =
    ["algo", "n", "d", "gamma", "T", "final_margin", "final_normalized_margin", "Rw", "Rp", "wallclock_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Smooth,
    Ji,
    Nag,
    Mpfp,
    Pnorm,
    Vanilla,
    Dynamics,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Smooth => "smooth",
            Algo::Ji => "ji",
            Algo::Nag => "nag",
            Algo::Mpfp => "mpfp",
            Algo::Pnorm => "pnorm",
            Algo::Vanilla => "vanilla",
            Algo::Dynamics => "dynamics",
        }
    }
}

/// Dynamics pairing used by `--algo dynamics`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Smooth,
    Nag,
    Mpfp,
    Pnorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Weights {
    Linear,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    WFirst,
    PFirst,
}

/// Overrides for `--algo dynamics`; ignored by the other algorithms.
#[derive(Debug, Clone, Copy, Default)]
pub struct DynamicsOpts {
    pub preset: Option<Preset>,
    pub weights: Option<Weights>,
    pub order: Option<Order>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horizon {
    Auto,
    Fixed(usize),
}

impl FromStr for Horizon {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Horizon::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("T must be at least 1".into()),
            Ok(t) => Ok(Horizon::Fixed(t)),
            Err(_) => Err(format!("`{s}` is neither a positive integer nor `auto`")),
        }
    }
}

impl Horizon {
    /// Theory horizons need the dataset's known margin.
    pub fn resolve(self, algo: Algo, opts: &DynamicsOpts, ds: &Dataset64, p: f64) -> Result<usize, Usage> {
        let gamma = match self {
            Horizon::Fixed(t) => return Ok(t),
            Horizon::Auto => ds
                .known_margin()
                .ok_or_else(|| Usage("--T auto needs a dataset with a known margin".into()))?,
        };
        let log_n = (ds.n() as f64).ln();
        let pnorm = algo == Algo::Pnorm || (algo == Algo::Dynamics && opts.preset == Some(Preset::Pnorm));
        let t = if algo == Algo::Vanilla {
            (1.0 / (gamma * gamma)).ceil()
        } else if pnorm {
            ((2.0 * (p - 1.0) * log_n).sqrt() / gamma).ceil() + 1.0
        } else {
            (4.0 * log_n.sqrt() / gamma).ceil()
        };
        Ok((t as usize).max(1))
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub algo: Algo,
    pub n: usize,
    pub d: usize,
    /// Known margin of the dataset, NaN when absent.
    pub gamma: f64,
    pub horizon: usize,
    pub final_margin: f64,
    pub final_normalized_margin: f64,
    pub regret_w: f64,
    pub regret_p: f64,
    /// `None` when timing is disabled.
    pub wallclock_ms: Option<f64>,
    pub trace: Vec<[f64; 8]>,
}

impl Outcome {
    pub fn summary_fields(&self) -> Vec<String> {
        vec![
            self.algo.name().to_string(),
            self.n.to_string(),
            self.d.to_string(),
            fmt_real(self.gamma),
            self.horizon.to_string(),
            fmt_real(self.final_margin),
            fmt_real(self.final_normalized_margin),
            fmt_real(self.regret_w),
            fmt_real(self.regret_p),
            fmt_real(self.wallclock_ms.unwrap_or(f64::NAN)),
        ]
    }

    /// Writes every `every`-th row plus the last one.
    pub fn write_trace<W: Write>(&self, out: W, every: usize) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TRACE_HEADER)?;
        let last = self.trace.len().saturating_sub(1);
        for (i, row) in self.trace.iter().enumerate() {
            if (i + 1) % every == 0 || i == last {
                let t = (row[0] as usize).to_string();
                w.write_record(std::iter::once(t).chain(row[1..].iter().map(|&v| fmt_real(v))))?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn record_row(r: &RoundRecord<f64>) -> [f64; 8] {
    [
        r.t as f64,
        r.alpha,
        r.margin_avg,
        r.normalized_margin,
        r.l1_delta_p,
        r.regret_w_running,
        r.regret_p_running,
        r.gap_bound,
    ]
}

fn preset_config(preset: Preset, n: usize, horizon: usize, p: f64) -> nrp_core::Result<DynamicsConfig64> {
    match preset {
        Preset::Smooth => Ok(smooth_config(horizon)),
        Preset::Nag => Ok(nag_config(horizon)),
        Preset::Mpfp => mpfp_config(n, horizon),
        Preset::Pnorm => pnorm_config(n, horizon, p),
    }
}

/// Runs `algo` for `horizon` rounds (updates, for vanilla). `p` is the
/// p-norm exponent; only `pnorm` and the pnorm preset read it.
pub fn execute(
    algo: Algo,
    ds: &Dataset64,
    horizon: usize,
    p: f64,
    opts: &DynamicsOpts,
    timed: bool,
) -> anyhow::Result<Outcome> {
    if horizon == 0 {
        return Err(Usage("T must be at least 1".into()).into());
    }
    let start = Instant::now();
    let dynamics = |cfg: DynamicsConfig64| -> anyhow::Result<Trace64> { Ok(run_dynamics(&cfg, ds)?) };
    let mut vanilla_history = Vec::new();
    let (output, trace) = match algo {
        Algo::Smooth => (smooth_perceptron(ds, horizon)?.v, Some(dynamics(smooth_config(horizon))?)),
        Algo::Ji => (accel_perceptron_ji(ds, horizon)?.v, Some(dynamics(ji_config(horizon))?)),
        Algo::Nag => (nag_margin(ds, horizon)?.s, Some(dynamics(nag_config(horizon))?)),
        Algo::Mpfp => (mpfp(ds, horizon)?.z_w, Some(dynamics(mpfp_config(ds.n(), horizon)?)?)),
        Algo::Pnorm => {
            let run = pnorm_accelerated(ds, horizon, p)?;
            (run.w_bar, Some(run.trace))
        }
        Algo::Vanilla => {
            let run = vanilla_perceptron(ds, horizon)?;
            vanilla_history = run.history;
            (run.w, None)
        }
        Algo::Dynamics => {
            let mut cfg = preset_config(opts.preset.unwrap_or(Preset::Smooth), ds.n(), horizon, p)?;
            if let Some(w) = opts.weights {
                cfg.weight_schedule = match w {
                    Weights::Linear => WeightSchedule::Linear,
                    Weights::Uniform => WeightSchedule::Uniform,
                };
            }
            if let Some(o) = opts.order {
                cfg.order = match o {
                    Order::WFirst => PlayOrder::WFirst,
                    Order::PFirst => PlayOrder::PFirst,
                };
            }
            let tr = dynamics(cfg)?;
            (tr.running_average(), Some(tr))
        }
    };
    let (regret_w, regret_p, rows) = match &trace {
        Some(tr) => (tr.regret_w(), tr.regret_p(), tr.rounds().iter().map(record_row).collect()),
        None => {
            // vanilla: one row per update, margins of the current iterate
            let nan = f64::NAN;
            let rows = vanilla_history
                .iter()
                .enumerate()
                .map(|(i, &(m, nm))| [(i + 1) as f64, 1.0, m, nm, nan, nan, nan, nan])
                .collect();
            (nan, nan, rows)
        }
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    Ok(Outcome {
        algo,
        n: ds.n(),
        d: ds.dim(),
        gamma: ds.known_margin().unwrap_or(f64::NAN),
        horizon,
        final_margin: ds.margin(&output),
        final_normalized_margin: ds.normalized_margin(&output).unwrap_or(f64::NAN),
        regret_w,
        regret_p,
        wallclock_ms: timed.then_some(elapsed),
        trace: rows,
    })
}
