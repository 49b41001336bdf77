//! Where a command's dataset comes from: a file, or generator flags.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use nrp_core::datagen::{generate, GenMode, GenSpec};
use nrp_core::format::load_dataset;
use nrp_core::Dataset64;

use crate::Usage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[value(alias = "lower-bound")]
    Lower,
    #[value(alias = "exact-margin")]
    Exact,
    Infeasible,
}

impl From<Mode> for GenMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Lower => GenMode::LowerBound,
            Mode::Exact => GenMode::ExactMargin,
            Mode::Infeasible => GenMode::Infeasible,
        }
    }
}

/// Generator flags. Every field is optional so the same group can sit next
/// to `--data`; [`GenArgs::spec`] enforces what is required.
#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Feature norm exponent (data rows satisfy ‖x‖_p ≤ 1).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GenArgs {
    pub fn spec(&self) -> Result<GenSpec, Usage> {
        let need = |name: &str| Usage(format!("--{name} is required unless --data is given"));
        let spec = GenSpec {
            n: self.n.ok_or_else(|| need("n"))?,
            d: self.d.ok_or_else(|| need("d"))?,
            gamma: self.gamma.ok_or_else(|| need("gamma"))?,
            norm_exponent: self.p.unwrap_or(2.0),
            mode: self.mode.into(),
            seed: self.seed,
        };
        spec.validate().map_err(|e| Usage(e.to_string()))?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Dataset file; replaces the generator flags.
    #[arg(long, conflicts_with_all = ["n", "d", "gamma", "mode", "seed"])]
    pub data: Option<PathBuf>,
    #[command(flatten)]
    pub gen: GenArgs,
}

impl SourceArgs {
    pub fn load(&self) -> anyhow::Result<Dataset64> {
        match &self.data {
            Some(path) => Ok(load_dataset(path)?),
            None => Ok(generate(&self.gen.spec()?)?),
        }
    }
}
