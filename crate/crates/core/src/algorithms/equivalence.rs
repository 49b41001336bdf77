use std::fmt;

use super::{accel_perceptron_ji, mpfp, mpfp_config, nag_config, nag_margin, smooth_config, smooth_perceptron};
use crate::config::EQUIV_ABS_FLOOR;
use crate::dynamics::{run_dynamics, DynamicsConfig};
use crate::error::{Error, Result};
use crate::linalg::{norm_inf, scaled, sub};
use crate::model::Dataset;
use crate::scalar::{c, Scalar};

/// Which original-form / dynamics pair to compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equivalence {
    /// Smooth Perceptron: `v_{T−1} = w̄_T`, `q_{T−1} = Σ α_t p_t / Σ α_t`.
    Smooth,
    /// Accelerated Perceptron: `v_T = ¼ Σ α_t w_t`, `q_T = p_T`.
    Accelerated,
    /// NAG: `s_T = (Σ α_t / 4) w̄_T`.
    Nag,
    /// Mirror-prox: `u_t = [w_t; p_t]` for every `t`.
    MirrorProx,
}

impl Equivalence {
    pub const ALL: [Equivalence; 4] = [Self::Smooth, Self::Accelerated, Self::Nag, Self::MirrorProx];

    pub fn name(self) -> &'static str {
        match self {
            Self::Smooth => "smooth",
            Self::Accelerated => "ji",
            Self::Nag => "nag",
            Self::MirrorProx => "mpfp",
        }
    }

    /// Dynamics configuration paired with the original form.
    pub fn config<T: Scalar>(self, n: usize, horizon: usize) -> Result<DynamicsConfig<T>> {
        Ok(match self {
            Self::Smooth | Self::Accelerated => smooth_config(horizon),
            Self::Nag => nag_config(horizon),
            Self::MirrorProx => mpfp_config(n, horizon)?,
        })
    }
}

impl std::str::FromStr for Equivalence {
    type Err = Error;

    /// Accepts the role names and the `prop1` / `prop2` command-line aliases.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "smooth" | "prop1" => Ok(Self::Smooth),
            "ji" | "accelerated" | "prop2" => Ok(Self::Accelerated),
            "nag" => Ok(Self::Nag),
            "mpfp" | "mirror-prox" => Ok(Self::MirrorProx),
            other => Err(Error::BadSpec(format!("unknown equivalence `{other}`"))),
        }
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Deviation of one claimed identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation<T> {
    pub quantity: String,
    /// `‖a − b‖_∞`
    pub abs: T,
    /// `‖a − b‖_∞ / max(‖a‖_∞, ‖b‖_∞)`, 0 when both vanish.
    pub rel: T,
    /// Round with the worst deviation, for per-round identities.
    pub worst_round: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<T> {
    pub which: Equivalence,
    pub horizon: usize,
    pub tol: T,
    pub deviations: Vec<Deviation<T>>,
    pub pass: bool,
}

impl<T: Scalar> EquivalenceReport<T> {
    /// Largest relative deviation across quantities.
    pub fn max_rel(&self) -> T {
        self.deviations.iter().fold(T::zero(), |m, d| m.max(d.rel))
    }
}

struct Tally<T> {
    tol: T,
    abs: T,
    rel: T,
    worst: Option<usize>,
    pass: bool,
}

impl<T: Scalar> Tally<T> {
    fn new(tol: T) -> Self {
        Self { tol, abs: T::zero(), rel: T::zero(), worst: None, pass: true }
    }

    fn add(&mut self, a: &[T], b: &[T], round: Option<usize>) {
        let abs = norm_inf(&sub(a, b));
        let scale = norm_inf(a).max(norm_inf(b));
        let rel = if scale > T::zero() { abs / scale } else { T::zero() };
        let ok = abs <= (self.tol * scale).max(c(EQUIV_ABS_FLOOR));
        // NaN deviations never pass
        self.pass &= ok;
        if abs > self.abs || abs.is_nan() || self.worst.is_none() {
            self.worst = round;
        }
        if !(abs <= self.abs) {
            self.abs = abs;
        }
        if !(rel <= self.rel) {
            self.rel = rel;
        }
    }

    fn finish(self, quantity: &str) -> Deviation<T> {
        Deviation {
            quantity: quantity.to_string(),
            abs: self.abs,
            rel: self.rel,
            worst_round: self.worst,
            pass: self.pass,
        }
    }
}

fn single<T: Scalar>(quantity: &str, a: &[T], b: &[T], tol: T) -> Deviation<T> {
    let mut t = Tally::new(tol);
    t.add(a, b, None);
    t.finish(quantity)
}

/// Runs both forms for `T` rounds and compares the identities of `which`.
pub fn check_equivalence<T: Scalar>(
    which: Equivalence,
    ds: &Dataset<T>,
    horizon: usize,
    tol: T,
) -> Result<EquivalenceReport<T>> {
    check_equivalence_with(which, ds, horizon, tol, None)
}

/// As [`check_equivalence`], optionally scaling the p-player's step size in
/// the dynamics by `1 + perturb` (a negative control: the check must then
/// fail).
pub fn check_equivalence_with<T: Scalar>(
    which: Equivalence,
    ds: &Dataset<T>,
    horizon: usize,
    tol: T,
    perturb: Option<T>,
) -> Result<EquivalenceReport<T>> {
    let mut cfg = which.config::<T>(ds.n(), horizon)?;
    if let Some(delta) = perturb {
        cfg.p_learner = cfg.p_learner.with_eta_scaled(T::one() + delta);
    }
    let quarter: T = c(0.25);
    let deviations = match which {
        Equivalence::Smooth => {
            let orig = smooth_perceptron(ds, horizon)?;
            let tr = run_dynamics(&cfg, ds)?;
            vec![
                single("v_{T-1} vs w_bar_T", &orig.v, &tr.running_average(), tol),
                single("q_{T-1} vs p_avg_T", orig.q.as_slice(), &tr.p_average(), tol),
            ]
        }
        Equivalence::Accelerated => {
            let orig = accel_perceptron_ji(ds, horizon)?;
            let tr = run_dynamics(&cfg, ds)?;
            let q_t = &orig.states.last().expect("T >= 1").q;
            vec![
                single("v_T vs sum(alpha w)/4", &orig.v, &scaled(quarter, tr.weighted_sum()), tol),
                single("q_T vs p_T", q_t.as_slice(), tr.last_p().as_slice(), tol),
            ]
        }
        Equivalence::Nag => {
            let orig = nag_margin(ds, horizon)?;
            let tr = run_dynamics(&cfg, ds)?;
            vec![single("s_T vs sum(alpha)/4 w_bar_T", &orig.s, &scaled(quarter, tr.weighted_sum()), tol)]
        }
        Equivalence::MirrorProx => {
            let orig = mpfp(ds, horizon)?;
            cfg.record_full_trace = true;
            let tr = run_dynamics(&cfg, ds)?;
            let (ws, ps) = tr.iterates().expect("recorded");
            let mut dw = Tally::new(tol);
            let mut dp = Tally::new(tol);
            for (s, (w, p)) in orig.states.iter().zip(ws.iter().zip(ps)) {
                dw.add(&s.x, w, Some(s.t));
                dp.add(s.y.as_slice(), p.as_slice(), Some(s.t));
            }
            vec![
                dw.finish("x_t vs w_t (all t)"),
                dp.finish("y_t vs p_t (all t)"),
                single("z_T ball part vs w_bar_T", &orig.z_w, &tr.running_average(), tol),
                single("z_T simplex part vs p_avg_T", orig.z_p.as_slice(), &tr.p_average(), tol),
            ]
        }
    };
    let pass = deviations.iter().all(|d| d.pass);
    Ok(EquivalenceReport { which, horizon, tol, deviations, pass })
}
