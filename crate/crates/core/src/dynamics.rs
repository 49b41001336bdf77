//! Two-player weighted no-regret dynamics.
//!
//! Each round `t` draws a weight `α_t`, lets the two learners move in the
//! configured order, and feeds each one the loss induced by the other:
//! `ℓ_t(p) = g(w_t, p)` to the p-player and `h_t(w) = −g(w, p_t)` to the
//! w-player. The output is the weighted average `w̄_T = Σ α_t w_t / Σ α_t`.

use crate::error::{Error, Result};
use crate::learners::{
    self, dual_map_self_test, entropy_ftrl_plus_step, entropy_oftrl_step, omd_ball_predict,
    omd_ball_update, omd_simplex_predict, omd_simplex_update, oftl_w_step, qnorm_oftrl_step,
    unregularized_ftrl_w_step, Comparator, LearnerSpec, LearnerState, RegretAccumulator, Side,
};
use crate::linalg::{axpy, l1_distance, norm2, scaled, Matrix};
use crate::model::{Dataset, GameObjective, SimplexPoint};
use crate::schedule::WeightSchedule;
use crate::scalar::{c, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlayOrder {
    /// w-player moves first, p-player responds to `ℓ_t`.
    WFirst,
    /// p-player moves first with hint `ℓ_{t−1}`, w-player responds to `h_t`.
    PFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsConfig<T> {
    pub objective: GameObjective,
    pub order: PlayOrder,
    pub weight_schedule: WeightSchedule,
    pub w_learner: LearnerSpec<T>,
    pub p_learner: LearnerSpec<T>,
    pub horizon: usize,
    pub record_full_trace: bool,
}

fn incompatible(msg: &str) -> Error {
    Error::IncompatibleConfig(msg.to_string())
}

impl<T: Scalar> DynamicsConfig<T> {
    /// Set the w-player's regret comparator ranges over.
    pub fn comparator(&self) -> Comparator<T> {
        match self.w_learner {
            LearnerSpec::OmdBall { .. } => Comparator::L2Ball,
            LearnerSpec::OftrlQNorm { q, .. } => Comparator::QBall(q),
            _ => Comparator::Unconstrained,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use LearnerSpec::*;
        if self.horizon == 0 {
            return Err(incompatible("horizon must be at least 1"));
        }
        if self.w_learner.side() != Side::W {
            return Err(incompatible("w_learner is a simplex learner"));
        }
        if self.p_learner.side() != Side::P {
            return Err(incompatible("p_learner is not a simplex learner"));
        }
        self.w_learner.validate()?;
        self.p_learner.validate()?;
        let bilinear = self.objective == GameObjective::Bilinear;
        match self.w_learner {
            OftlPrevLoss | FtrlPlusUnregularized if bilinear => {
                return Err(incompatible(
                    "unregularized leader-following on bilinear losses needs the regularized objective",
                ))
            }
            OftrlQNorm { .. } | OmdBall { .. } if !bilinear => {
                return Err(incompatible("q-norm and ball learners take bilinear losses"))
            }
            _ => {}
        }
        let w_omd = matches!(self.w_learner, OmdBall { .. });
        let p_omd = matches!(self.p_learner, OmdEntropy { .. });
        if w_omd != p_omd {
            return Err(incompatible("mirror-descent learners must be paired with each other"));
        }
        match (self.order, self.w_learner, self.p_learner) {
            (PlayOrder::WFirst, FtrlPlusUnregularized, _) => {
                Err(incompatible("FTRL+ w-player must move second (PFirst)"))
            }
            (PlayOrder::PFirst, _, FtrlPlusEntropy { .. }) => {
                Err(incompatible("FTRL+ p-player must move second (WFirst)"))
            }
            _ => Ok(()),
        }?;
        if matches!(self.w_learner, OftrlQNorm { .. }) {
            dual_map_self_test()?;
        }
        Ok(())
    }
}

/// Per-round diagnostics, always recorded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundRecord<T> {
    pub t: usize,
    pub alpha: T,
    /// `margin(w̄_t)`
    pub margin_avg: T,
    /// `margin(Σ α_s w_s) / ‖Σ α_s w_s‖₂`; NaN while the sum is zero.
    pub normalized_margin: T,
    /// `‖p_t − p_{t−1}‖₁` with `p_0 = 1/n`.
    pub l1_delta_p: T,
    pub regret_w_running: T,
    pub regret_p_running: T,
    /// `(R^w + R^p) / Σ α_s` through round `t`.
    pub gap_bound: T,
}

/// Record of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace<T> {
    objective: GameObjective,
    comparator: Comparator<T>,
    rounds: Vec<RoundRecord<T>>,
    ws: Option<Vec<Vec<T>>>,
    ps: Option<Vec<SimplexPoint<T>>>,
    weighted_sum: Vec<T>,
    last_w: Vec<T>,
    last_p: SimplexPoint<T>,
    sum_sq_delta_p: T,
    acc: RegretAccumulator<T>,
}

impl<T: Scalar> Trace<T> {
    pub fn objective(&self) -> GameObjective {
        self.objective
    }

    pub fn comparator(&self) -> Comparator<T> {
        self.comparator
    }

    pub fn rounds(&self) -> &[RoundRecord<T>] {
        &self.rounds
    }

    pub fn horizon(&self) -> usize {
        self.rounds.len()
    }

    /// Per-round `(w_t, p_t)` when the run recorded them.
    #[allow(clippy::type_complexity)]
    pub fn iterates(&self) -> Option<(&[Vec<T>], &[SimplexPoint<T>])> {
        match (&self.ws, &self.ps) {
            (Some(w), Some(p)) => Some((w, p)),
            _ => None,
        }
    }

    pub fn accumulator(&self) -> &RegretAccumulator<T> {
        &self.acc
    }

    /// `Σ α_t`.
    pub fn weight_sum(&self) -> T {
        self.acc.weight_sum()
    }

    /// Incrementally accumulated `Σ α_t w_t`.
    pub fn weighted_sum(&self) -> &[T] {
        &self.weighted_sum
    }

    /// Incrementally accumulated `w̄_T`.
    pub fn running_average(&self) -> Vec<T> {
        scaled(self.weight_sum().recip(), &self.weighted_sum)
    }

    /// `Σ α_t p_t / Σ α_t`.
    pub fn p_average(&self) -> Vec<T> {
        scaled(self.weight_sum().recip(), self.acc.p_mix())
    }

    pub fn last_w(&self) -> &[T] {
        &self.last_w
    }

    pub fn last_p(&self) -> &SimplexPoint<T> {
        &self.last_p
    }

    /// `Σ_t ‖p_t − p_{t−1}‖₁²`.
    pub fn sum_sq_delta_p(&self) -> T {
        self.sum_sq_delta_p
    }

    fn last(&self) -> &RoundRecord<T> {
        self.rounds.last().expect("traces have at least one round")
    }

    /// Final `R^w`.
    pub fn regret_w(&self) -> T {
        self.last().regret_w_running
    }

    /// Final `R^p`.
    pub fn regret_p(&self) -> T {
        self.last().regret_p_running
    }

    /// Final `(R^w + R^p) / Σ α_t`.
    pub fn gap_bound(&self) -> T {
        self.last().gap_bound
    }
}

fn neg_tr<T: Scalar>(a: &Matrix<T>, p: &[T]) -> Vec<T> {
    scaled(-T::one(), &a.tr_mul_vec(p))
}

struct Players<'a, T> {
    cfg: &'a DynamicsConfig<T>,
    ds: &'a Dataset<T>,
    w: LearnerState<T>,
    p: LearnerState<T>,
}

impl<T: Scalar> Players<'_, T> {
    fn w_decide(&mut self, alpha: T, p_prev: &SimplexPoint<T>, p_now: Option<&SimplexPoint<T>>) -> Vec<T> {
        let ds = self.ds;
        match self.cfg.w_learner {
            LearnerSpec::OftlPrevLoss => oftl_w_step(&mut self.w, alpha, p_prev, ds),
            LearnerSpec::FtrlPlusUnregularized => {
                unregularized_ftrl_w_step(&mut self.w, alpha, p_now.expect("validated order"), ds)
            }
            LearnerSpec::OftrlQNorm { eta, q } => qnorm_oftrl_step(&mut self.w, alpha, p_prev, ds, eta, q),
            LearnerSpec::OmdBall { eta } => {
                let hint = neg_tr(ds.matrix(), self.p.secondary());
                omd_ball_predict(&mut self.w, alpha, &hint, eta)
            }
            _ => unreachable!("validated side"),
        }
    }

    fn w_absorb(&mut self, alpha: T, p: &SimplexPoint<T>) {
        match self.cfg.w_learner {
            LearnerSpec::OftlPrevLoss | LearnerSpec::OftrlQNorm { .. } => self.w.observe(alpha, p.as_slice()),
            LearnerSpec::OmdBall { eta } => {
                let g = neg_tr(self.ds.matrix(), p.as_slice());
                omd_ball_update(&mut self.w, alpha, &g, eta);
            }
            _ => {}
        }
    }

    fn p_decide(&mut self, alpha: T, aw_prev: &[T], aw_now: Option<&[T]>) -> Result<SimplexPoint<T>> {
        match self.cfg.p_learner {
            LearnerSpec::FtrlPlusEntropy { eta } => {
                entropy_ftrl_plus_step(&mut self.p, alpha, aw_now.expect("validated order"), eta)
            }
            LearnerSpec::OftrlEntropyPrev { eta } => entropy_oftrl_step(&mut self.p, alpha, aw_prev, eta),
            LearnerSpec::OmdEntropy { eta } => {
                let hint = self.ds.matrix().mul_vec(self.w.secondary());
                omd_simplex_predict(&mut self.p, alpha, &hint, eta)
            }
            _ => unreachable!("validated side"),
        }
    }

    fn p_absorb(&mut self, alpha: T, aw: &[T]) -> Result<()> {
        match self.cfg.p_learner {
            LearnerSpec::OftrlEntropyPrev { .. } => self.p.observe(alpha, aw),
            LearnerSpec::OmdEntropy { eta } => {
                omd_simplex_update(&mut self.p, alpha, aw, eta)?;
            }
            _ => {}
        }
        Ok(())
    }
}

fn at_round(t: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::NonFinite(_) => Error::NonFiniteIterate(t),
        other => other,
    }
}

/// Runs the dynamics for `cfg.horizon` rounds. Deterministic: identical
/// inputs give bit-identical traces.
pub fn run_dynamics<T: Scalar>(cfg: &DynamicsConfig<T>, ds: &Dataset<T>) -> Result<Trace<T>> {
    cfg.validate()?;
    let (n, d) = (ds.n(), ds.dim());
    let a = ds.matrix();
    let mut pl = Players {
        cfg,
        ds,
        w: LearnerState::vector(n, d),
        p: LearnerState::simplex(n),
    };
    let mut p_prev = SimplexPoint::uniform(n);
    let mut aw_prev = vec![T::zero(); n];
    let mut trace = Trace {
        objective: cfg.objective,
        comparator: cfg.comparator(),
        rounds: Vec::with_capacity(cfg.horizon),
        ws: cfg.record_full_trace.then(|| Vec::with_capacity(cfg.horizon)),
        ps: cfg.record_full_trace.then(|| Vec::with_capacity(cfg.horizon)),
        weighted_sum: vec![T::zero(); d],
        last_w: vec![T::zero(); d],
        last_p: p_prev.clone(),
        sum_sq_delta_p: T::zero(),
        acc: RegretAccumulator::new(cfg.objective, cfg.comparator(), n),
    };

    for t in 1..=cfg.horizon {
        let alpha: T = cfg.weight_schedule.alpha(t);
        let (w, aw, p) = match cfg.order {
            PlayOrder::WFirst => {
                let w = pl.w_decide(alpha, &p_prev, None);
                let aw = a.mul_vec(&w);
                let p = pl.p_decide(alpha, &aw_prev, Some(&aw)).map_err(at_round(t))?;
                pl.p_absorb(alpha, &aw).map_err(at_round(t))?;
                pl.w_absorb(alpha, &p);
                (w, aw, p)
            }
            PlayOrder::PFirst => {
                let p = pl.p_decide(alpha, &aw_prev, None).map_err(at_round(t))?;
                let w = pl.w_decide(alpha, &p_prev, Some(&p));
                let aw = a.mul_vec(&w);
                pl.w_absorb(alpha, &p);
                pl.p_absorb(alpha, &aw).map_err(at_round(t))?;
                (w, aw, p)
            }
        };
        if w.iter().chain(p.as_slice()).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteIterate(t));
        }

        let l1 = l1_distance(p.as_slice(), p_prev.as_slice());
        trace.sum_sq_delta_p += l1 * l1;
        trace.acc.push(alpha, &w, &aw, p.as_slice());
        axpy(alpha, &w, &mut trace.weighted_sum);
        let s = trace.acc.weight_sum();
        let avg = scaled(s.recip(), &trace.weighted_sum);
        let sum_norm = norm2(&trace.weighted_sum);
        let normalized_margin = if sum_norm > T::zero() {
            ds.margin(&trace.weighted_sum) / sum_norm
        } else {
            T::nan()
        };
        let rw = trace.acc.regret_w(ds)?.value;
        let rp = trace.acc.regret_p();
        trace.rounds.push(RoundRecord {
            t,
            alpha,
            margin_avg: ds.margin(&avg),
            normalized_margin,
            l1_delta_p: l1,
            regret_w_running: rw,
            regret_p_running: rp,
            gap_bound: (rw + rp) / s,
        });
        if let (Some(ws), Some(ps)) = (trace.ws.as_mut(), trace.ps.as_mut()) {
            ws.push(w.clone());
            ps.push(p.clone());
        }
        trace.last_w = w;
        trace.last_p = p.clone();
        p_prev = p;
        aw_prev = aw;
    }
    Ok(trace)
}

/// `w̄_T = Σ α_t w_t / Σ α_t`, recomputed from the recorded iterates when
/// present and from the running sum otherwise.
pub fn weighted_average<T: Scalar>(trace: &Trace<T>) -> Vec<T> {
    match trace.iterates() {
        Some((ws, _)) => {
            let mut sum = vec![T::zero(); trace.weighted_sum.len()];
            let mut total = T::zero();
            for (r, w) in trace.rounds.iter().zip(ws) {
                axpy(r.alpha, w, &mut sum);
                total += r.alpha;
            }
            scaled(total.recip(), &sum)
        }
        None => trace.running_average(),
    }
}

/// Outcome of the duality-gap inequality `m(w) − m(w̄_T) ≤ (R^w + R^p)/Σ α_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub ok: bool,
}

/// Evaluates the duality-gap guarantee for comparator `w`, which must lie
/// in the w-player's comparator set.
pub fn gap_bound_check<T: Scalar>(
    trace: &Trace<T>,
    ds: &Dataset<T>,
    objective: GameObjective,
    w: &[T],
) -> Result<GapCheck<T>> {
    if !trace.comparator().contains(w) {
        return Err(incompatible("comparator lies outside the w-player's set"));
    }
    let w_bar = weighted_average(trace);
    let lhs = objective.best_response_value(ds, w) - objective.best_response_value(ds, &w_bar);
    let rw = learners::weighted_regret_w(trace, ds, objective)?.value;
    let rp = learners::weighted_regret_p(trace, ds, objective)?;
    let rhs = (rw + rp) / trace.weight_sum();
    Ok(GapCheck {
        lhs,
        rhs,
        ok: lhs <= rhs + c(crate::config::BOUND_SLACK),
    })
}
