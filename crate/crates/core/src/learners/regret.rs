//! Exact weighted regret of both players against closed-form comparators.
//!
//! With `P = Σ α_t p_t`, `S = Σ α_t` and `L = Σ α_t A w_t` the comparator
//! minima are
//!
//! | objective      | w-set          | `min_w Σ α_t h_t(w)`            |
//! |----------------|----------------|---------------------------------|
//! | L2-regularized | ℝᵈ             | `−‖AᵀP‖₂² / (2S)`               |
//! | L2-regularized | unit ℓ2 ball   | value at `Π(AᵀP / S)`           |
//! | bilinear       | unit ℓ2 ball   | `−‖AᵀP‖₂`                       |
//! | bilinear       | unit ℓq ball   | `−‖AᵀP‖_p` (surrogate, flagged) |
//!
//! and the p-player's minimum is `min_i L_i`.

use crate::dynamics::Trace;
use crate::error::{Error, Result};
use crate::linalg::{argmin, axpy, conjugate_exponent, dot, norm2, norm_p, project_unit_ball, scaled};
use crate::model::{Dataset, GameObjective};
use crate::scalar::{c, Scalar};

/// Set the w-player's comparator ranges over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Comparator<T> {
    /// All of ℝᵈ.
    Unconstrained,
    /// The unit ℓ2 ball.
    L2Ball,
    /// The unit ℓq ball. Used for the q-norm learner, whose true decision
    /// set ℝᵈ gives an unbounded bilinear minimum.
    QBall(T),
}

impl<T: Scalar> Comparator<T> {
    /// True when the comparator set is smaller than the learner's decision
    /// set, so the reported regret is the bounded-comparator surrogate.
    pub fn is_surrogate(&self) -> bool {
        matches!(self, Comparator::QBall(_))
    }

    /// Whether `w` lies in the set (with `T::invariant_slack()`).
    pub fn contains(&self, w: &[T]) -> bool {
        let one = T::one() + T::invariant_slack();
        match *self {
            Comparator::Unconstrained => true,
            Comparator::L2Ball => norm2(w) <= one,
            Comparator::QBall(q) => norm_p(w, q) <= one,
        }
    }
}

/// Regret value with the surrogate flag carried alongside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegretValue<T> {
    pub value: T,
    pub surrogate: bool,
}

/// Running sums from which both regrets follow in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretAccumulator<T> {
    objective: GameObjective,
    comparator: Comparator<T>,
    weight_sum: T,
    p_mix: Vec<T>,
    loss_sum: Vec<T>,
    w_played: T,
    p_played: T,
}

impl<T: Scalar> RegretAccumulator<T> {
    pub fn new(objective: GameObjective, comparator: Comparator<T>, n: usize) -> Self {
        Self {
            objective,
            comparator,
            weight_sum: T::zero(),
            p_mix: vec![T::zero(); n],
            loss_sum: vec![T::zero(); n],
            w_played: T::zero(),
            p_played: T::zero(),
        }
    }

    /// Records round `(α_t, w_t, p_t)`; `aw` is `A w_t`.
    pub fn push(&mut self, alpha: T, w: &[T], aw: &[T], p: &[T]) {
        let bilinear = dot(p, aw);
        let reg = match self.objective {
            GameObjective::Bilinear => T::zero(),
            GameObjective::L2Regularized => c::<T>(0.5) * dot(w, w),
        };
        self.weight_sum += alpha;
        axpy(alpha, p, &mut self.p_mix);
        axpy(alpha, aw, &mut self.loss_sum);
        self.w_played += alpha * (reg - bilinear);
        self.p_played += alpha * bilinear;
    }

    pub fn weight_sum(&self) -> T {
        self.weight_sum
    }

    /// `Σ α_t p_t`.
    pub fn p_mix(&self) -> &[T] {
        &self.p_mix
    }

    pub fn comparator(&self) -> Comparator<T> {
        self.comparator
    }

    /// `min_w Σ α_t h_t(w)` over the comparator set.
    pub fn w_comparator_value(&self, ds: &Dataset<T>) -> Result<T> {
        let g = ds.matrix().tr_mul_vec(&self.p_mix);
        let s = self.weight_sum;
        match (self.objective, self.comparator) {
            (GameObjective::L2Regularized, Comparator::Unconstrained) => {
                Ok(-dot(&g, &g) / (c::<T>(2.0) * s))
            }
            (GameObjective::L2Regularized, Comparator::L2Ball) => {
                let w = project_unit_ball(scaled(s.recip(), &g));
                Ok(-dot(&g, &w) + c::<T>(0.5) * s * dot(&w, &w))
            }
            (GameObjective::Bilinear, Comparator::L2Ball) => Ok(-norm2(&g)),
            (GameObjective::Bilinear, Comparator::QBall(q)) => Ok(-norm_p(&g, conjugate_exponent(q))),
            (GameObjective::Bilinear, Comparator::Unconstrained) => Err(Error::UnsupportedGeometry(
                "bilinear losses over unconstrained w have no finite minimum".into(),
            )),
            (GameObjective::L2Regularized, Comparator::QBall(_)) => Err(Error::UnsupportedGeometry(
                "regularized objective over a q-norm ball".into(),
            )),
        }
    }

    /// `R^w = Σ α_t h_t(w_t) − min_w Σ α_t h_t(w)`.
    pub fn regret_w(&self, ds: &Dataset<T>) -> Result<RegretValue<T>> {
        Ok(RegretValue {
            value: self.w_played - self.w_comparator_value(ds)?,
            surrogate: self.comparator.is_surrogate(),
        })
    }

    /// `R^p = Σ α_t ℓ_t(p_t) − min_i Σ α_t (A w_t)_i`. The regularizer
    /// enters both terms identically and is left out.
    pub fn regret_p(&self) -> T {
        self.p_played - argmin(&self.loss_sum).1
    }
}

fn rebuild<T: Scalar>(trace: &Trace<T>, ds: &Dataset<T>, objective: GameObjective) -> Result<RegretAccumulator<T>> {
    let (ws, ps) = trace.iterates().ok_or(Error::TraceNotRecorded)?;
    let mut acc = RegretAccumulator::new(objective, trace.comparator(), ds.n());
    for ((r, w), p) in trace.rounds().iter().zip(ws).zip(ps) {
        acc.push(r.alpha, w, &ds.matrix().mul_vec(w), p.as_slice());
    }
    Ok(acc)
}

/// Weighted regret of the w-player over a trace. Recomputed from the
/// per-round iterates when they were recorded, otherwise read from the
/// trace's running accumulator.
pub fn weighted_regret_w<T: Scalar>(
    trace: &Trace<T>,
    ds: &Dataset<T>,
    objective: GameObjective,
) -> Result<RegretValue<T>> {
    match rebuild(trace, ds, objective) {
        Ok(acc) => acc.regret_w(ds),
        Err(Error::TraceNotRecorded) if objective == trace.objective() => trace.accumulator().regret_w(ds),
        Err(e) => Err(e),
    }
}

/// Weighted regret of the p-player over a trace.
pub fn weighted_regret_p<T: Scalar>(trace: &Trace<T>, ds: &Dataset<T>, objective: GameObjective) -> Result<T> {
    match rebuild(trace, ds, objective) {
        Ok(acc) => Ok(acc.regret_p()),
        Err(Error::TraceNotRecorded) if objective == trace.objective() => Ok(trace.accumulator().regret_p()),
        Err(e) => Err(e),
    }
}
