use super::{require_horizon, require_l2};
use crate::dynamics::{DynamicsConfig, PlayOrder};
use crate::error::Result;
use crate::learners::LearnerSpec;
use crate::linalg::{gibbs, scaled};
use crate::model::{Dataset, GameObjective, SimplexPoint};
use crate::scalar::{c, Scalar};
use crate::schedule::{smooth_theta, WeightSchedule};

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothPerceptronState<T> {
    pub t: usize,
    pub v: Vec<T>,
    pub q: SimplexPoint<T>,
    pub theta: T,
    pub mu: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothRun<T> {
    /// `v_{T−1}`
    pub v: Vec<T>,
    /// `q_{T−1}`
    pub q: SimplexPoint<T>,
    /// States `t = 0, …, T−1`.
    pub states: Vec<SmoothPerceptronState<T>>,
}

/// `q_μ(v) = argmin_q qᵀAv + μ KL(q ‖ 1/n)`, i.e. the softmax of `−Av/μ`.
pub fn smoothed_response<T: Scalar>(ds: &Dataset<T>, v: &[T], mu: T) -> Result<SimplexPoint<T>> {
    let logits = scaled(-mu.recip(), &ds.matrix().mul_vec(v));
    gibbs(None, &logits).map(SimplexPoint)
}

/// Smooth Perceptron (excessive-gap form), returning `v_{T−1}` and `q_{T−1}`.
pub fn smooth_perceptron<T: Scalar>(ds: &Dataset<T>, horizon: usize) -> Result<SmoothRun<T>> {
    require_l2(ds, "smooth perceptron")?;
    require_horizon(horizon)?;
    let a = ds.matrix();
    let n = ds.n();
    let mut theta: T = smooth_theta(0);
    let mut mu: T = c(4.0);
    let mut v = a.tr_mul_vec(SimplexPoint::<T>::uniform(n).as_slice());
    let mut q = smoothed_response(ds, &v, mu)?;
    let mut states = Vec::with_capacity(horizon);
    states.push(SmoothPerceptronState { t: 0, v: v.clone(), q: q.clone(), theta, mu });

    for t in 1..horizon {
        let one_m = T::one() - theta;
        let aq = a.tr_mul_vec(q.as_slice());
        let a_resp = a.tr_mul_vec(smoothed_response(ds, &v, mu)?.as_slice());
        v = v
            .iter()
            .zip(&aq)
            .zip(&a_resp)
            .map(|((&vi, &qi), &ri)| one_m * (vi + theta * qi) + theta * theta * ri)
            .collect();
        mu = one_m * mu;
        let resp = smoothed_response(ds, &v, mu)?;
        q = SimplexPoint(
            q.as_slice()
                .iter()
                .zip(resp.as_slice())
                .map(|(&qi, &ri)| one_m * qi + theta * ri)
                .collect(),
        );
        theta = smooth_theta(t);
        states.push(SmoothPerceptronState { t, v: v.clone(), q: q.clone(), theta, mu });
    }
    Ok(SmoothRun { v, q, states })
}

/// Dynamics pairing: optimistic FTL for `w` against entropic FTRL⁺ (η = ¼)
/// for `p`, regularized objective, `α_t = t`, w moving first.
pub fn smooth_config<T: Scalar>(horizon: usize) -> DynamicsConfig<T> {
    DynamicsConfig {
        objective: GameObjective::L2Regularized,
        order: PlayOrder::WFirst,
        weight_schedule: WeightSchedule::Linear,
        w_learner: LearnerSpec::OftlPrevLoss,
        p_learner: LearnerSpec::FtrlPlusEntropy { eta: c(0.25) },
        horizon,
        record_full_trace: false,
    }
}
