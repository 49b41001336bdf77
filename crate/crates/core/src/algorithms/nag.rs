use super::{require_horizon, require_l2};
use crate::dynamics::{DynamicsConfig, PlayOrder};
use crate::error::Result;
use crate::learners::LearnerSpec;
use crate::linalg::{axpy, gibbs, scaled};
use crate::model::{Dataset, GameObjective, SimplexPoint};
use crate::scalar::{c, cu, Scalar};
use crate::schedule::WeightSchedule;

#[derive(Debug, Clone, PartialEq)]
pub struct NagState<T> {
    pub t: usize,
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub s: Vec<T>,
    /// Softmax of `−A u_t`.
    pub q: SimplexPoint<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NagRun<T> {
    /// `s_T`
    pub s: Vec<T>,
    /// States `t = 1, …, T`.
    pub states: Vec<NagState<T>>,
}

/// Exponential-loss empirical risk `R(u) = (1/n) Σ_i exp(−A_i u)`.
pub fn empirical_risk<T: Scalar>(ds: &Dataset<T>, u: &[T]) -> T {
    let au = ds.matrix().mul_vec(u);
    au.iter().map(|&z| (-z).exp()).sum::<T>() / cu(ds.n())
}

/// `∇R(u) = −(1/n) Σ_i exp(−A_i u) A_iᵀ`.
pub fn empirical_risk_gradient<T: Scalar>(ds: &Dataset<T>, u: &[T]) -> Vec<T> {
    let au = ds.matrix().mul_vec(u);
    let weights: Vec<T> = au.iter().map(|&z| -(-z).exp() / cu(ds.n())).collect();
    ds.matrix().tr_mul_vec(&weights)
}

fn lookahead<T: Scalar>(s: &[T], v: &[T], t: usize) -> Vec<T> {
    // v_0 = 0, so the singular coefficient at t = 1 contributes nothing
    if t == 1 {
        return s.to_vec();
    }
    let mut u = s.to_vec();
    axpy(cu::<T>(2 * (t - 1)).recip(), v, &mut u);
    u
}

/// Nesterov's accelerated gradient on the exponential loss with
/// `η_t = t / R(u_t)`. The step `−η_t ∇R(u_t)` is evaluated as `t Aᵀ q_t`
/// with `q_t` the softmax of `−A u_t`, which never overflows.
pub fn nag_margin<T: Scalar>(ds: &Dataset<T>, horizon: usize) -> Result<NagRun<T>> {
    require_l2(ds, "NAG")?;
    require_horizon(horizon)?;
    let a = ds.matrix();
    let d = ds.dim();
    let mut v = vec![T::zero(); d];
    let mut s = vec![T::zero(); d];
    let mut states = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let u = lookahead(&s, &v, t);
        let q = SimplexPoint(gibbs(None, &scaled(-T::one(), &a.mul_vec(&u)))?);
        axpy(cu(t), &a.tr_mul_vec(q.as_slice()), &mut v);
        axpy(cu::<T>(2 * (t + 1)).recip(), &v, &mut s);
        states.push(NagState { t, u, v: v.clone(), s: s.clone(), q });
    }
    Ok(NagRun { s, states })
}

/// The same recursion with the literal step `v_t = v_{t−1} − (t/R(u_t)) ∇R(u_t)`.
/// Overflows once margins grow; meant for small horizons.
pub fn nag_literal<T: Scalar>(ds: &Dataset<T>, horizon: usize) -> Result<NagRun<T>> {
    require_l2(ds, "NAG")?;
    require_horizon(horizon)?;
    let d = ds.dim();
    let mut v = vec![T::zero(); d];
    let mut s = vec![T::zero(); d];
    let mut states = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let u = lookahead(&s, &v, t);
        let eta = cu::<T>(t) / empirical_risk(ds, &u);
        axpy(-eta, &empirical_risk_gradient(ds, &u), &mut v);
        axpy(cu::<T>(2 * (t + 1)).recip(), &v, &mut s);
        let q = SimplexPoint(gibbs(None, &scaled(-T::one(), &ds.matrix().mul_vec(&u)))?);
        states.push(NagState { t, u, v: v.clone(), s: s.clone(), q });
    }
    Ok(NagRun { s, states })
}

/// Dynamics pairing: optimistic entropic FTRL (η = ¼, hint `ℓ_{t−1}`) for
/// `p` moving first, unregularized FTRL⁺ for `w`, regularized objective,
/// `α_t = t`.
pub fn nag_config<T: Scalar>(horizon: usize) -> DynamicsConfig<T> {
    DynamicsConfig {
        objective: GameObjective::L2Regularized,
        order: PlayOrder::PFirst,
        weight_schedule: WeightSchedule::Linear,
        w_learner: LearnerSpec::FtrlPlusUnregularized,
        p_learner: LearnerSpec::OftrlEntropyPrev { eta: c(0.25) },
        horizon,
        record_full_trace: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::model::build_dataset;

    fn ds() -> Dataset<f64> {
        let x = Matrix::from_rows(&[vec![0.6, 0.1], vec![0.2, -0.8], vec![0.3, 0.3]]).unwrap();
        build_dataset(&x, &[1.0, -1.0, 1.0], 2.0).unwrap()
    }

    #[test]
    fn first_round() {
        let d = ds();
        let r = nag_margin(&d, 1).unwrap();
        assert_eq!(r.states[0].u, vec![0.0, 0.0]);
        assert_eq!(r.states[0].q.as_slice(), &[1.0 / 3.0; 3]);
        let mean = d.matrix().tr_mul_vec(&[1.0 / 3.0; 3]);
        for (a, b) in r.states[0].v.iter().zip(&mean) {
            assert!((a - b).abs() < 1e-16);
        }
    }

    #[test]
    fn literal_and_stable_steps_agree() {
        let d = ds();
        let a = nag_margin(&d, 20).unwrap();
        let b = nag_literal(&d, 20).unwrap();
        for (x, y) in a.s.iter().zip(&b.s) {
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn risk_at_origin() {
        assert_eq!(empirical_risk(&ds(), &[0.0, 0.0]), 1.0);
    }
}
