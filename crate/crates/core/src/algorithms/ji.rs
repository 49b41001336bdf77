use super::smooth::smooth_config;
use super::{require_horizon, require_l2};
use crate::dynamics::DynamicsConfig;
use crate::error::Result;
use crate::linalg::{gibbs, scaled};
use crate::model::{Dataset, SimplexPoint};
use crate::scalar::Scalar;
use crate::schedule::{ji_beta, ji_theta};

#[derive(Debug, Clone, PartialEq)]
pub struct JiState<T> {
    pub t: usize,
    pub v: Vec<T>,
    /// Momentum `g_t`.
    pub g: Vec<T>,
    pub q: SimplexPoint<T>,
    /// `β_t = t/(t+1)`
    pub beta: T,
    /// `θ_{t−1} = t/(2(t+1))`, the coefficient used to reach this state.
    pub theta: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JiRun<T> {
    /// `v_T`
    pub v: Vec<T>,
    /// States `t = 0, …, T`.
    pub states: Vec<JiState<T>>,
}

/// Accelerated Perceptron in primal-dual momentum form with
/// `θ_{t−1} = t/(2(t+1))`, `β_t = t/(t+1)`.
pub fn accel_perceptron_ji<T: Scalar>(ds: &Dataset<T>, horizon: usize) -> Result<JiRun<T>> {
    require_l2(ds, "accelerated perceptron")?;
    require_horizon(horizon)?;
    let a = ds.matrix();
    let (n, d) = (ds.n(), ds.dim());
    let mut v = vec![T::zero(); d];
    let mut g = vec![T::zero(); d];
    let mut q = SimplexPoint::uniform(n);
    let mut states = Vec::with_capacity(horizon + 1);
    states.push(JiState {
        t: 0,
        v: v.clone(),
        g: g.clone(),
        q: q.clone(),
        beta: T::zero(),
        theta: T::zero(),
    });
    for t in 1..=horizon {
        let theta: T = ji_theta(t);
        let beta: T = ji_beta(t);
        let aq = a.tr_mul_vec(q.as_slice());
        for ((vi, gi), ai) in v.iter_mut().zip(&g).zip(&aq) {
            *vi -= theta * (*gi - *ai);
        }
        q = SimplexPoint(gibbs(None, &scaled(-T::one(), &a.mul_vec(&v)))?);
        let aq = a.tr_mul_vec(q.as_slice());
        for (gi, ai) in g.iter_mut().zip(&aq) {
            *gi = beta * (*gi - *ai);
        }
        states.push(JiState { t, v: v.clone(), g: g.clone(), q: q.clone(), beta, theta });
    }
    Ok(JiRun { v, states })
}

/// Same pairing as the smooth Perceptron; the original form outputs
/// `¼ Σ α_t w_t` instead of the average.
pub fn ji_config<T: Scalar>(horizon: usize) -> DynamicsConfig<T> {
    smooth_config(horizon)
}
