use super::require_horizon;
use crate::dynamics::{run_dynamics, DynamicsConfig, PlayOrder, Trace};
use crate::error::{Error, Result};
use crate::learners::LearnerSpec;
use crate::linalg::{conjugate_exponent, norm_p};
use crate::model::{Dataset, GameObjective};
use crate::scalar::{c, cu, Scalar};
use crate::schedule::WeightSchedule;

#[derive(Debug, Clone, PartialEq)]
pub struct PnormRun<T> {
    /// `(1/T) Σ w_t`
    pub w_bar: Vec<T>,
    pub trace: Trace<T>,
}

/// `(η^w, η^p)` with `η^w = √(1/(2(q−1) log n))` and `η^p = 1/η^w`.
pub fn pnorm_etas<T: Scalar>(n: usize, q: T) -> Result<(T, T)> {
    if n < 2 {
        return Err(Error::IncompatibleConfig("p-norm step sizes need n >= 2".into()));
    }
    let eta_w = (c::<T>(2.0) * (q - T::one()) * cu::<T>(n).ln()).recip().sqrt();
    Ok((eta_w, eta_w.recip()))
}

/// Dynamics for the p-norm Perceptron: optimistic FTRL with regularizer
/// `‖·‖_q²/(2(q−1))` against entropic FTRL⁺, bilinear objective, `α_t = 1`.
pub fn pnorm_config<T: Scalar>(n: usize, horizon: usize, p_exp: T) -> Result<DynamicsConfig<T>> {
    if !(p_exp >= c(2.0)) || !p_exp.is_finite() {
        return Err(Error::BadNormExponent(p_exp.to_f64_lossy()));
    }
    let q = conjugate_exponent(p_exp);
    let (eta_w, eta_p) = pnorm_etas(n, q)?;
    Ok(DynamicsConfig {
        objective: GameObjective::Bilinear,
        order: PlayOrder::WFirst,
        weight_schedule: WeightSchedule::Uniform,
        w_learner: LearnerSpec::OftrlQNorm { eta: eta_w, q },
        p_learner: LearnerSpec::FtrlPlusEntropy { eta: eta_p },
        horizon,
        record_full_trace: false,
    })
}

/// Accelerated p-norm Perceptron. Rows must satisfy `‖A_i‖_{p_exp} ≤ 1`.
pub fn pnorm_accelerated<T: Scalar>(ds: &Dataset<T>, horizon: usize, p_exp: T) -> Result<PnormRun<T>> {
    require_horizon(horizon)?;
    let cfg = pnorm_config(ds.n(), horizon, p_exp)?;
    let slack = T::one() + T::invariant_slack();
    if let Some(i) = ds.matrix().iter_rows().position(|r| norm_p(r, p_exp) > slack) {
        return Err(Error::RowNormViolation(i));
    }
    let trace = run_dynamics(&cfg, ds)?;
    Ok(PnormRun {
        w_bar: trace.running_average(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_sizes() {
        let (w, p) = pnorm_etas::<f64>(2, 1.5).unwrap();
        assert!((w - (1.0 / (2.0 * 0.5 * 2f64.ln())).sqrt()).abs() < 1e-15);
        assert!((w * p - 1.0).abs() < 1e-15);
        assert!(pnorm_config::<f64>(4, 10, 1.5).is_err());
    }
}
