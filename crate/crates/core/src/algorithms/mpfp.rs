use super::{require_horizon, require_l2};
use crate::dynamics::{DynamicsConfig, PlayOrder};
use crate::error::{Error, Result};
use crate::learners::{mirror_prox_etas, LearnerSpec};
use crate::linalg::{axpy, gibbs, project_unit_ball, scaled};
use crate::model::{Dataset, GameObjective, SimplexPoint};
use crate::scalar::{c, cu, Scalar};
use crate::schedule::WeightSchedule;

/// Mirror-prox constants for the unit ball (`½‖·‖₂²`) times the simplex
/// (entropy).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpfpConstants<T> {
    /// `Ω_w = ½`
    pub omega_w: T,
    /// `Ω_p = log n`
    pub omega_p: T,
    /// `γ_t = 1/(√Ω_p + √Ω_w)`
    pub gamma: T,
    /// `α_w = √Ω_p/(√Ω_p + √Ω_w)`
    pub alpha_w: T,
    /// `α_p = 1/(√Ω_p (√Ω_p + √Ω_w))`
    pub alpha_p: T,
}

impl<T: Scalar> MpfpConstants<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::IncompatibleConfig("mirror-prox needs n >= 2".into()));
        }
        let omega_w: T = c(0.5);
        let omega_p = cu::<T>(n).ln();
        let (sw, sp) = (omega_w.sqrt(), omega_p.sqrt());
        Ok(Self {
            omega_w,
            omega_p,
            gamma: (sp + sw).recip(),
            alpha_w: sp / (sp + sw),
            alpha_p: (sp * (sp + sw)).recip(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MpfpState<T> {
    pub t: usize,
    /// `u_t = [x_t; y_t]`
    pub x: Vec<T>,
    pub y: SimplexPoint<T>,
    /// `v_{t+1} = [x̂_t; ŷ_t]`
    pub x_hat: Vec<T>,
    pub y_hat: SimplexPoint<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MpfpRun<T> {
    /// Ball part of `z_T`.
    pub z_w: Vec<T>,
    /// Simplex part of `z_T`.
    pub z_p: SimplexPoint<T>,
    pub constants: MpfpConstants<T>,
    /// States `t = 1, …, T`.
    pub states: Vec<MpfpState<T>>,
}

struct Prox<'a, T> {
    ds: &'a Dataset<T>,
    k: MpfpConstants<T>,
}

impl<T: Scalar> Prox<'_, T> {
    /// `Prox_{[x̂; ŷ]}(γ F(x, y))` with `F(x, y) = [−Aᵀy; Ax]`, factorized
    /// into a ball step and a multiplicative-weights step.
    fn apply(&self, x_hat: &[T], y_hat: &[T], x: &[T], y: &[T]) -> Result<(Vec<T>, Vec<T>)> {
        let a = self.ds.matrix();
        let k = self.k;
        let mut z = x_hat.to_vec();
        axpy(k.gamma / k.alpha_w, &a.tr_mul_vec(y), &mut z);
        let new_x = project_unit_ball(z);
        let new_y = gibbs(Some(y_hat), &scaled(-(k.gamma / k.alpha_p), &a.mul_vec(x)))?;
        Ok((new_x, new_y))
    }
}

/// Mirror-prox for the bilinear feasibility game over the unit ball and the
/// simplex, started at `[0; 1/n]`.
pub fn mpfp<T: Scalar>(ds: &Dataset<T>, horizon: usize) -> Result<MpfpRun<T>> {
    require_l2(ds, "mirror-prox")?;
    require_horizon(horizon)?;
    let k = MpfpConstants::new(ds.n())?;
    let prox = Prox { ds, k };
    let (n, d) = (ds.n(), ds.dim());
    let mut x_hat = vec![T::zero(); d];
    let mut y_hat = SimplexPoint::<T>::uniform(n).into_vec();
    let mut sum_x = vec![T::zero(); d];
    let mut sum_y = vec![T::zero(); n];
    let mut gamma_sum = T::zero();
    let mut states = Vec::with_capacity(horizon);
    for t in 1..=horizon {
        let (x, y) = prox.apply(&x_hat, &y_hat, &x_hat, &y_hat)?;
        let (nx, ny) = prox.apply(&x_hat, &y_hat, &x, &y)?;
        x_hat = nx;
        y_hat = ny;
        axpy(k.gamma, &x, &mut sum_x);
        axpy(k.gamma, &y, &mut sum_y);
        gamma_sum += k.gamma;
        states.push(MpfpState {
            t,
            x,
            y: SimplexPoint(y),
            x_hat: x_hat.clone(),
            y_hat: SimplexPoint(y_hat.clone()),
        });
    }
    Ok(MpfpRun {
        z_w: scaled(gamma_sum.recip(), &sum_x),
        z_p: SimplexPoint(scaled(gamma_sum.recip(), &sum_y)),
        constants: k,
        states,
    })
}

/// Dynamics pairing: optimistic mirror descent on the ball (η = 1/√log n)
/// against entropic mirror descent (η = √log n), each using the opponent's
/// secondary iterate as hint; bilinear objective, `α_t = 1`.
pub fn mpfp_config<T: Scalar>(n: usize, horizon: usize) -> Result<DynamicsConfig<T>> {
    let (eta_w, eta_p) = mirror_prox_etas(n)?;
    Ok(DynamicsConfig {
        objective: GameObjective::Bilinear,
        order: PlayOrder::WFirst,
        weight_schedule: WeightSchedule::Uniform,
        w_learner: LearnerSpec::OmdBall { eta: eta_w },
        p_learner: LearnerSpec::OmdEntropy { eta: eta_p },
        horizon,
        record_full_trace: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let k = MpfpConstants::<f64>::new(8).unwrap();
        let ln = 8f64.ln();
        assert!((k.gamma - 1.0 / (ln.sqrt() + 0.5f64.sqrt())).abs() < 1e-15);
        assert!((k.gamma / k.alpha_w - 1.0 / ln.sqrt()).abs() < 1e-14);
        assert!((k.gamma / k.alpha_p - ln.sqrt()).abs() < 1e-14);
        assert!(MpfpConstants::<f64>::new(1).is_err());
    }
}
