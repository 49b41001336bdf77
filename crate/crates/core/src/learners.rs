//! Closed-form online learners over the three geometries the dynamics use:
//! entropy on the simplex, Euclidean on ℝᵈ or the unit ball, and the
//! q-norm on ℝᵈ.
//!
//! Every learner keeps cumulative weighted loss *vectors* rather than
//! cumulative products, so no underflow compounds across rounds. For the
//! simplex player the accumulated vector is `Σ α_s A w_s`; for the
//! w-player it is `Σ α_s p_s` (the decision is then `Aᵀ` of a mixture).

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{self, axpy, gibbs, norm_p, project_unit_ball, scaled, Matrix};
use crate::model::{Dataset, SimplexPoint};
use crate::scalar::{c, cu, Scalar};

pub mod regret;

pub use regret::{weighted_regret_p, weighted_regret_w, Comparator, RegretAccumulator, RegretValue};

/// Which player a learner can drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    W,
    P,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LearnerSpec<T> {
    /// Optimistic FTL on ℝᵈ with the previous loss as hint.
    OftlPrevLoss,
    /// FTRL⁺ with entropy regularizer centred at the uniform distribution.
    FtrlPlusEntropy { eta: T },
    /// Optimistic FTRL with entropy regularizer and the previous loss as hint.
    OftrlEntropyPrev { eta: T },
    /// FTRL⁺ without regularizer on ℝᵈ (requires strongly convex losses).
    FtrlPlusUnregularized,
    /// Optimistic FTRL on ℝᵈ with regularizer `‖·‖_q² / (2(q−1))`.
    OftrlQNorm { eta: T, q: T },
    /// Optimistic mirror descent on the unit ℓ2 ball.
    OmdBall { eta: T },
    /// Optimistic mirror descent on the simplex (entropy).
    OmdEntropy { eta: T },
}

impl<T: Scalar> LearnerSpec<T> {
    pub fn side(&self) -> Side {
        match self {
            LearnerSpec::OftlPrevLoss
            | LearnerSpec::FtrlPlusUnregularized
            | LearnerSpec::OftrlQNorm { .. }
            | LearnerSpec::OmdBall { .. } => Side::W,
            LearnerSpec::FtrlPlusEntropy { .. }
            | LearnerSpec::OftrlEntropyPrev { .. }
            | LearnerSpec::OmdEntropy { .. } => Side::P,
        }
    }

    pub fn eta(&self) -> Option<T> {
        match *self {
            LearnerSpec::FtrlPlusEntropy { eta }
            | LearnerSpec::OftrlEntropyPrev { eta }
            | LearnerSpec::OftrlQNorm { eta, .. }
            | LearnerSpec::OmdBall { eta }
            | LearnerSpec::OmdEntropy { eta } => Some(eta),
            LearnerSpec::OftlPrevLoss | LearnerSpec::FtrlPlusUnregularized => None,
        }
    }

    /// Same learner with its step size multiplied by `factor`.
    pub fn with_eta_scaled(self, factor: T) -> Self {
        match self {
            LearnerSpec::FtrlPlusEntropy { eta } => LearnerSpec::FtrlPlusEntropy { eta: eta * factor },
            LearnerSpec::OftrlEntropyPrev { eta } => LearnerSpec::OftrlEntropyPrev { eta: eta * factor },
            LearnerSpec::OftrlQNorm { eta, q } => LearnerSpec::OftrlQNorm { eta: eta * factor, q },
            LearnerSpec::OmdBall { eta } => LearnerSpec::OmdBall { eta: eta * factor },
            LearnerSpec::OmdEntropy { eta } => LearnerSpec::OmdEntropy { eta: eta * factor },
            other => other,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(eta) = self.eta() {
            if !(eta > T::zero()) || !eta.is_finite() {
                return Err(Error::IncompatibleConfig(format!(
                    "step size must be positive and finite, got {eta}"
                )));
            }
        }
        if let LearnerSpec::OftrlQNorm { q, .. } = *self {
            if !(q > T::one() && q <= c(2.0)) {
                return Err(Error::IncompatibleConfig(format!("q must lie in (1, 2], got {q}")));
            }
        }
        Ok(())
    }
}

/// Mutable bookkeeping of one learner within one run.
#[derive(Debug, Clone, PartialEq)]
pub struct LearnerState<T> {
    round: usize,
    weight_sum: T,
    acc: Vec<T>,
    prev: Vec<T>,
    secondary: Vec<T>,
}

impl<T: Scalar> LearnerState<T> {
    /// State for a simplex player over `n` rows: `p_0 = p̂_0 = 1/n`.
    pub fn simplex(n: usize) -> Self {
        let u = SimplexPoint::<T>::uniform(n).into_vec();
        Self {
            round: 0,
            weight_sum: T::zero(),
            acc: vec![T::zero(); n],
            prev: u.clone(),
            secondary: u,
        }
    }

    /// State for a w-player facing `n` rows in dimension `d`:
    /// `w_0 = ŵ_0 = 0`.
    pub fn vector(n: usize, d: usize) -> Self {
        Self {
            round: 0,
            weight_sum: T::zero(),
            acc: vec![T::zero(); n],
            prev: vec![T::zero(); d],
            secondary: vec![T::zero(); d],
        }
    }

    /// Absorbs the weighted loss statistic of the round just played.
    pub fn observe(&mut self, alpha: T, stat: &[T]) {
        axpy(alpha, stat, &mut self.acc);
        self.weight_sum += alpha;
        self.round += 1;
    }

    /// Number of losses absorbed.
    pub fn round(&self) -> usize {
        self.round
    }

    /// `Σ_s α_s` over absorbed rounds.
    pub fn weight_sum(&self) -> T {
        self.weight_sum
    }

    /// Accumulated weighted statistic.
    pub fn accumulated(&self) -> &[T] {
        &self.acc
    }

    /// Last decision returned by a step.
    pub fn previous(&self) -> &[T] {
        &self.prev
    }

    /// OMD secondary iterate `ẑ_{t−1}`.
    pub fn secondary(&self) -> &[T] {
        &self.secondary
    }

    fn acc_plus(&self, alpha: T, v: &[T]) -> Vec<T> {
        let mut m = self.acc.clone();
        axpy(alpha, v, &mut m);
        m
    }
}

fn check_finite<T: Scalar>(v: &[T], what: &'static str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// FTRL⁺ with entropy regularizer: absorbs `ℓ_t = A w_t` with weight `α_t`
/// and returns `p_t ∝ exp(−η Σ_{s≤t} α_s ℓ_s)`.
pub fn entropy_ftrl_plus_step<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    loss: &[T],
    eta: T,
) -> Result<SimplexPoint<T>> {
    state.observe(alpha, loss);
    check_finite(&state.acc, "accumulated loss")?;
    let p = gibbs(None, &scaled(-eta, &state.acc))?;
    state.prev.clone_from(&p);
    Ok(SimplexPoint(p))
}

/// Optimistic FTRL with entropy regularizer: `p_t ∝ exp(−η[Σ_{s<t} α_s ℓ_s + α_t hint])`.
/// The realized loss is absorbed afterwards with [`LearnerState::observe`].
pub fn entropy_oftrl_step<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    hint: &[T],
    eta: T,
) -> Result<SimplexPoint<T>> {
    let mixed = state.acc_plus(alpha, hint);
    check_finite(&mixed, "accumulated loss")?;
    let p = gibbs(None, &scaled(-eta, &mixed))?;
    state.prev.clone_from(&p);
    Ok(SimplexPoint(p))
}

/// Optimistic FTL for `h_s(w) = −p_sᵀAw + ½‖w‖²` with hint `h_{t−1}`:
/// `w_t = Aᵀ(Σ_{s<t} α_s p_s + α_t p_{t−1}) / Σ_{s≤t} α_s`.
pub fn oftl_w_step<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    hint: &SimplexPoint<T>,
    ds: &Dataset<T>,
) -> Vec<T> {
    let mixed = state.acc_plus(alpha, hint.as_slice());
    let total = state.weight_sum + alpha;
    let w = scaled(total.recip(), &ds.matrix().tr_mul_vec(&mixed));
    state.prev.clone_from(&w);
    w
}

/// Leader of the losses absorbed so far, `w̃_{t+1} = Aᵀ(Σ_{s≤t} α_s p_s) / Σ_{s≤t} α_s`
/// (the comparator point used in the OFTL regret analysis).
pub fn ftl_leader<T: Scalar>(state: &LearnerState<T>, ds: &Dataset<T>) -> Vec<T> {
    scaled(state.weight_sum.recip(), &ds.matrix().tr_mul_vec(&state.acc))
}

/// FTRL⁺ without regularizer for `h_j(w) = −p_jᵀAw + ½‖w‖²`: absorbs `p_t`
/// and returns `w_t = Aᵀ(Σ_{j≤t} α_j p_j) / Σ_{j≤t} α_j`.
pub fn unregularized_ftrl_w_step<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    p: &SimplexPoint<T>,
    ds: &Dataset<T>,
) -> Vec<T> {
    state.observe(alpha, p.as_slice());
    let w = ftl_leader(state, ds);
    state.prev.clone_from(&w);
    w
}

/// `∇R*(θ)` for `R(w) = ‖w‖_q² / (2(q−1))`:
/// `w_i = (q−1) sign(θ_i) |θ_i|^{p−1} ‖θ‖_p^{2−p}` with `1/p + 1/q = 1`.
pub fn qnorm_dual_map<T: Scalar>(theta: &[T], q: T) -> Vec<T> {
    let p = linalg::conjugate_exponent(q);
    let norm = norm_p(theta, p);
    if norm == T::zero() {
        return vec![T::zero(); theta.len()];
    }
    let qm1 = q - T::one();
    // (|θ_i| / ‖θ‖)^{p−1} · ‖θ‖ avoids overflow for large p
    theta
        .iter()
        .map(|&t| qm1 * t.signum() * (t.abs() / norm).powf(p - T::one()) * norm)
        .map(|v| if v.is_nan() { T::zero() } else { v })
        .collect()
}

/// `R(w) = ‖w‖_q² / (2(q−1))`.
pub fn qnorm_regularizer<T: Scalar>(w: &[T], q: T) -> T {
    let n = norm_p(w, q);
    n * n / (c::<T>(2.0) * (q - T::one()))
}

/// `∇R(w)_i = ‖w‖_q^{2−q} sign(w_i) |w_i|^{q−1} / (q−1)`.
pub fn qnorm_regularizer_gradient<T: Scalar>(w: &[T], q: T) -> Vec<T> {
    let norm = norm_p(w, q);
    if norm == T::zero() {
        return vec![T::zero(); w.len()];
    }
    let qm1 = q - T::one();
    w.iter()
        .map(|&v| v.signum() * (v.abs() / norm).powf(qm1) * norm / qm1)
        .map(|v| if v.is_nan() { T::zero() } else { v })
        .collect()
}

/// Checks `∇R(∇R*(θ)) = θ`, with `∇R` taken by central differences of
/// `R`, on a few fixed vectors. Run once per process before the q-norm
/// learner is used.
pub fn dual_map_self_test() -> Result<()> {
    static RESULT: OnceLock<Result<()>> = OnceLock::new();
    RESULT
        .get_or_init(|| {
            // coordinates of comparable size keep every |w_i| well above the
            // difference step, even for p = 11
            let thetas: [[f64; 4]; 3] = [
                [0.5, -0.7, 0.45, 0.6],
                [-1.2, 0.9, 0.8, -1.0],
                [0.0, 0.6, -0.6, 0.4],
            ];
            for &q in &[1.1_f64, 1.5, 2.0] {
                for theta in &thetas {
                    let w = qnorm_dual_map(theta, q);
                    let h = 1e-7;
                    for i in 0..4 {
                        let mut plus = w.clone();
                        let mut minus = w.clone();
                        plus[i] += h;
                        minus[i] -= h;
                        let g = (qnorm_regularizer(&plus, q) - qnorm_regularizer(&minus, q)) / (2.0 * h);
                        if (g - theta[i]).abs() > 1e-6 * (1.0 + theta[i].abs()) {
                            return Err(Error::NonFinite("q-norm dual map self-test"));
                        }
                    }
                }
            }
            Ok(())
        })
        .clone()
}

/// Optimistic FTRL on ℝᵈ with the q-norm regularizer anchored at 0 and
/// bilinear losses `h_j(w) = −p_jᵀAw`:
/// `w_t = ∇R*(η Aᵀ(Σ_{s<t} α_s p_s + α_t p_{t−1}))`.
pub fn qnorm_oftrl_step<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    hint: &SimplexPoint<T>,
    ds: &Dataset<T>,
    eta: T,
    q: T,
) -> Vec<T> {
    let mixed = state.acc_plus(alpha, hint.as_slice());
    let theta = scaled(eta, &ds.matrix().tr_mul_vec(&mixed));
    let w = qnorm_dual_map(&theta, q);
    state.prev.clone_from(&w);
    w
}

/// First half of the ball OMD step: `w_t = Π(ŵ_{t−1} − η α_t hint)`.
pub fn omd_ball_predict<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    hint_gradient: &[T],
    eta: T,
) -> Vec<T> {
    let mut z = state.secondary.clone();
    axpy(-eta * alpha, hint_gradient, &mut z);
    let w = project_unit_ball(z);
    state.prev.clone_from(&w);
    w
}

/// Second half: `ŵ_t = Π(ŵ_{t−1} − η α_t g_t)`.
pub fn omd_ball_update<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    realized_gradient: &[T],
    eta: T,
) -> Vec<T> {
    let mut z = state.secondary.clone();
    axpy(-eta * alpha, realized_gradient, &mut z);
    state.secondary = project_unit_ball(z);
    state.weight_sum += alpha;
    state.round += 1;
    state.secondary.clone()
}

/// Both halves of the ball OMD step, returning `(w_t, ŵ_t)`.
pub fn omd_ball_step<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    hint_gradient: &[T],
    realized_gradient: &[T],
    eta: T,
) -> (Vec<T>, Vec<T>) {
    let w = omd_ball_predict(state, alpha, hint_gradient, eta);
    let w_hat = omd_ball_update(state, alpha, realized_gradient, eta);
    (w, w_hat)
}

fn check_positive<T: Scalar>(p: &[T]) -> Result<()> {
    match p.iter().position(|&v| !(v > T::zero())) {
        Some(i) => Err(Error::Degenerate(i)),
        None => Ok(()),
    }
}

/// First half of the entropic OMD step: `p_t ∝ p̂_{t−1} exp(−η α_t hint)`.
pub fn omd_simplex_predict<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    hint_gradient: &[T],
    eta: T,
) -> Result<SimplexPoint<T>> {
    check_positive(&state.secondary)?;
    check_finite(hint_gradient, "OMD hint")?;
    let p = gibbs(Some(&state.secondary), &scaled(-eta * alpha, hint_gradient))?;
    state.prev.clone_from(&p);
    Ok(SimplexPoint(p))
}

/// Second half: `p̂_t ∝ p̂_{t−1} exp(−η α_t g_t)`.
pub fn omd_simplex_update<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    realized_gradient: &[T],
    eta: T,
) -> Result<SimplexPoint<T>> {
    check_positive(&state.secondary)?;
    check_finite(realized_gradient, "OMD gradient")?;
    let p = gibbs(Some(&state.secondary), &scaled(-eta * alpha, realized_gradient))?;
    state.secondary.clone_from(&p);
    state.weight_sum += alpha;
    state.round += 1;
    Ok(SimplexPoint(p))
}

/// Both halves of the entropic OMD step, returning `(p_t, p̂_t)`.
pub fn omd_simplex_step<T: Scalar>(
    state: &mut LearnerState<T>,
    alpha: T,
    hint_gradient: &[T],
    realized_gradient: &[T],
    eta: T,
) -> Result<(SimplexPoint<T>, SimplexPoint<T>)> {
    let p = omd_simplex_predict(state, alpha, hint_gradient, eta)?;
    let p_hat = omd_simplex_update(state, alpha, realized_gradient, eta)?;
    Ok((p, p_hat))
}

/// Default step size of the OMD players in the mirror-prox pairing:
/// `1/√log n` for the ball, `√log n` for the simplex.
pub fn mirror_prox_etas<T: Scalar>(n: usize) -> Result<(T, T)> {
    if n < 2 {
        return Err(Error::IncompatibleConfig(
            "mirror-prox step sizes need n >= 2 (log n > 0)".into(),
        ));
    }
    let s = cu::<T>(n).ln().sqrt();
    Ok((s.recip(), s))
}

#[allow(dead_code)]
pub(crate) fn dense<T: Scalar>(rows: &[Vec<T>]) -> Matrix<T> {
    Matrix::from_rows(rows).expect("well-formed rows")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_dataset;

    fn tiny() -> Dataset<f64> {
        let x = dense(&[vec![0.6, 0.0], vec![0.0, -0.8], vec![0.3, 0.3]]);
        build_dataset(&x, &[1.0, 1.0, -1.0], 2.0).unwrap()
    }

    #[test]
    fn ftrl_entropy_known_values() {
        let mut st = LearnerState::simplex(3);
        let p = entropy_ftrl_plus_step(&mut st, 1.0, &[0.0, 0.0, 0.0], 0.25).unwrap();
        assert_eq!(p.as_slice(), &[1.0 / 3.0; 3]);

        let mut st = LearnerState::simplex(2);
        let p = entropy_ftrl_plus_step(&mut st, 1.0, &[0.0, 4.0], 0.25).unwrap();
        let z = 1.0 + (-1.0_f64).exp();
        assert!((p.as_slice()[0] - 1.0 / z).abs() < 1e-15);
        assert!((p.as_slice()[0] - 0.731_058_578_630_004_9).abs() < 1e-12);
        assert!((p.as_slice()[1] - 0.268_941_421_369_995_1).abs() < 1e-12);
    }

    #[test]
    fn oftrl_matches_ftrl_plus_when_hint_is_exact() {
        let losses = [[0.1, -0.4, 0.3], [0.2, 0.2, -0.5], [-0.3, 0.1, 0.0]];
        let mut a = LearnerState::simplex(3);
        let mut b = LearnerState::simplex(3);
        for (t, l) in losses.iter().enumerate() {
            let alpha = (t + 1) as f64;
            let pa = entropy_oftrl_step(&mut a, alpha, l, 0.25).unwrap();
            a.observe(alpha, l);
            let pb = entropy_ftrl_plus_step(&mut b, alpha, l, 0.25).unwrap();
            assert_eq!(pa, pb);
        }
        let mut fresh = LearnerState::<f64>::simplex(4);
        let p = entropy_oftrl_step(&mut fresh, 1.0, &[0.0; 4], 0.25).unwrap();
        assert_eq!(p.as_slice(), &[0.25; 4]);
    }

    #[test]
    fn entropy_rejects_non_finite() {
        let mut st = LearnerState::simplex(2);
        assert!(entropy_ftrl_plus_step(&mut st, 1.0, &[f64::INFINITY, 0.0], 0.25).is_err());
    }

    #[test]
    fn oftl_first_round_is_mean_row() {
        let ds = tiny();
        let mut st = LearnerState::vector(3, 2);
        let w = oftl_w_step(&mut st, 1.0, &SimplexPoint::uniform(3), &ds);
        let expect = ds.matrix().tr_mul_vec(&[1.0 / 3.0; 3]);
        for (a, b) in w.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_mixture_gives_constant_decision() {
        let ds = tiny();
        let p = SimplexPoint::new(vec![0.2, 0.5, 0.3]).unwrap();
        let target = ds.matrix().tr_mul_vec(p.as_slice());
        let mut a = LearnerState::vector(3, 2);
        let mut b = LearnerState::vector(3, 2);
        for t in 1..=5 {
            let alpha = t as f64;
            let w1 = oftl_w_step(&mut a, alpha, &p, &ds);
            a.observe(alpha, p.as_slice());
            let w2 = unregularized_ftrl_w_step(&mut b, alpha, &p, &ds);
            for i in 0..2 {
                assert!((w1[i] - target[i]).abs() < 1e-15);
                assert!((w2[i] - target[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dual_map_basics() {
        let th = [0.3, -0.2, 0.9];
        assert_eq!(qnorm_dual_map(&th, 2.0), th.to_vec());
        assert_eq!(qnorm_dual_map(&[0.0, 0.0], 1.5), vec![0.0, 0.0]);
        assert!(dual_map_self_test().is_ok());
        // partial zeros survive
        let w = qnorm_dual_map(&[0.0, 1.0], 1.5);
        assert_eq!(w[0], 0.0);
    }

    #[test]
    fn qnorm_oftrl_q2_is_scaled_mean_row() {
        let ds = tiny();
        let mut st = LearnerState::vector(3, 2);
        let w = qnorm_oftrl_step(&mut st, 1.0, &SimplexPoint::uniform(3), &ds, 0.7, 2.0);
        let expect = scaled(0.7, &ds.matrix().tr_mul_vec(&[1.0 / 3.0; 3]));
        for (a, b) in w.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-15);
        }
        // zero accumulated gradient
        let ds0 = build_dataset(&dense(&[vec![0.5, 0.0], vec![-0.5, 0.0]]), &[1.0, 1.0], 2.0).unwrap();
        let mut st = LearnerState::vector(2, 2);
        let w = qnorm_oftrl_step(&mut st, 1.0, &SimplexPoint::uniform(2), &ds0, 0.7, 1.5);
        assert_eq!(w, vec![0.0, 0.0]);
    }

    #[test]
    fn omd_ball_cases() {
        let mut st = LearnerState::<f64>::vector(1, 2);
        let (w, wh) = omd_ball_step(&mut st, 1.0, &[0.0, 0.0], &[0.0, 0.0], 0.5);
        assert_eq!((w, wh), (vec![0.0, 0.0], vec![0.0, 0.0]));

        let mut st = LearnerState::<f64>::vector(1, 2);
        let (w, _) = omd_ball_step(&mut st, 1.0, &[0.4, -0.2], &[0.0, 0.0], 0.5);
        assert_eq!(w, vec![-0.2, 0.1]);

        // η‖g‖ = 2 from the origin lands on the sphere in direction −g
        let mut st = LearnerState::<f64>::vector(1, 2);
        let (w, _) = omd_ball_step(&mut st, 1.0, &[3.0, 4.0], &[0.0, 0.0], 0.4);
        assert!((w[0] + 0.6).abs() < 1e-15 && (w[1] + 0.8).abs() < 1e-15);
    }

    #[test]
    fn omd_simplex_cases() {
        let mut st = LearnerState::<f64>::simplex(3);
        let (p, ph) = omd_simplex_step(&mut st, 1.0, &[0.0; 3], &[0.0; 3], 1.0).unwrap();
        assert_eq!(p.as_slice(), &[1.0 / 3.0; 3]);
        assert_eq!(ph.as_slice(), &[1.0 / 3.0; 3]);
        let (p, _) = omd_simplex_step(&mut st, 1.0, &[2.5; 3], &[0.0; 3], 1.0).unwrap();
        for v in p.as_slice() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn omd_simplex_degenerate_prior() {
        let mut st = LearnerState::<f64>::simplex(2);
        st.secondary = vec![1.0, 0.0];
        assert_eq!(
            omd_simplex_step(&mut st, 1.0, &[0.0; 2], &[0.0; 2], 1.0).unwrap_err(),
            Error::Degenerate(1)
        );
    }

    #[test]
    fn spec_validation() {
        assert!(LearnerSpec::OftrlQNorm { eta: 1.0, q: 2.5 }.validate().is_err());
        assert!(LearnerSpec::OftrlQNorm { eta: 1.0, q: 1.0 }.validate().is_err());
        assert!(LearnerSpec::FtrlPlusEntropy { eta: 0.0 }.validate().is_err());
        assert!(LearnerSpec::<f64>::OftlPrevLoss.validate().is_ok());
        assert_eq!(LearnerSpec::OmdBall { eta: 1.0 }.side(), Side::W);
        assert_eq!(
            LearnerSpec::FtrlPlusEntropy { eta: 0.25 }.with_eta_scaled(2.0),
            LearnerSpec::FtrlPlusEntropy { eta: 0.5 }
        );
    }

    #[test]
    fn mirror_prox_etas_need_two_rows() {
        assert!(mirror_prox_etas::<f64>(1).is_err());
        let (a, b) = mirror_prox_etas::<f64>(8).unwrap();
        assert!((a * b - 1.0).abs() < 1e-15);
    }
}
