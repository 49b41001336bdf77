//! Step-size and weight schedules.
//!
//! These are generic over any exact or floating number type so the
//! recurrences can be checked against their closed forms in rational
//! arithmetic as well as in `f64`.

use num_traits::{FromPrimitive, Num};

fn n<N: FromPrimitive>(v: usize) -> N {
    N::from_usize(v).expect("small integers are representable")
}

/// Round weight `α_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightSchedule {
    /// `α_t = t`
    Linear,
    /// `α_t = 1`
    Uniform,
}

impl WeightSchedule {
    pub fn alpha<N: Num + FromPrimitive>(self, t: usize) -> N {
        match self {
            WeightSchedule::Linear => n(t),
            WeightSchedule::Uniform => N::one(),
        }
    }

    /// `Σ_{s≤t} α_s`.
    pub fn total<N: Num + FromPrimitive>(self, t: usize) -> N {
        match self {
            WeightSchedule::Linear => n::<N>(t * (t + 1)) / n(2),
            WeightSchedule::Uniform => n(t),
        }
    }
}

/// Smooth Perceptron `θ_t = 2/(t+3)`.
pub fn smooth_theta<N: Num + FromPrimitive>(t: usize) -> N {
    n::<N>(2) / n(t + 3)
}

/// Smooth Perceptron `μ_t` via the recurrence `μ_t = (1 − θ_{t−1}) μ_{t−1}`, `μ_0 = 4`.
pub fn smooth_mu_recurrence<N: Num + FromPrimitive + Clone>(t: usize) -> N {
    let mut mu: N = n(4);
    for s in 1..=t {
        mu = (N::one() - smooth_theta::<N>(s - 1)) * mu;
    }
    mu
}

/// Closed form `μ_t = 8 / ((t+1)(t+2))`.
pub fn smooth_mu_closed<N: Num + FromPrimitive>(t: usize) -> N {
    n::<N>(8) / n((t + 1) * (t + 2))
}

/// Accelerated Perceptron `θ_{t−1} = t/(2(t+1))`, indexed by `t ≥ 1`.
pub fn ji_theta<N: Num + FromPrimitive>(t: usize) -> N {
    n::<N>(t) / n(2 * (t + 1))
}

/// Accelerated Perceptron `β_t = t/(t+1)`.
pub fn ji_beta<N: Num + FromPrimitive>(t: usize) -> N {
    n::<N>(t) / n(t + 1)
}
