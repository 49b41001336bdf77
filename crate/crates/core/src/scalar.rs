//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// Every algorithm in this crate is written against this trait. The
/// acceptance tolerances are pinned for `f64`; `f32` runs are supported but
/// only meet proportionally looser tolerances.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Slack used when checking norm and simplex invariants.
    fn invariant_slack() -> Self;

    /// Lower bound applied to multiplicative-weights coordinates before
    /// renormalization.
    fn underflow_floor() -> Self;

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 always converts to a float scalar")
    }

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize always converts to a float scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn invariant_slack() -> Self {
        crate::config::INVARIANT_SLACK
    }

    fn underflow_floor() -> Self {
        crate::config::UNDERFLOW_FLOOR
    }
}

impl Scalar for f32 {
    // 1e-12 is below f32 resolution; scale the slack with the epsilon.
    fn invariant_slack() -> Self {
        8.0 * f32::EPSILON
    }

    fn underflow_floor() -> Self {
        f32::MIN_POSITIVE
    }
}

/// Shorthand for `T::from_f64_lossy`.
#[inline]
pub(crate) fn c<T: Scalar>(v: f64) -> T {
    T::from_f64_lossy(v)
}

/// Shorthand for `T::from_usize_lossy`.
#[inline]
pub(crate) fn cu<T: Scalar>(v: usize) -> T {
    T::from_usize_lossy(v)
}
