//! The accelerated Perceptrons in their original iterative forms, the
//! dynamics configurations they correspond to, and the checkers tying the
//! two together.

mod certificate;
mod equivalence;
mod ji;
mod mpfp;
mod nag;
mod pnorm;
mod smooth;
mod vanilla;

pub use certificate::{infeasibility_certificate, Certificate};
pub use equivalence::{check_equivalence, check_equivalence_with, Deviation, Equivalence, EquivalenceReport};
pub use ji::{accel_perceptron_ji, ji_config, JiRun, JiState};
pub use mpfp::{mpfp, mpfp_config, MpfpConstants, MpfpRun, MpfpState};
pub use nag::{empirical_risk, empirical_risk_gradient, nag_config, nag_literal, nag_margin, NagRun, NagState};
pub use pnorm::{pnorm_accelerated, pnorm_config, pnorm_etas, PnormRun};
pub use smooth::{smooth_config, smooth_perceptron, smoothed_response, SmoothPerceptronState, SmoothRun};
pub use vanilla::{vanilla_perceptron, vanilla_perceptron_from, VanillaRun};

use crate::error::{Error, Result};
use crate::model::Dataset;
use crate::scalar::Scalar;

pub(crate) fn require_l2<T: Scalar>(ds: &Dataset<T>, what: &str) -> Result<()> {
    if ds.is_l2() {
        Ok(())
    } else {
        Err(Error::IncompatibleConfig(format!("{what} needs an ℓ2 dataset")))
    }
}

pub(crate) fn require_horizon(t: usize) -> Result<()> {
    if t == 0 {
        Err(Error::IncompatibleConfig("horizon must be at least 1".into()))
    } else {
        Ok(())
    }
}
