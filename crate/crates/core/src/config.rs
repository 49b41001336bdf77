//! Numerical tolerance constants used across the crate.

/// Slack allowed on row-norm, certificate and simplex-sum invariants.
pub const INVARIANT_SLACK: f64 = 1e-12;

/// Floor applied to multiplicative simplex updates before renormalization.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

/// Slack used by bound checks (`lhs <= rhs + BOUND_SLACK`).
pub const BOUND_SLACK: f64 = 1e-9;

/// Default relative tolerance for original-vs-dynamics equivalence checks.
pub const EQUIV_REL_TOL: f64 = 1e-8;

/// Absolute floor for equivalence checks on near-zero quantities.
pub const EQUIV_ABS_FLOOR: f64 = 1e-10;

/// All tolerances in one record, for callers that want to override them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub invariant_slack: f64,
    pub underflow_floor: f64,
    pub bound_slack: f64,
    pub equiv_rel: f64,
    pub equiv_abs_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            invariant_slack: INVARIANT_SLACK,
            underflow_floor: UNDERFLOW_FLOOR,
            bound_slack: BOUND_SLACK,
            equiv_rel: EQUIV_REL_TOL,
            equiv_abs_floor: EQUIV_ABS_FLOOR,
        }
    }
}
