//! Accelerated Perceptrons as weighted no-regret dynamics in a zero-sum
//! game between a classifier `w` and a distribution `p` over training
//! rows.
//!
//! Every numerical type is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the common `f64` instantiation.

// `!(x >= lo)` is how NaN inputs get rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod config;
pub mod datagen;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod learners;
pub mod linalg;
pub mod model;
pub mod scalar;
pub mod schedule;

pub use dynamics::{gap_bound_check, run_dynamics, weighted_average, DynamicsConfig, GapCheck, PlayOrder, RoundRecord, Trace};
pub use error::{Error, Result};
pub use learners::{Comparator, LearnerSpec, LearnerState};
pub use linalg::Matrix;
pub use model::{build_dataset, Dataset, GameObjective, SimplexPoint};
pub use scalar::Scalar;
pub use schedule::WeightSchedule;

/// Exact rational numbers, for checking schedules without rounding.
pub type ExactScalar = num_rational::BigRational;

pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type Dataset64 = Dataset<f64>;
pub type Dataset32 = Dataset<f32>;
pub type SimplexPoint64 = SimplexPoint<f64>;
pub type SimplexPoint32 = SimplexPoint<f32>;
pub type LearnerSpec64 = LearnerSpec<f64>;
pub type DynamicsConfig64 = DynamicsConfig<f64>;
pub type DynamicsConfig32 = DynamicsConfig<f32>;
pub type Trace64 = Trace<f64>;
pub type Trace32 = Trace<f32>;
