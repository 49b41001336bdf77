use super::require_l2;
use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm2};
use crate::model::Dataset;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct VanillaRun<T> {
    pub w: Vec<T>,
    /// Number of updates made.
    pub mistakes: usize,
    /// True when a full pass over the rows made no update.
    pub converged: bool,
    /// `(margin, normalized margin)` after each update; normalized margin is
    /// NaN at `w = 0`.
    pub history: Vec<(T, T)>,
}

/// Classical Perceptron from `w = 0`.
pub fn vanilla_perceptron<T: Scalar>(ds: &Dataset<T>, max_updates: usize) -> Result<VanillaRun<T>> {
    vanilla_perceptron_from(ds, vec![T::zero(); ds.dim()], max_updates)
}

/// Classical Perceptron from a given start: cycles over the rows, adding
/// `A_i` whenever `A_i · w ≤ 0`, until a full pass makes no update or the
/// budget is spent.
pub fn vanilla_perceptron_from<T: Scalar>(
    ds: &Dataset<T>,
    mut w: Vec<T>,
    max_updates: usize,
) -> Result<VanillaRun<T>> {
    require_l2(ds, "vanilla perceptron")?;
    if w.len() != ds.dim() {
        return Err(Error::DimensionMismatch { expected: ds.dim(), got: w.len() });
    }
    let a = ds.matrix();
    let mut mistakes = 0;
    let mut history = Vec::new();
    loop {
        let mut clean = true;
        for row in a.iter_rows() {
            if dot(row, &w) <= T::zero() {
                if mistakes == max_updates {
                    return Ok(VanillaRun { w, mistakes, converged: false, history });
                }
                axpy(T::one(), row, &mut w);
                mistakes += 1;
                clean = false;
                let m = ds.margin(&w);
                let nrm = norm2(&w);
                history.push((m, if nrm > T::zero() { m / nrm } else { T::nan() }));
            }
        }
        if clean {
            return Ok(VanillaRun { w, mistakes, converged: true, history });
        }
    }
}
