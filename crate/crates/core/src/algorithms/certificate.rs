use super::mpfp::mpfp;
use crate::error::Result;
use crate::linalg::norm2;
use crate::model::{Dataset, SimplexPoint};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<T> {
    /// `p̄ = (1/T) Σ p_t`
    pub p_bar: SimplexPoint<T>,
    /// `‖p̄ᵀA‖₂`
    pub norm: T,
    /// Average of the ball iterates, a separator when the data allow one.
    pub w_bar: Vec<T>,
}

/// Runs mirror-prox for `T` rounds and returns the averaged row
/// distribution with the norm of its row mixture. When the origin lies in
/// the hull of the rows the norm is at most `3√(log n)/(2T)`.
pub fn infeasibility_certificate<T: Scalar>(ds: &Dataset<T>, horizon: usize) -> Result<Certificate<T>> {
    let run = mpfp(ds, horizon)?;
    let norm = norm2(&ds.matrix().tr_mul_vec(run.z_p.as_slice()));
    Ok(Certificate {
        p_bar: run.z_p,
        norm,
        w_bar: run.z_w,
    })
}
