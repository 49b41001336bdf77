//! Datasets, game objectives and the margin/payoff evaluations every
//! algorithm shares.

use crate::error::{Error, Result};
use crate::linalg::{self, conjugate_exponent, norm2, norm_p, Matrix};
use crate::scalar::{c, Scalar};

/// Label-signed data matrix `A` (row `i` is `y_i x_i`) together with its
/// norm regime and an optional margin certificate.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    a: Matrix<T>,
    labels: Vec<i8>,
    norm_exponent: T,
    known_margin: Option<T>,
    exact_margin: bool,
    w_star: Option<Vec<T>>,
}

/// Builds `A = diag(labels) · features`, rejecting rows whose `‖·‖_p`
/// exceeds one. Rows are never rescaled.
pub fn build_dataset<T: Scalar>(
    features: &Matrix<T>,
    labels: &[T],
    norm_exponent: T,
) -> Result<Dataset<T>> {
    if labels.len() != features.rows() {
        return Err(Error::DimensionMismatch {
            expected: features.rows(),
            got: labels.len(),
        });
    }
    let signs = labels
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            if y == T::one() {
                Ok(1i8)
            } else if y == -T::one() {
                Ok(-1i8)
            } else {
                Err(Error::BadLabel(i))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Dataset::from_signed_rows(features, signs, norm_exponent)
}

impl<T: Scalar> Dataset<T> {
    fn from_signed_rows(features: &Matrix<T>, labels: Vec<i8>, norm_exponent: T) -> Result<Self> {
        if !(norm_exponent >= c(2.0)) || norm_exponent.is_infinite() {
            return Err(Error::BadNormExponent(norm_exponent.to_f64_lossy()));
        }
        let slack = T::invariant_slack();
        let mut a = features.clone();
        for (i, &y) in labels.iter().enumerate() {
            let row = a.row_mut(i);
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("feature row"));
            }
            if norm_p(row, norm_exponent) > T::one() + slack {
                return Err(Error::RowNormViolation(i));
            }
            if y < 0 {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
        }
        Ok(Self {
            a,
            labels,
            norm_exponent,
            known_margin: None,
            exact_margin: false,
            w_star: None,
        })
    }

    /// Attaches a margin certificate, checking `‖w_star‖_q ≤ 1` and
    /// `min_i A_i · w_star ≥ known_margin`.
    pub fn with_certificate(
        mut self,
        known_margin: T,
        exact_margin: bool,
        w_star: Option<Vec<T>>,
    ) -> Result<Self> {
        if !(known_margin > T::zero()) || !known_margin.is_finite() {
            return Err(Error::BadCertificate(format!(
                "known_margin must be positive, got {known_margin}"
            )));
        }
        let slack = T::invariant_slack();
        if let Some(w) = &w_star {
            if w.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: w.len(),
                });
            }
            if norm_p(w, self.dual_exponent()) > T::one() + slack {
                return Err(Error::BadCertificate("w_star outside the dual unit ball".into()));
            }
            if self.margin(w) < known_margin - slack {
                return Err(Error::BadCertificate(
                    "w_star does not attain known_margin".into(),
                ));
            }
        }
        self.known_margin = Some(known_margin);
        self.exact_margin = exact_margin;
        self.w_star = w_star;
        Ok(self)
    }

    /// Feature rows `x_i = y_i A_i`.
    pub fn features(&self) -> Matrix<T> {
        let mut x = self.a.clone();
        for (i, &y) in self.labels.iter().enumerate() {
            if y < 0 {
                for v in x.row_mut(i) {
                    *v = -*v;
                }
            }
        }
        x
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn norm_exponent(&self) -> T {
        self.norm_exponent
    }

    /// `q` with `1/p + 1/q = 1`.
    pub fn dual_exponent(&self) -> T {
        conjugate_exponent(self.norm_exponent)
    }

    pub fn known_margin(&self) -> Option<T> {
        self.known_margin
    }

    pub fn exact_margin(&self) -> bool {
        self.exact_margin
    }

    pub fn w_star(&self) -> Option<&[T]> {
        self.w_star.as_deref()
    }

    pub fn is_l2(&self) -> bool {
        self.norm_exponent == c(2.0)
    }

    /// `γ(w) = min_i A_i · w`.
    pub fn margin(&self, w: &[T]) -> T {
        self.margin_argmin(w).0
    }

    /// Margin together with the row attaining it (lowest index on ties).
    pub fn margin_argmin(&self, w: &[T]) -> (T, usize) {
        let (i, v) = linalg::argmin(&self.a.mul_vec(w));
        (v, i)
    }

    /// `γ(w) / ‖w‖₂`.
    pub fn normalized_margin(&self, w: &[T]) -> Result<T> {
        let n = norm2(w);
        if n == T::zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.margin(w) / n)
    }

    pub fn cast<U: Scalar>(&self) -> Dataset<U> {
        Dataset {
            a: self.a.cast(),
            labels: self.labels.clone(),
            norm_exponent: c(self.norm_exponent.to_f64_lossy()),
            known_margin: self.known_margin.map(|v| c(v.to_f64_lossy())),
            exact_margin: self.exact_margin,
            w_star: self
                .w_star
                .as_ref()
                .map(|w| w.iter().map(|v| c(v.to_f64_lossy())).collect()),
        }
    }
}

/// Point of the probability simplex `Δⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint<T>(pub(crate) Vec<T>);

impl<T: Scalar> SimplexPoint<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        let slack = T::invariant_slack();
        if values.is_empty() || values.iter().any(|v| !v.is_finite() || *v < T::zero()) {
            return Err(Error::NotOnSimplex);
        }
        let s: T = values.iter().copied().sum();
        if (s - T::one()).abs() > slack {
            return Err(Error::NotOnSimplex);
        }
        Ok(Self(values))
    }

    pub fn uniform(n: usize) -> Self {
        let v = T::one() / crate::scalar::cu(n);
        Self(vec![v; n])
    }

    pub fn vertex(n: usize, i: usize) -> Self {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        Self(v)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T> AsRef<[T]> for SimplexPoint<T> {
    fn as_ref(&self) -> &[T] {
        &self.0
    }
}

/// Payoff `g(w, p)` the two players contest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameObjective {
    /// `g(w, p) = pᵀAw`
    Bilinear,
    /// `g(w, p) = pᵀAw − ½‖w‖₂²`
    L2Regularized,
}

impl GameObjective {
    fn regularizer<T: Scalar>(self, w: &[T]) -> T {
        match self {
            GameObjective::Bilinear => T::zero(),
            GameObjective::L2Regularized => c::<T>(0.5) * linalg::dot(w, w),
        }
    }

    /// `g(w, p)`.
    pub fn value<T: Scalar>(self, ds: &Dataset<T>, w: &[T], p: &SimplexPoint<T>) -> T {
        linalg::dot(p.as_slice(), &ds.matrix().mul_vec(w)) - self.regularizer(w)
    }

    /// `m(w) = min_{p ∈ Δⁿ} g(w, p)`; the minimum sits on a vertex.
    pub fn best_response_value<T: Scalar>(self, ds: &Dataset<T>, w: &[T]) -> T {
        ds.margin(w) - self.regularizer(w)
    }
}
