//! Dense row-major matrices and the handful of vector kernels the
//! algorithms need.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Dense row-major `rows x cols` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDataset);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * d);
        for r in rows {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(n, d, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.cols)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    /// `A w`, an n-vector.
    pub fn mul_vec(&self, w: &[T]) -> Vec<T> {
        debug_assert_eq!(w.len(), self.cols);
        self.iter_rows().map(|r| dot(r, w)).collect()
    }

    /// `Aᵀ p`, a d-vector.
    pub fn tr_mul_vec(&self, p: &[T]) -> Vec<T> {
        debug_assert_eq!(p.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (r, &pi) in self.iter_rows().zip(p) {
            if pi != T::zero() {
                axpy(pi, r, &mut out);
            }
        }
        out
    }

    pub fn cast<U: Scalar>(&self) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| c::<U>(v.to_f64_lossy())).collect(),
        }
    }
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// `y += a x`
#[inline]
pub fn axpy<T: Scalar>(a: T, x: &[T], y: &mut [T]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn scaled<T: Scalar>(a: T, x: &[T]) -> Vec<T> {
    x.iter().map(|&v| a * v).collect()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn norm2<T: Scalar>(x: &[T]) -> T {
    dot(x, x).sqrt()
}

pub fn norm1<T: Scalar>(x: &[T]) -> T {
    x.iter().map(|v| v.abs()).sum()
}

pub fn norm_inf<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

/// `‖x‖_p` for a finite exponent `p >= 1`, computed with max-scaling so
/// large exponents do not overflow.
pub fn norm_p<T: Scalar>(x: &[T], p: T) -> T {
    if p == c(2.0) {
        return norm2(x);
    }
    if p == T::one() {
        return norm1(x);
    }
    if p.is_infinite() {
        return norm_inf(x);
    }
    let m = norm_inf(x);
    if m == T::zero() {
        return T::zero();
    }
    let s: T = x.iter().map(|v| (v.abs() / m).powf(p)).sum();
    m * s.powf(p.recip())
}

/// Hölder conjugate `q` of `p`: `1/p + 1/q = 1`.
pub fn conjugate_exponent<T: Scalar>(p: T) -> T {
    if p.is_infinite() {
        return T::one();
    }
    p / (p - T::one())
}

pub fn l1_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).sum()
}

/// Index and value of the smallest entry; lowest index wins ties.
pub fn argmin<T: Scalar>(x: &[T]) -> (usize, T) {
    let mut best = (0, x[0]);
    for (i, &v) in x.iter().enumerate().skip(1) {
        if v < best.1 {
            best = (i, v);
        }
    }
    best
}

/// Gibbs distribution `p_i ∝ prior_i · exp(logits_i)` (uniform prior when
/// `prior` is `None`).
///
/// Every softmax-style update in the crate goes through this function so
/// that paired computations share one rounding path. The exponent is
/// max-subtracted and each weight is floored at `T::underflow_floor()`
/// before normalization.
pub fn gibbs<T: Scalar>(prior: Option<&[T]>, logits: &[T]) -> Result<Vec<T>> {
    let shifted: Vec<T> = match prior {
        None => logits.to_vec(),
        Some(pr) => {
            debug_assert_eq!(pr.len(), logits.len());
            pr.iter()
                .zip(logits)
                .map(|(&q, &l)| {
                    if q <= T::zero() {
                        T::neg_infinity()
                    } else {
                        q.ln() + l
                    }
                })
                .collect()
        }
    };
    let max = shifted.iter().fold(T::neg_infinity(), |m, &v| m.max(v));
    if !max.is_finite() || shifted.iter().any(|v| v.is_nan()) {
        return Err(Error::NonFinite("gibbs weights"));
    }
    let floor = T::underflow_floor();
    let mut out: Vec<T> = shifted.iter().map(|&v| (v - max).exp().max(floor)).collect();
    let z: T = out.iter().copied().sum();
    for v in &mut out {
        *v /= z;
    }
    Ok(out)
}

/// Euclidean projection onto the unit ℓ2 ball.
pub fn project_unit_ball<T: Scalar>(mut v: Vec<T>) -> Vec<T> {
    let n = norm2(&v);
    if n > T::one() {
        for x in &mut v {
            *x /= n;
        }
    }
    v
}
