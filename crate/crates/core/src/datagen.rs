//! Deterministic synthetic instances: separable data with a margin
//! certificate, optionally with an exactly known maximal margin, and
//! infeasible data whose row hull contains the origin.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{conjugate_exponent, dot, norm2, norm_p, Matrix};
use crate::model::{build_dataset, Dataset};
use crate::scalar::{c, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenMode {
    /// Rejection-sampled points with `|w*·x| ≥ γ`; γ is a lower bound.
    LowerBound,
    /// Two rows pinning the maximal ℓ2 margin at exactly γ, plus fillers.
    ExactMargin,
    /// Rows whose convex hull contains the origin.
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub d: usize,
    pub gamma: f64,
    pub norm_exponent: f64,
    pub mode: GenMode,
    pub seed: u64,
}

// Filler rows: e₁ lift within a small band above γ, unit length.
const FILLER_SPREAD: f64 = 0.02;
const FILLER_RADIUS: f64 = 1.0;

/// Candidate draws allowed per requested row before giving up.
pub const REJECTION_BUDGET_PER_ROW: usize = 100_000;

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::BadSpec(m.to_string()));
        if self.n == 0 || self.d == 0 {
            return bad("n and d must be positive");
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return bad("gamma must lie in (0, 1)");
        }
        if !(self.norm_exponent >= 2.0) || !self.norm_exponent.is_finite() {
            return bad("norm exponent must lie in [2, inf)");
        }
        match self.mode {
            GenMode::ExactMargin if self.d < 2 => bad("exact-margin mode needs d >= 2"),
            GenMode::ExactMargin if self.norm_exponent != 2.0 => bad("exact-margin mode is ℓ2 only"),
            GenMode::ExactMargin if self.n < 2 => bad("exact-margin mode needs n >= 2"),
            GenMode::Infeasible if self.d < 2 => bad("infeasible mode needs d >= 2"),
            GenMode::Infeasible if self.n < 3 => bad("infeasible mode needs n >= 3"),
            _ => Ok(()),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Dispatches on `spec.mode`.
pub fn generate<T: Scalar>(spec: &GenSpec) -> Result<Dataset<T>> {
    match spec.mode {
        GenMode::Infeasible => gen_infeasible(spec),
        _ => gen_separable(spec),
    }
}

fn gaussian_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| StandardNormal.sample(rng)).collect()
}

fn random_sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// Uniform point in the unit ℓp ball: generalized-Gaussian coordinates
/// with an exponential radial correction.
fn uniform_in_lp_ball(rng: &mut ChaCha8Rng, d: usize, p: f64) -> Vec<f64> {
    let gamma = Gamma::new(1.0 / p, 1.0).expect("valid shape");
    let x: Vec<f64> = (0..d)
        .map(|_| random_sign(rng) * gamma.sample(rng).powf(1.0 / p))
        .collect();
    let e: f64 = Exp1.sample(rng);
    let s: f64 = x.iter().map(|v| v.abs().powf(p)).sum::<f64>() + e;
    let r = s.powf(1.0 / p);
    x.into_iter().map(|v| v / r).collect()
}

fn assemble<T: Scalar>(rows: &[Vec<f64>], labels: &[f64], p: f64) -> Result<Dataset<T>> {
    let cast: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(|&v| c(v)).collect()).collect();
    let y: Vec<T> = labels.iter().map(|&v| c(v)).collect();
    build_dataset(&Matrix::from_rows(&cast)?, &y, c(p))
}

/// Separable data with certificate `(γ, w*)`.
pub fn gen_separable<T: Scalar>(spec: &GenSpec) -> Result<Dataset<T>> {
    spec.validate()?;
    match spec.mode {
        GenMode::LowerBound => lower_bound(spec),
        GenMode::ExactMargin => exact_margin(spec),
        GenMode::Infeasible => Err(Error::BadSpec("infeasible mode is not separable".into())),
    }
}

fn lower_bound<T: Scalar>(spec: &GenSpec) -> Result<Dataset<T>> {
    let mut rng = spec.rng();
    let (d, p) = (spec.d, spec.norm_exponent);
    let q = conjugate_exponent(p);
    let mut w = gaussian_vec(&mut rng, d);
    while norm2(&w) == 0.0 {
        w = gaussian_vec(&mut rng, d);
    }
    let wn = norm_p(&w, q);
    let w_star: Vec<f64> = w.iter().map(|v| v / wn).collect();

    let budget = REJECTION_BUDGET_PER_ROW.saturating_mul(spec.n);
    let mut rows = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    let mut draws = 0;
    while rows.len() < spec.n {
        if draws == budget {
            return Err(Error::RejectionBudget(draws));
        }
        draws += 1;
        let x = uniform_in_lp_ball(&mut rng, d, p);
        let s = dot(&w_star, &x);
        if s.abs() >= spec.gamma {
            labels.push(s.signum());
            rows.push(x);
        }
    }
    let ds = assemble::<T>(&rows, &labels, p)?;
    let w_star: Vec<T> = w_star.iter().map(|&v| c(v)).collect();
    ds.with_certificate(c(spec.gamma), false, Some(w_star))
}

fn exact_margin<T: Scalar>(spec: &GenSpec) -> Result<Dataset<T>> {
    let mut rng = spec.rng();
    let (n, d, g) = (spec.n, spec.d, spec.gamma);
    let beta = (1.0 - g * g).sqrt();
    let mut signed = Vec::with_capacity(n);
    let pair = |s: f64| {
        let mut r = vec![0.0; d];
        r[0] = g;
        r[1] = s * beta;
        r
    };
    signed.push(pair(1.0));
    signed.push(pair(-1.0));
    // Fillers sit just above the margin with a long orthogonal part, so the
    // easy direction e₁ is well hidden from greedy updates.
    for _ in 2..n {
        let lift = g + (1.0 - g) * FILLER_SPREAD * rng.gen::<f64>().powi(2) + 1e-6;
        let lift = lift.min(1.0);
        let mut u = gaussian_vec(&mut rng, d - 1);
        while norm2(&u) == 0.0 {
            u = gaussian_vec(&mut rng, d - 1);
        }
        let un = norm2(&u);
        let radius = (1.0 - lift * lift).max(0.0).sqrt() * rng.gen_range(FILLER_RADIUS..=1.0);
        let mut r = Vec::with_capacity(d);
        r.push(lift);
        r.extend(u.iter().map(|v| v / un * radius));
        signed.push(r);
    }
    // shuffle so the pinning rows are not always first
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        signed.swap(i, j);
    }
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for r in signed {
        let y = random_sign(&mut rng);
        rows.push(r.iter().map(|v| y * v).collect::<Vec<_>>());
        labels.push(y);
    }
    let ds = assemble::<T>(&rows, &labels, 2.0)?;
    let mut e1 = vec![T::zero(); d];
    e1[0] = T::one();
    ds.with_certificate(c(g), true, Some(e1))
}

/// Infeasible data: three unit rows at 0°, 120°, 240° in a 2-plane of ℝᵈ
/// (the coordinate plane for `d = 2`, a random one otherwise), plus
/// further points of the unit disc in that plane.
pub fn gen_infeasible<T: Scalar>(spec: &GenSpec) -> Result<Dataset<T>> {
    spec.validate()?;
    if spec.mode != GenMode::Infeasible {
        return Err(Error::BadSpec("gen_infeasible needs infeasible mode".into()));
    }
    let mut rng = spec.rng();
    let d = spec.d;
    let (e1, e2) = if d == 2 {
        (vec![1.0, 0.0], vec![0.0, 1.0])
    } else {
        let mut a = gaussian_vec(&mut rng, d);
        let an = norm2(&a);
        a.iter_mut().for_each(|v| *v /= an);
        let mut b = gaussian_vec(&mut rng, d);
        let proj = dot(&a, &b);
        b.iter_mut().zip(&a).for_each(|(v, &ai)| *v -= proj * ai);
        let bn = norm2(&b);
        b.iter_mut().for_each(|v| *v /= bn);
        (a, b)
    };
    let in_plane = |x: f64, y: f64| -> Vec<f64> { e1.iter().zip(&e2).map(|(a, b)| x * a + y * b).collect() };
    let h = 3f64.sqrt() / 2.0;
    let mut signed = vec![in_plane(1.0, 0.0), in_plane(-0.5, h), in_plane(-0.5, -h)];
    while signed.len() < spec.n {
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = rng.gen::<f64>().sqrt();
        signed.push(in_plane(r * angle.cos(), r * angle.sin()));
    }
    let mut rows = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    for r in signed {
        let y = random_sign(&mut rng);
        rows.push(r.iter().map(|v| y * v).collect::<Vec<_>>());
        labels.push(y);
    }
    assemble(&rows, &labels, 2.0)
}
