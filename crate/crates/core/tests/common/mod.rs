//! Test-side oracles: independent numeric minimizers built on nalgebra,
//! plus random instance helpers. Nothing here calls the closed forms under
//! test.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use nrp_core::{build_dataset, Dataset64, Matrix64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, len: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(lo..hi)).collect()
}

pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw = uniform_vec(rng, n, 0.05, 1.0);
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Random ℓ2 dataset with rows of norm at most 0.95.
pub fn random_dataset(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Dataset64 {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let r = uniform_vec(rng, d, -1.0, 1.0);
            let nr = r.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
            let scale = rng.gen_range(0.2..0.95) / nr;
            r.into_iter().map(|v| v * scale).collect()
        })
        .collect();
    let labels: Vec<f64> = (0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
    build_dataset(&Matrix64::from_rows(&rows).unwrap(), &labels, 2.0).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `‖a − b‖_∞ / max(‖b‖_∞, floor)`.
pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-12);
    max_abs_diff(a, b) / scale
}

/// `argmin_{p ∈ Δⁿ} ⟨c, p⟩ + Σ_i p_i log(p_i / π_i)` by damped Newton in the
/// reduced coordinates `p_n = 1 − Σ_{i<n} p_i`. The prior `π` defaults to
/// uniform.
pub fn simplex_oracle(c: &[f64], prior: Option<&[f64]>) -> Vec<f64> {
    let n = c.len();
    if n == 1 {
        return vec![1.0];
    }
    let uniform = vec![1.0 / n as f64; n];
    let pi = prior.unwrap_or(&uniform);
    let objective = |p: &[f64]| -> f64 {
        p.iter().zip(c).zip(pi).map(|((&pi_, &ci), &qi)| ci * pi_ + pi_ * (pi_ / qi).ln()).sum()
    };
    let full = |x: &DVector<f64>| -> Vec<f64> {
        let mut p: Vec<f64> = x.iter().copied().collect();
        p.push(1.0 - x.sum());
        p
    };
    let mut x = DVector::from_element(n - 1, 1.0 / n as f64);
    for _ in 0..500 {
        let p = full(&x);
        let last = c[n - 1] + (p[n - 1] / pi[n - 1]).ln();
        let grad = DVector::from_fn(n - 1, |i, _| c[i] + (p[i] / pi[i]).ln() - last);
        if grad.amax() < 1e-15 {
            break;
        }
        let mut hess = DMatrix::from_element(n - 1, n - 1, 1.0 / p[n - 1]);
        for i in 0..n - 1 {
            hess[(i, i)] += 1.0 / p[i];
        }
        let step = hess.lu().solve(&grad).expect("positive definite");
        let f0 = objective(&p);
        let mut tau = 1.0;
        loop {
            let cand = &x - &step * tau;
            let pc = full(&cand);
            if pc.iter().all(|&v| v > 0.0) && objective(&pc) <= f0 {
                x = cand;
                break;
            }
            tau *= 0.5;
            if tau < 1e-20 {
                return p;
            }
        }
    }
    full(&x)
}

/// `argmin_w Σ_j β_j (−y_jᵀ A w + ½‖w‖²)`, solved as the dense linear
/// system `(Σβ) I w = Aᵀ Σ β_j y_j`.
pub fn quadratic_oracle(a: &Matrix64, terms: &[(f64, Vec<f64>)]) -> Vec<f64> {
    let (n, d) = (a.rows(), a.cols());
    let am = DMatrix::from_row_slice(n, d, a.as_slice());
    let mut hess = DMatrix::<f64>::zeros(d, d);
    let mut rhs = DVector::<f64>::zeros(d);
    for (beta, y) in terms {
        hess += DMatrix::<f64>::identity(d, d) * *beta;
        rhs += am.transpose() * DVector::from_column_slice(y) * *beta;
    }
    hess.lu().solve(&rhs).expect("nonsingular").iter().copied().collect()
}

fn qnorm(w: &DVector<f64>, q: f64) -> f64 {
    w.iter().map(|v| v.abs().powf(q)).sum::<f64>().powf(1.0 / q)
}

/// `argmin_w −⟨θ, w⟩ + ‖w‖_q² / (2(q−1))` from its stationarity
/// conditions. With `N = ‖w‖_q` fixed they decouple into
/// `|w_i| = ((q−1)|θ_i| / N^{2−q})^{1/(q−1)}`, `sign w_i = sign θ_i`, and the
/// consistency condition `‖w(N)‖_q = N` has a single root, found by
/// bisection on `log N`. (Newton on `w` directly oscillates for `q < 2`,
/// since the curvature of `|w_i|^q` blows up at 0.)
pub fn qnorm_oracle(theta: &[f64], q: f64) -> Vec<f64> {
    let d = theta.len();
    if theta.iter().all(|&t| t == 0.0) {
        return vec![0.0; d];
    }
    let at = |n: f64| -> Vec<f64> {
        theta
            .iter()
            .map(|&t| t.signum() * ((q - 1.0) * t.abs() / n.powf(2.0 - q)).powf(1.0 / (q - 1.0)))
            .collect()
    };
    let excess = |log_n: f64| {
        let w = at(log_n.exp());
        qnorm(&DVector::from_vec(w), q).ln() - log_n
    };
    let (mut lo, mut hi) = (-60.0, 60.0);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at((0.5 * (lo + hi)).exp())
}

/// `argmin_{‖z‖₂ ≤ 1} ⟨g, z⟩ + ½‖z − center‖²` through its KKT system:
/// `z(λ) = (center − g)/(1 + λ)`, with `λ ≥ 0` found by bisection.
pub fn ball_prox_oracle(center: &[f64], g: &[f64]) -> Vec<f64> {
    let free: Vec<f64> = center.iter().zip(g).map(|(c, g)| c - g).collect();
    let norm = |lambda: f64| free.iter().map(|v| (v / (1.0 + lambda)).powi(2)).sum::<f64>().sqrt();
    if norm(0.0) <= 1.0 {
        return free;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while norm(hi) > 1.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if norm(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    free.iter().map(|v| v / (1.0 + lambda)).collect()
}

/// Central-difference gradient.
pub fn central_diff(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[i] += h;
            minus[i] -= h;
            (f(&plus) - f(&minus)) / (2.0 * h)
        })
        .collect()
}

/// Worst relative deviations of one criterion-14 sweep.
#[derive(Debug, Default, Clone)]
pub struct OracleSweep {
    pub learners: Vec<(&'static str, f64)>,
    pub dual_map_round_trip: f64,
    pub risk_gradient: f64,
}

impl OracleSweep {
    pub fn worst_learner(&self) -> (&'static str, f64) {
        self.learners.iter().copied().fold(("none", 0.0), |a, b| if b.1 > a.1 { b } else { a })
    }
}

fn bump(slot: &mut Vec<(&'static str, f64)>, name: &'static str, v: f64) {
    match slot.iter_mut().find(|(k, _)| *k == name) {
        Some(e) => e.1 = e.1.max(v),
        None => slot.push((name, v)),
    }
}

/// Runs every closed-form learner for three rounds with `α_t = t` on
/// random instances (`n ≤ 5`, `d ≤ 4`) and compares each decision with
/// the matching numeric minimizer.
pub fn oracle_sweep(cases: u64) -> OracleSweep {
    use nrp_core::algorithms::{empirical_risk, empirical_risk_gradient};
    use nrp_core::learners::*;
    use nrp_core::{LearnerState, SimplexPoint};

    let mut out = OracleSweep::default();
    let rounds = 3;
    for seed in 0..cases {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let d = r.gen_range(1..=4);
        let ds = random_dataset(&mut r, n, d);
        let a = ds.matrix();
        let eta = r.gen_range(0.1..2.0);
        let ws: Vec<Vec<f64>> = (0..rounds).map(|_| uniform_vec(&mut r, d, -1.0, 1.0)).collect();
        let losses: Vec<Vec<f64>> = ws.iter().map(|w| a.mul_vec(w)).collect();
        let ps: Vec<Vec<f64>> = (0..rounds).map(|_| random_simplex(&mut r, n)).collect();
        let alpha = |s: usize| (s + 1) as f64;
        let weighted = |vs: &[Vec<f64>], upto: usize| -> Vec<f64> {
            let mut acc = vec![0.0; vs.first().map_or(0, |v| v.len())];
            for (s, v) in vs.iter().enumerate().take(upto) {
                for (x, y) in acc.iter_mut().zip(v) {
                    *x += alpha(s) * y;
                }
            }
            acc
        };

        // entropic FTRL⁺
        let mut st = LearnerState::<f64>::simplex(n);
        for s in 0..rounds {
            let got = entropy_ftrl_plus_step(&mut st, alpha(s), &losses[s], eta).unwrap();
            let c: Vec<f64> = weighted(&losses, s + 1).iter().map(|v| eta * v).collect();
            bump(&mut out.learners, "entropy ftrl+", rel_diff(got.as_slice(), &simplex_oracle(&c, None)));
        }

        // entropic optimistic FTRL, hint = previous loss
        let mut st = LearnerState::<f64>::simplex(n);
        let zero = vec![0.0; n];
        for s in 0..rounds {
            let hint = if s == 0 { &zero } else { &losses[s - 1] };
            let got = entropy_oftrl_step(&mut st, alpha(s), hint, eta).unwrap();
            let c: Vec<f64> = weighted(&losses, s)
                .iter()
                .zip(hint)
                .map(|(acc, h)| eta * (acc + alpha(s) * h))
                .collect();
            bump(&mut out.learners, "entropy oftrl", rel_diff(got.as_slice(), &simplex_oracle(&c, None)));
            st.observe(alpha(s), &losses[s]);
        }

        // optimistic FTL and unregularized FTRL⁺ on the quadratic losses
        let uniform = vec![1.0 / n as f64; n];
        let mut oftl = LearnerState::<f64>::vector(n, d);
        let mut ftrl = LearnerState::<f64>::vector(n, d);
        for s in 0..rounds {
            let prev = if s == 0 { &uniform } else { &ps[s - 1] };
            let got = oftl_w_step(&mut oftl, alpha(s), &SimplexPoint::new(prev.clone()).unwrap(), &ds);
            let mut terms: Vec<(f64, Vec<f64>)> = (0..s).map(|j| (alpha(j), ps[j].clone())).collect();
            terms.push((alpha(s), prev.clone()));
            bump(&mut out.learners, "oftl", rel_diff(&got, &quadratic_oracle(a, &terms)));
            oftl.observe(alpha(s), &ps[s]);

            let got = unregularized_ftrl_w_step(&mut ftrl, alpha(s), &SimplexPoint::new(ps[s].clone()).unwrap(), &ds);
            let terms: Vec<(f64, Vec<f64>)> = (0..=s).map(|j| (alpha(j), ps[j].clone())).collect();
            bump(&mut out.learners, "ftrl+ unregularized", rel_diff(&got, &quadratic_oracle(a, &terms)));
        }

        // q-norm optimistic FTRL
        let q = r.gen_range(1.1..2.0);
        let mut st = LearnerState::<f64>::vector(n, d);
        for s in 0..rounds {
            let prev = if s == 0 { &uniform } else { &ps[s - 1] };
            let got = qnorm_oftrl_step(&mut st, alpha(s), &SimplexPoint::new(prev.clone()).unwrap(), &ds, eta, q);
            let mut mix = weighted(&ps, s);
            for (m, h) in mix.iter_mut().zip(prev) {
                *m += alpha(s) * h;
            }
            let theta: Vec<f64> = a.tr_mul_vec(&mix).iter().map(|v| eta * v).collect();
            bump(&mut out.learners, "q-norm oftrl", rel_diff(&got, &qnorm_oracle(&theta, q)));
            st.observe(alpha(s), &ps[s]);
        }

        // OMD on the ball and on the simplex
        let mut st = LearnerState::<f64>::vector(n, d);
        let mut center = vec![0.0; d];
        for s in 0..rounds {
            let hint = uniform_vec(&mut r, d, -3.0, 3.0);
            let g = uniform_vec(&mut r, d, -3.0, 3.0);
            let (w, w_hat) = omd_ball_step(&mut st, alpha(s), &hint, &g, eta);
            let scale = |v: &[f64]| v.iter().map(|x| eta * alpha(s) * x).collect::<Vec<_>>();
            let w_ref = ball_prox_oracle(&center, &scale(&hint));
            let w_hat_ref = ball_prox_oracle(&center, &scale(&g));
            bump(&mut out.learners, "omd ball", rel_diff(&w, &w_ref).max(rel_diff(&w_hat, &w_hat_ref)));
            center = w_hat_ref;
        }
        let mut st = LearnerState::<f64>::simplex(n);
        let mut prior = uniform.clone();
        for s in 0..rounds {
            let hint = uniform_vec(&mut r, n, -2.0, 2.0);
            let g = uniform_vec(&mut r, n, -2.0, 2.0);
            let (p, p_hat) = omd_simplex_step(&mut st, alpha(s), &hint, &g, eta).unwrap();
            let scale = |v: &[f64]| v.iter().map(|x| eta * alpha(s) * x).collect::<Vec<_>>();
            let p_ref = simplex_oracle(&scale(&hint), Some(&prior));
            let p_hat_ref = simplex_oracle(&scale(&g), Some(&prior));
            bump(
                &mut out.learners,
                "omd simplex",
                rel_diff(p.as_slice(), &p_ref).max(rel_diff(p_hat.as_slice(), &p_hat_ref)),
            );
            prior = p_hat_ref;
        }

        // dual map round trip in both directions
        let theta = uniform_vec(&mut r, d, -2.0, 2.0);
        let w = qnorm_dual_map(&theta, q);
        let back = qnorm_regularizer_gradient(&w, q);
        let w2 = qnorm_dual_map(&qnorm_regularizer_gradient(&ws[0], q), q);
        out.dual_map_round_trip = out.dual_map_round_trip.max(rel_diff(&back, &theta)).max(rel_diff(&w2, &ws[0]));

        // exponential-loss risk gradient at a point of norm at most 2
        let mut u = uniform_vec(&mut r, d, -1.0, 1.0);
        let nu = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        let radius = r.gen_range(0.0..2.0) / nu.max(1e-12);
        u.iter_mut().for_each(|v| *v *= radius);
        let fd = central_diff(|x| empirical_risk(&ds, x), &u, 1e-5);
        out.risk_gradient = out.risk_gradient.max(rel_diff(&empirical_risk_gradient(&ds, &u), &fd));
    }
    out
}
