mod common;

use common::*;
use nrp_core::algorithms::*;
use nrp_core::learners::*;
use nrp_core::linalg::{gibbs, norm1, norm2, norm_inf, norm_p};
use nrp_core::*;
use proptest::prelude::*;
use rand::Rng;

fn dims() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 2usize..9, 1usize..6)
}

/// Comparator drawn from the trace's comparator set: radius up to 3 when
/// unconstrained, uniform radius in the unit ball otherwise.
fn sample_comparator(r: &mut rand_chacha::ChaCha8Rng, comparator: Comparator<f64>, d: usize) -> Vec<f64> {
    let dir = uniform_vec(r, d, -1.0, 1.0);
    let (norm, radius) = match comparator {
        Comparator::Unconstrained => (norm2(&dir), r.gen_range(0.0..3.0)),
        Comparator::L2Ball => (norm2(&dir), r.gen_range(0.0..1.0)),
        Comparator::QBall(q) => (norm_p(&dir, q), r.gen_range(0.0..1.0)),
    };
    dir.iter().map(|v| v / norm.max(1e-12) * radius).collect()
}

fn configs(n: usize, t: usize) -> Vec<DynamicsConfig64> {
    let mut out = vec![smooth_config(t), nag_config(t), mpfp_config(n, t).unwrap()];
    for p in [2.0, 3.0] {
        out.push(pnorm_config(n, t, p).unwrap());
    }
    out.push(DynamicsConfig { weight_schedule: WeightSchedule::Uniform, ..smooth_config(t) });
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn entropy_steps_ignore_constant_shifts((seed, n, _d) in dims(), shift in -50.0f64..50.0, eta in 0.05f64..3.0) {
        let mut r = rng(seed);
        let loss = uniform_vec(&mut r, n, -2.0, 2.0);
        let shifted: Vec<f64> = loss.iter().map(|v| v + shift).collect();
        let a = entropy_ftrl_plus_step(&mut LearnerState::simplex(n), 1.0, &loss, eta).unwrap();
        let b = entropy_ftrl_plus_step(&mut LearnerState::simplex(n), 1.0, &shifted, eta).unwrap();
        prop_assert!(max_abs_diff(a.as_slice(), b.as_slice()) < 1e-13);
        let a = entropy_oftrl_step(&mut LearnerState::simplex(n), 2.0, &loss, eta).unwrap();
        let b = entropy_oftrl_step(&mut LearnerState::simplex(n), 2.0, &shifted, eta).unwrap();
        prop_assert!(max_abs_diff(a.as_slice(), b.as_slice()) < 1e-13);
    }

    #[test]
    fn gibbs_lands_on_the_simplex(logits in prop::collection::vec(-800.0f64..800.0, 1..10)) {
        let p = gibbs(None, &logits).unwrap();
        prop_assert!(p.iter().all(|&v| v >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalized_margin_is_scale_free((seed, n, d) in dims(), scale in 1e-3f64..1e3) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, n, d);
        let w = uniform_vec(&mut r, d, -1.0, 1.0);
        let cw: Vec<f64> = w.iter().map(|v| v * scale).collect();
        let a = ds.normalized_margin(&w).unwrap();
        let b = ds.normalized_margin(&cw).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-300) + 1e-15);
    }

    #[test]
    fn game_values_agree((seed, n, d) in dims()) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, n, d);
        let w = uniform_vec(&mut r, d, -1.5, 1.5);
        let p = SimplexPoint::new(random_simplex(&mut r, n)).unwrap();
        let bil = GameObjective::Bilinear.value(&ds, &w, &p);
        let reg = GameObjective::L2Regularized.value(&ds, &w, &p);
        prop_assert!((reg - (bil - 0.5 * norm2(&w).powi(2))).abs() < 1e-14);
        // best response is a vertex
        let brute = (0..n)
            .map(|i| GameObjective::Bilinear.value(&ds, &w, &SimplexPoint::vertex(n, i)))
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(GameObjective::Bilinear.best_response_value(&ds, &w), ds.margin(&w));
        prop_assert!((brute - ds.margin(&w)).abs() < 1e-15);
    }

    #[test]
    fn row_mixtures_and_row_responses_are_bounded((seed, n, d) in dims()) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, n, d);
        let p = uniform_vec(&mut r, n, -2.0, 2.0);
        let w = uniform_vec(&mut r, d, -2.0, 2.0);
        prop_assert!(norm2(&ds.matrix().tr_mul_vec(&p)) <= norm1(&p) + 1e-12);
        prop_assert!(norm_inf(&ds.matrix().mul_vec(&w)) <= norm2(&w) + 1e-12);
    }

    #[test]
    fn duality_gap_bounded_by_average_regret((seed, n, d) in dims(), t in 1usize..60) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, n, d);
        for cfg in configs(n, t) {
            let trace = run_dynamics(&cfg, &ds).unwrap();
            // a bounded-comparator surrogate can undercut the true regret
            if !trace.comparator().is_surrogate() {
                prop_assert!(trace.regret_w() + trace.regret_p() >= -1e-9, "{:?}", cfg.w_learner);
            }
            for _ in 0..20 {
                let w = sample_comparator(&mut r, trace.comparator(), d);
                let check = gap_bound_check(&trace, &ds, cfg.objective, &w).unwrap();
                prop_assert!(check.ok, "{:?} lhs {} rhs {}", cfg.w_learner, check.lhs, check.rhs);
            }
        }
    }

    #[test]
    fn running_and_recomputed_averages_match((seed, n, d) in dims(), t in 1usize..80) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, n, d);
        let cfg = DynamicsConfig { record_full_trace: true, ..smooth_config(t) };
        let trace = run_dynamics(&cfg, &ds).unwrap();
        prop_assert!(rel_diff(&trace.running_average(), &weighted_average(&trace)) < 1e-12);
        let rw = learners::weighted_regret_w(&trace, &ds, cfg.objective).unwrap().value;
        prop_assert!((rw - trace.regret_w()).abs() < 1e-9);
    }

    #[test]
    fn risk_gradient_is_a_scaled_row_mixture((seed, n, d) in dims()) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, n, d);
        let u = uniform_vec(&mut r, d, -1.0, 1.0);
        let q = gibbs(None, &ds.matrix().mul_vec(&u).iter().map(|v| -v).collect::<Vec<_>>()).unwrap();
        let lhs: Vec<f64> = ds.matrix().tr_mul_vec(&q).iter().map(|v| -v).collect();
        let risk = empirical_risk(&ds, &u);
        let rhs: Vec<f64> = empirical_risk_gradient(&ds, &u).iter().map(|v| v / risk).collect();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-13);
    }

    #[test]
    fn traces_are_bit_identical_on_rerun((seed, n, d) in dims(), t in 1usize..30) {
        let mut r = rng(seed);
        let ds = random_dataset(&mut r, n, d);
        for cfg in configs(n, t) {
            prop_assert_eq!(run_dynamics(&cfg, &ds).unwrap(), run_dynamics(&cfg, &ds).unwrap());
        }
    }
}
