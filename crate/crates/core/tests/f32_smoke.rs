//! The same algorithms instantiated at `f32` track their `f64` runs.

use nrp_core::algorithms::*;
use nrp_core::datagen::{generate, GenMode, GenSpec};
use nrp_core::*;

fn data() -> (Dataset64, Dataset32) {
    let spec = GenSpec { n: 16, d: 4, gamma: 0.2, norm_exponent: 2.0, mode: GenMode::ExactMargin, seed: 5 };
    (generate(&spec).unwrap(), generate(&spec).unwrap())
}

#[test]
fn smooth_dynamics_in_single_precision() {
    let (d64, d32) = data();
    let a = run_dynamics(&smooth_config::<f64>(40), &d64).unwrap();
    let b = run_dynamics(&smooth_config::<f32>(40), &d32).unwrap();
    for (x, y) in a.running_average().iter().zip(b.running_average()) {
        assert!((x - y as f64).abs() < 1e-4);
    }
    assert!(d32.margin(&b.running_average()) > 0.0);
}

#[test]
fn equivalences_hold_at_single_precision_tolerance() {
    let (_, d32) = data();
    for which in Equivalence::ALL {
        let rep = check_equivalence(which, &d32, 20, 1e-3f32).unwrap();
        assert!(rep.pass, "{which}: {:?}", rep.deviations);
    }
}

#[test]
fn mirror_prox_and_pnorm_run_in_f32() {
    let (d64, d32) = data();
    let a = mpfp(&d64, 30).unwrap();
    let b = mpfp(&d32, 30).unwrap();
    for (x, y) in a.z_w.iter().zip(&b.z_w) {
        assert!((x - *y as f64).abs() < 1e-4);
    }
    let r = pnorm_accelerated(&d32, 30, 2.0f32).unwrap();
    assert!(r.w_bar.iter().all(|v| v.is_finite()));
}
