//! Integrator contract: accuracy, dense output, overflow termination.

use approx::assert_relative_eq;
use num_complex::Complex64;
use qbattery_core::ode::{integrate, OdeOptions, OdeSystem, Termination};

struct Scaled(Complex64);

impl OdeSystem for Scaled {
    fn dim(&self) -> usize {
        1
    }
    fn rhs(&self, _t: f64, y: &[Complex64], dydt: &mut [Complex64]) {
        dydt[0] = self.0 * y[0];
    }
}

#[test]
fn exponential_decay_accuracy() {
    let sys = Scaled(Complex64::new(-1.0, 0.0));
    let opts = OdeOptions::default();
    let traj = integrate(&sys, &[Complex64::ONE], 0.0, 3.0, &[3.0], &opts).unwrap();
    assert_eq!(traj.termination, Termination::Completed);
    let y = traj.samples[0].1[0];
    assert_relative_eq!(y.re, (-3.0_f64).exp(), max_relative = 1e-8);
}

#[test]
fn oscillator_preserves_norm_and_phase() {
    let sys = Scaled(Complex64::new(0.0, 1.0));
    let opts = OdeOptions {
        rtol: 1e-10,
        atol: 1e-12,
        ..Default::default()
    };
    let t = 2.0 * std::f64::consts::PI;
    let traj = integrate(&sys, &[Complex64::ONE], 0.0, t, &[t], &opts).unwrap();
    let y = traj.samples[0].1[0];
    assert_relative_eq!(y.norm(), 1.0, max_relative = 1e-9);
    assert_relative_eq!(y.re, 1.0, max_relative = 1e-8);
    assert!(y.im.abs() < 1e-8);
}

#[test]
fn dense_output_hits_interior_samples() {
    let sys = Scaled(Complex64::new(-0.7, 0.4));
    let opts = OdeOptions::default();
    let times: Vec<f64> = (0..=20).map(|i| 0.25 * i as f64).collect();
    let traj = integrate(&sys, &[Complex64::ONE], 0.0, 5.0, &times, &opts).unwrap();
    assert_eq!(traj.samples.len(), times.len());
    for (t, y) in &traj.samples {
        let expected = (Complex64::new(-0.7, 0.4) * t).exp();
        assert!((y[0] - expected).norm() < 1e-7, "at t={t}");
    }
}

#[test]
fn sample_at_both_endpoints() {
    let sys = Scaled(Complex64::new(-1.0, 0.0));
    let opts = OdeOptions::default();
    let traj = integrate(&sys, &[Complex64::ONE], 0.0, 1.0, &[0.0, 1.0], &opts).unwrap();
    assert_eq!(traj.samples[0].0, 0.0);
    assert_eq!(traj.samples[0].1[0], Complex64::ONE);
    assert_eq!(traj.samples[1].0, 1.0);
}

#[test]
fn divergence_terminates_with_overflow() {
    let sys = Scaled(Complex64::new(2.0, 0.0));
    let opts = OdeOptions {
        overflow_limit: 1e6,
        ..Default::default()
    };
    let traj = integrate(&sys, &[Complex64::ONE], 0.0, 100.0, &[100.0], &opts).unwrap();
    match traj.termination {
        Termination::Overflow { t } => assert!(t < 10.0),
        other => panic!("expected overflow, got {other:?}"),
    }
}

#[test]
fn samples_before_overflow_are_still_reported() {
    let sys = Scaled(Complex64::new(2.0, 0.0));
    let opts = OdeOptions {
        overflow_limit: 1e6,
        ..Default::default()
    };
    let times = [1.0, 2.0, 50.0];
    let traj = integrate(&sys, &[Complex64::ONE], 0.0, 100.0, &times, &opts).unwrap();
    assert!(traj.samples.len() >= 2);
    assert_relative_eq!(traj.samples[0].1[0].re, 2.0_f64.exp(), max_relative = 1e-6);
}
