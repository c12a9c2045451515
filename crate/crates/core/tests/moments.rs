//! Moment tier: fixed points, gauge invariance, Gaussian structure.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use qbattery_core::analytic;
use qbattery_core::moments::*;
use qbattery_core::ode::Termination;
use qbattery_core::{BatteryParams, DriveKind, Error};

fn linear(delta: f64, g: f64, gamma: f64, omega: f64) -> BatteryParams {
    BatteryParams {
        delta,
        g,
        gamma,
        omega_drive_amp: omega,
        drive_kind: DriveKind::Linear,
        ..Default::default()
    }
}

fn quadratic(delta: f64, g: f64, gamma: f64, omega: f64) -> BatteryParams {
    BatteryParams {
        drive_kind: DriveKind::Quadratic,
        ..linear(delta, g, gamma, omega)
    }
}

#[test]
fn vacuum_is_fixed_without_drive() {
    for p in [linear(0.4, 0.8, 1.0, 0.0), quadratic(0.4, 0.8, 1.0, 0.0)] {
        let d = moment_rhs(&MomentState::vacuum(), &p);
        assert_eq!(d.m_c.norm(), 0.0);
        assert_eq!(d.n_c, 0.0);
        assert_eq!(d.s_cc.norm(), 0.0);
        assert_eq!(d.u_ch.norm(), 0.0);
    }
}

#[test]
fn linear_steady_solver_matches_closed_form() {
    for (delta, g, omega) in [(0.0, 1.0, 0.1), (0.7, 0.5, 0.2), (-1.2, 1.5, 0.3)] {
        let p = linear(delta, g, 1.0, omega);
        let m = steady_state_moments(&p).unwrap();
        let r = energy_report_from_moments(&m, p.omega_b).unwrap();
        let expected = analytic::linear_steady_ergotropy(&p).unwrap();
        assert_relative_eq!(r.ergotropy, expected.ergotropy, max_relative = 1e-12);
        assert!(r.e_passive.abs() < 1e-12);
    }
}

#[test]
fn linear_steady_state_is_coherent() {
    // the linear battery steady state factorizes: n = |⟨a⟩|², s = ⟨a⟩²
    let p = linear(0.3, 0.8, 1.0, 0.25);
    let m = steady_state_moments(&p).unwrap();
    assert_relative_eq!(m.n_c, m.m_c.norm_sqr(), max_relative = 1e-12);
    assert_relative_eq!(m.n_h, m.m_h.norm_sqr(), max_relative = 1e-12);
    assert!((m.s_cc - m.m_c * m.m_c).norm() < 1e-12);
    assert!((m.s_hh - m.m_h * m.m_h).norm() < 1e-12);
    assert!((m.s_ch - m.m_c * m.m_h).norm() < 1e-12);
    assert!((m.u_ch - m.m_c.conj() * m.m_h).norm() < 1e-12);
}

#[test]
fn quadratic_steady_solver_matches_closed_form() {
    for (delta, g, omega) in [(0.5, 1.0, 0.6), (0.2, 0.9, 0.4), (-0.8, 1.2, 0.3)] {
        let p = quadratic(delta, g, 1.0, omega);
        assert!(analytic::liouvillian_stable(&p).unwrap());
        let m = steady_state_moments(&p).unwrap();
        let r = energy_report_from_moments(&m, p.omega_b).unwrap();
        assert_relative_eq!(
            r.e_holder,
            analytic::quadratic_steady_energy(&p).unwrap(),
            max_relative = 1e-11
        );
        assert_relative_eq!(
            r.d_value,
            analytic::quadratic_steady_d(&p).unwrap(),
            max_relative = 1e-11
        );
        // quadratic drive displaces nothing: first moments stay zero
        assert_eq!(m.m_c.norm(), 0.0);
        assert_eq!(m.m_h.norm(), 0.0);
    }
}

#[test]
fn quadratic_steady_rejects_unstable_parameters() {
    assert!(matches!(
        steady_state_moments(&quadratic(0.5, 1.0, 1.0, 1.2)),
        Err(Error::NoSteadyState)
    ));
}

#[test]
fn drift_stability_agrees_with_analytic_rule() {
    for i in 0..15 {
        for j in 0..15 {
            let delta = -1.8 + 3.6 * i as f64 / 14.0;
            let omega = 0.02 + 1.96 * j as f64 / 14.0;
            let p = quadratic(delta, 1.0, 1.0, omega);
            let drift_stable = quadratic_drift_max_re(&p) < 0.0;
            let rule = analytic::liouvillian_stable(&p).unwrap();
            // skip razor-thin margins where both sides sit on the boundary
            let margin = (quadratic_drift_max_re(&p)).abs();
            if margin > 1e-6 {
                assert_eq!(drift_stable, rule, "at delta={delta}, omega={omega}");
            }
        }
    }
}

#[test]
fn theta_gauge_invariance_of_energies() {
    for theta in [0.0, 0.9, 2.3, 5.1] {
        let p = BatteryParams {
            theta,
            ..quadratic(0.5, 1.0, 1.0, 0.6)
        };
        let m = steady_state_moments(&p).unwrap();
        let r = energy_report_from_moments(&m, p.omega_b).unwrap();
        let reference = energy_report_from_moments(
            &steady_state_moments(&quadratic(0.5, 1.0, 1.0, 0.6)).unwrap(),
            1.0,
        )
        .unwrap();
        assert_relative_eq!(r.e_holder, reference.e_holder, max_relative = 1e-10);
        assert_relative_eq!(r.ergotropy, reference.ergotropy, max_relative = 1e-10);
        // quadratures co-rotate with the drive phase
        let q = quadrature_variances(&m, p.theta);
        let q0 = quadrature_variances(
            &steady_state_moments(&quadratic(0.5, 1.0, 1.0, 0.6)).unwrap(),
            0.0,
        );
        assert_relative_eq!(q.var_x, q0.var_x, max_relative = 1e-10);
        assert_relative_eq!(q.var_p, q0.var_p, max_relative = 1e-10);
    }
}

#[test]
fn trajectory_relaxes_to_the_fixed_point() {
    let p = quadratic(0.5, 1.0, 1.0, 0.6);
    let traj = integrate(&p, 120.0, 1e-10, &[120.0]).unwrap();
    assert_eq!(traj.termination, Termination::Completed);
    let m = &traj.states[0];
    let fixed = steady_state_moments(&p).unwrap();
    assert_relative_eq!(m.n_h, fixed.n_h, max_relative = 1e-7);
    assert_relative_eq!(m.n_c, fixed.n_c, max_relative = 1e-7);
    assert!((m.s_hh - fixed.s_hh).norm() < 1e-7);
}

#[test]
fn unstable_drive_overflows_cleanly() {
    let p = quadratic(0.5, 1.0, 1.0, 1.6);
    let traj = integrate(&p, 400.0, 1e-8, &[400.0]).unwrap();
    assert!(matches!(traj.termination, Termination::Overflow { .. }));
}

#[test]
fn vacuum_quadratures_are_at_the_uncertainty_floor() {
    let q = quadrature_variances(&MomentState::vacuum(), 0.0);
    assert_abs_diff_eq!(q.var_x, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(q.var_p, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(q.uncertainty_product, 0.5, epsilon = 1e-15);
    assert!(!q.squeezed);
}

#[test]
fn quadratic_drive_squeezes_one_quadrature() {
    let p = quadratic(0.5, 1.0, 1.0, 0.6);
    let m = steady_state_moments(&p).unwrap();
    let q = quadrature_variances(&m, p.theta);
    assert!(q.squeezed);
    assert!(q.var_x.min(q.var_p) < 0.5);
    assert!(q.uncertainty_product >= 0.5 - 1e-12);
}

#[test]
fn charging_power_peak_is_interior() {
    let p = quadratic(0.5, 1.0, 1.0, 1.0);
    let times: Vec<f64> = (1..=200).map(|i| 0.1 * i as f64).collect();
    let traj = integrate(&p, 20.0, 1e-9, &times).unwrap();
    let power = charging_power(&traj, p.omega_b).unwrap();
    assert!(power.t_peak > 0.5 && power.t_peak < 19.0);
    assert!(power.p_peak > 0.0);
    // P = ℰ/t is consistent with the sampled series at the peak
    let (t, p_at) = power
        .samples
        .iter()
        .cloned()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    assert_eq!(t, power.t_peak);
    assert_eq!(p_at, power.p_peak);
}

#[test]
fn moment_state_roundtrip() {
    let p = quadratic(0.5, 1.0, 1.0, 0.6);
    let traj = integrate(&p, 2.0, 1e-9, &[2.0]).unwrap();
    let m = &traj.states[0];
    let back = MomentState::from_slice(&m.to_vec(), m.t);
    assert_eq!(m.n_c, back.n_c);
    assert_eq!(m.s_ch, back.s_ch);
}
