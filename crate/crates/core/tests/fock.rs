//! Fock oracle: operator algebra, Lindblad structure, diagnostics.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use nalgebra::DMatrix;
use num_complex::Complex64;
use qbattery_core::analytic;
use qbattery_core::fock::*;
use qbattery_core::moments;
use qbattery_core::{BatteryParams, DriveKind};

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
fn qubit_truncation_annihilation() {
    let cfg = FockConfig::new(2, 2);
    let ops = build_operators(&cfg).unwrap();
    // charger annihilation acts as [[0,1],[0,0]] ⊗ I
    assert_eq!(ops.c.get(0, 2), Complex64::ONE);
    assert_eq!(ops.c.get(1, 3), Complex64::ONE);
    assert_eq!(ops.c.get(2, 0), Complex64::ZERO);
}

#[test]
fn number_operator_diagonal() {
    let cfg = FockConfig::new(3, 2);
    let ops = build_operators(&cfg).unwrap();
    for ic in 0..3 {
        for ih in 0..2 {
            let i = ic * 2 + ih;
            assert_abs_diff_eq!(ops.n_c.get(i, i).re, ic as f64, epsilon = 1e-15);
            assert_abs_diff_eq!(ops.n_h.get(i, i).re, ih as f64, epsilon = 1e-15);
        }
    }
}

#[test]
fn tensor_ordering_matrix_element() {
    // ⟨1,0| c†h |0,1⟩ = 1 with charger-major indexing
    let cfg = FockConfig::new(3, 3);
    let ops = build_operators(&cfg).unwrap();
    let cdh = ops.c_dag.matmul(&ops.h);
    let bra = 1 * 3 + 0;
    let ket = 0 * 3 + 1;
    assert_eq!(cdh.get(bra, ket), Complex64::ONE);
}

#[test]
fn commutator_holds_below_top_level() {
    let cfg = FockConfig::new(5, 4);
    let ops = build_operators(&cfg).unwrap();
    let comm_c = ops.c.matmul(&ops.c_dag);
    for ic in 0..4 {
        // exclude top charger level
        for ih in 0..4 {
            let i = ic * 4 + ih;
            let val = comm_c.get(i, i) - ops.n_c.get(i, i);
            assert_abs_diff_eq!(val.re, 1.0, epsilon = 1e-14);
        }
    }
}

#[test]
fn config_bounds_are_enforced() {
    assert!(FockConfig::new(1, 4).validate().is_err());
    assert!(FockConfig::new(41, 4).validate().is_err());
    assert!(FockConfig::new(40, 40).validate().is_ok());
    let cfg = FockConfig {
        n_c_levels: 40,
        n_h_levels: 41,
        rwa: true,
    };
    assert!(cfg.validate().is_err());
}

#[test]
fn rhs_preserves_trace() {
    let cfg = FockConfig::new(4, 3);
    let p = quadratic(0.5, 1.0, 1.0, 0.6);
    let engine = LindbladEngine::new(&p, &cfg).unwrap();
    let d = cfg.dim();
    // an arbitrary Hermitian unit-trace state
    let mut rho = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            let v = Complex64::new(
                ((i * 7 + j * 3) % 5) as f64 / 40.0,
                (i as f64 - j as f64) / 60.0,
            );
            rho[i * d + j] = if i == j {
                Complex64::from(1.0 / d as f64 + 0.01 * (i as f64 - d as f64 / 2.0).abs() / d as f64)
            } else {
                v
            };
        }
    }
    // hermitize
    for i in 0..d {
        for j in (i + 1)..d {
            let avg = 0.5 * (rho[i * d + j] + rho[j * d + i].conj());
            rho[i * d + j] = avg;
            rho[j * d + i] = avg.conj();
        }
    }
    let mut out = vec![Complex64::ZERO; d * d];
    engine.apply(0.0, &rho, &mut out);
    let dtrace: Complex64 = (0..d).map(|i| out[i * d + i]).sum();
    assert!(dtrace.norm() < 1e-12);
}

#[test]
fn dense_superoperator_matches_matrix_free_rhs() {
    let cfg = FockConfig::new(3, 3);
    let p = quadratic(-0.4, 0.8, 1.0, 0.5);
    let engine = LindbladEngine::new(&p, &cfg).unwrap();
    let l = engine.to_dense_superoperator().unwrap();
    let d = cfg.dim();
    let mut rho = vec![Complex64::ZERO; d * d];
    for (k, v) in rho.iter_mut().enumerate() {
        *v = Complex64::new((k % 7) as f64 / 7.0 - 0.4, (k % 5) as f64 / 5.0 - 0.3);
    }
    let mut out = vec![Complex64::ZERO; d * d];
    engine.apply(0.0, &rho, &mut out);
    // column-stacking vec: x[col*d + row] = rho[row, col]
    let x = nalgebra::DVector::from_fn(d * d, |k, _| rho[(k % d) * d + k / d]);
    let lx = &l * &x;
    for col in 0..d {
        for row in 0..d {
            let diff = (lx[col * d + row] - out[row * d + col]).norm();
            assert!(diff < 1e-12, "mismatch at ({row},{col}): {diff}");
        }
    }
}

#[test]
fn vacuum_is_steady_without_drive() {
    let p = quadratic(0.5, 1.0, 1.0, 0.0);
    let cfg = FockConfig::new(4, 4);
    let sd = steady_state_density(&p, &cfg).unwrap();
    assert!(sd.residual < 1e-10);
    assert!(!sd.saturated);
    assert_relative_eq!(sd.state.entry(0, 0).re, 1.0, max_relative = 1e-9);
    assert_relative_eq!(purity(&sd.state), 1.0, max_relative = 1e-9);
}

#[test]
fn steady_state_matches_analytic_energy() {
    let p = quadratic(0.5, 1.0, 1.0, 0.6);
    let cfg = FockConfig::new(12, 12);
    let sd = steady_state_density(&p, &cfg).unwrap();
    assert!(!sd.truncation_warning);
    let m = moments_from_density(&sd.state);
    let expected = analytic::quadratic_steady_energy(&p).unwrap();
    assert_relative_eq!(m.n_h, expected, max_relative = 1e-3);
    // the squeezed charger mode converges more slowly in the truncation
    let fixed = moments::steady_state_moments(&p).unwrap();
    assert_relative_eq!(m.n_c, fixed.n_c, max_relative = 5e-3);
    assert!((m.s_hh - fixed.s_hh).norm() < 1e-3);
}

#[test]
fn evolution_matches_moment_dynamics() {
    let p = linear(0.3, 0.8, 1.0, 0.2);
    let cfg = FockConfig::new(10, 10);
    let times = [0.5, 1.0, 2.0];
    let rho0 = DensityState::vacuum(cfg);
    let traj = evolve_density(&rho0, &p, &cfg, &times, 1e-8).unwrap();
    let gauss = moments::integrate(&p, 2.0, 1e-10, &times).unwrap();
    for ((_, ds), mg) in traj.states.iter().zip(gauss.states.iter()) {
        let mo = moments_from_density(ds);
        assert!((mo.m_c - mg.m_c).norm() < 1e-6);
        assert!((mo.m_h - mg.m_h).norm() < 1e-6);
        assert!((mo.n_h - mg.n_h).abs() < 1e-6);
        assert!((mo.s_ch - mg.s_ch).norm() < 1e-6);
    }
}

#[test]
fn evolved_state_stays_physical() {
    let p = quadratic(0.5, 1.0, 1.0, 0.8);
    let cfg = FockConfig::new(8, 8);
    let rho0 = DensityState::vacuum(cfg);
    let traj = evolve_density(&rho0, &p, &cfg, &[1.0, 3.0], 1e-9).unwrap();
    for (_, ds) in &traj.states {
        assert_abs_diff_eq!(ds.trace().re, 1.0, epsilon = 1e-10);
        let dense = ds.to_dense();
        let herm = (&dense + dense.adjoint()).scale(0.5);
        let min_eig = herm
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        assert!(min_eig > -1e-8, "min eigenvalue {min_eig}");
    }
}

#[test]
fn reduced_state_of_product_is_the_factor() {
    // |0⟩⟨0| ⊗ σ with σ a qubit-like mixture on the holder
    let cfg = FockConfig::new(2, 2);
    let d = cfg.dim();
    let mut rho = vec![Complex64::ZERO; d * d];
    rho[0] = Complex64::from(0.7); // |00⟩⟨00|
    rho[1 * d + 1] = Complex64::from(0.3); // |01⟩⟨01|
    rho[1] = Complex64::from(0.2); // |00⟩⟨01| coherence
    rho[d] = Complex64::from(0.2);
    let ds = DensityState { rho, cfg };
    let sigma = reduced_holder_state(&ds);
    assert_abs_diff_eq!(sigma[(0, 0)].re, 0.7, epsilon = 1e-14);
    assert_abs_diff_eq!(sigma[(1, 1)].re, 0.3, epsilon = 1e-14);
    assert_abs_diff_eq!(sigma[(0, 1)].re, 0.2, epsilon = 1e-14);
}

#[test]
fn entangled_pair_reduces_to_maximally_mixed() {
    let cfg = FockConfig::new(2, 2);
    let d = cfg.dim();
    // (|00⟩ + |11⟩)/√2
    let mut rho = vec![Complex64::ZERO; d * d];
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        rho[i * d + j] = Complex64::from(0.5);
    }
    let ds = DensityState { rho, cfg };
    let sigma = reduced_holder_state(&ds);
    assert_abs_diff_eq!(sigma[(0, 0)].re, 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(sigma[(1, 1)].re, 0.5, epsilon = 1e-14);
    assert!(sigma[(0, 1)].norm() < 1e-14);
    // textbook negativity of a Bell pair
    assert_abs_diff_eq!(negativity(&ds), 0.5, epsilon = 1e-12);
}

#[test]
fn product_states_have_zero_negativity() {
    let p = linear(0.0, 1.0, 1.0, 0.3);
    let cfg = FockConfig::new(8, 8);
    let rho0 = DensityState::vacuum(cfg);
    let traj = evolve_density(&rho0, &p, &cfg, &[0.7, 1.9], 1e-9).unwrap();
    // exactly zero in the untruncated theory; boundary truncation and
    // integrator noise leave a small floor
    for (_, ds) in &traj.states {
        assert!(negativity(ds) < 1e-5);
    }
}

#[test]
fn passive_sorting_definition() {
    // populations (0.2, 0.3, 0.5) on levels (0, 1, 2)
    let mut rho_h = DMatrix::<Complex64>::zeros(3, 3);
    rho_h[(0, 0)] = Complex64::from(0.2);
    rho_h[(1, 1)] = Complex64::from(0.3);
    rho_h[(2, 2)] = Complex64::from(0.5);
    let r = passive_energy_and_ergotropy(&rho_h, 1.0).unwrap();
    assert_relative_eq!(r.e_holder, 1.3, max_relative = 1e-12);
    assert_relative_eq!(r.e_passive, 0.7, max_relative = 1e-12);
    assert_relative_eq!(r.ergotropy, 0.6, max_relative = 1e-12);
}

#[test]
fn passive_state_has_zero_ergotropy() {
    let mut rho_h = DMatrix::<Complex64>::zeros(3, 3);
    rho_h[(0, 0)] = Complex64::from(0.6);
    rho_h[(1, 1)] = Complex64::from(0.3);
    rho_h[(2, 2)] = Complex64::from(0.1);
    let r = passive_energy_and_ergotropy(&rho_h, 1.0).unwrap();
    assert_abs_diff_eq!(r.ergotropy, 0.0, epsilon = 1e-12);
}

#[test]
fn nonphysical_holder_state_is_rejected() {
    let mut rho_h = DMatrix::<Complex64>::zeros(2, 2);
    rho_h[(0, 0)] = Complex64::from(1.1);
    rho_h[(1, 1)] = Complex64::from(-0.1);
    assert!(passive_energy_and_ergotropy(&rho_h, 1.0).is_err());
}

#[test]
fn purity_of_maximally_mixed() {
    let cfg = FockConfig::new(2, 2);
    let d = cfg.dim();
    let mut rho = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        rho[i * d + i] = Complex64::from(0.25);
    }
    let ds = DensityState { rho, cfg };
    assert_abs_diff_eq!(purity(&ds), 0.25, epsilon = 1e-14);
}

#[test]
fn gap_of_a_single_damped_mode() {
    // Ω = 0, g = 0, γ = 1: slowest nonzero decay is γ/2
    let p = linear(0.0, 0.0, 1.0, 0.0);
    let cfg = FockConfig::new(2, 2);
    let gap = liouvillian_gap(&p, &cfg).unwrap();
    assert_relative_eq!(gap, 0.5, max_relative = 1e-9);
}

#[test]
fn coherent_state_moments_roundtrip() {
    let cfg = FockConfig::new(14, 14);
    let alpha = Complex64::new(0.6, -0.3);
    let beta = Complex64::new(-0.2, 0.5);
    let amp = |z: Complex64, n: usize| -> Complex64 {
        let mut v = (-0.5 * z.norm_sqr()).exp() * Complex64::ONE;
        for k in 1..=n {
            v *= z / (k as f64).sqrt();
        }
        v
    };
    let d = cfg.dim();
    let mut psi = vec![Complex64::ZERO; d];
    for ic in 0..14 {
        for ih in 0..14 {
            psi[ic * 14 + ih] = amp(alpha, ic) * amp(beta, ih);
        }
    }
    let mut rho = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            rho[i * d + j] = psi[i] * psi[j].conj();
        }
    }
    let mut ds = DensityState { rho, cfg };
    ds.hermitize_and_normalize();
    let m = moments_from_density(&ds);
    assert!((m.m_c - alpha).norm() < 1e-8);
    assert!((m.m_h - beta).norm() < 1e-8);
    assert_relative_eq!(m.n_c, alpha.norm_sqr(), max_relative = 1e-7);
    assert!((m.s_cc - alpha * alpha).norm() < 1e-8);
    assert!((m.u_ch - alpha.conj() * beta).norm() < 1e-8);
}

#[test]
fn vacuum_moments_vanish() {
    let ds = DensityState::vacuum(FockConfig::new(4, 4));
    let m = moments_from_density(&ds);
    assert_eq!(m.m_c.norm(), 0.0);
    assert_eq!(m.n_h, 0.0);
    assert_eq!(m.s_cc.norm(), 0.0);
}

#[test]
fn counter_rotating_terms_are_negligible_at_weak_coupling() {
    // ω_b = 1000γ, g = ω_b/1000: the RWA advertises < 1% deviations
    let p = BatteryParams {
        omega_b: 1000.0,
        delta: 0.5,
        g: 1.0,
        gamma: 1.0,
        omega_drive_amp: 0.3,
        drive_kind: DriveKind::Linear,
        ..Default::default()
    };
    let times = [1.5];
    let mut cfg = FockConfig::new(6, 6);
    let rho0 = DensityState::vacuum(cfg);
    let with_rwa = evolve_density(&rho0, &p, &cfg, &times, 1e-9).unwrap();
    cfg.rwa = false;
    let rho0 = DensityState::vacuum(cfg);
    let without = evolve_density(&rho0, &p, &cfg, &times, 1e-9).unwrap();
    let m1 = moments_from_density(&with_rwa.states[0].1);
    let m2 = moments_from_density(&without.states[0].1);
    assert!(
        (m1.n_h - m2.n_h).abs() <= 0.01 * m1.n_h.max(1e-6),
        "n_h {} vs {}",
        m1.n_h,
        m2.n_h
    );
}

#[test]
fn saturation_flag_above_criticality() {
    let p = quadratic(0.5, 1.0, 1.0, 1.4);
    let cfg = FockConfig::new(6, 6);
    let sd = steady_state_density(&p, &cfg).unwrap();
    assert!(sd.saturated);
    let m = moments_from_density(&sd.state);
    assert!(m.n_h.is_finite() && m.n_h < 5.0);
}
