//! First- and second-moment dynamics of the charger–holder pair in the
//! rotated frame.
//!
//! The closed ODE set follows from the adjoint master equation. For the
//! linear drive the first moments are driven and the second moments stay
//! slaved to them (coherent product states); for the quadratic drive the
//! first moments vanish from vacuum and the second-moment block carries
//! all the physics.

use nalgebra::{Complex, DMatrix, DVector};
use num_complex::Complex64;

use crate::analytic::EnergyReport;
use crate::error::{Error, Result};
use crate::ode::{self, OdeOptions, OdeSystem, Termination};
use crate::params::{BatteryParams, DriveKind};

/// First and second bosonic moments at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentState {
    /// ⟨c⟩, ⟨h⟩
    pub m_c: Complex64,
    pub m_h: Complex64,
    /// ⟨c†c⟩, ⟨h†h⟩
    pub n_c: f64,
    pub n_h: f64,
    /// ⟨c†h⟩
    pub u_ch: Complex64,
    /// ⟨cc⟩, ⟨hh⟩, ⟨ch⟩
    pub s_cc: Complex64,
    pub s_hh: Complex64,
    pub s_ch: Complex64,
    /// Time stamp in units of 1/γ.
    pub t: f64,
}

impl MomentState {
    pub fn vacuum() -> Self {
        Self {
            m_c: Complex64::ZERO,
            m_h: Complex64::ZERO,
            n_c: 0.0,
            n_h: 0.0,
            u_ch: Complex64::ZERO,
            s_cc: Complex64::ZERO,
            s_hh: Complex64::ZERO,
            s_ch: Complex64::ZERO,
            t: 0.0,
        }
    }

    /// Flat complex encoding used by the integrator:
    /// [m_c, m_h, n_c, n_h, u_ch, s_cc, s_hh, s_ch].
    pub fn to_vec(&self) -> Vec<Complex64> {
        vec![
            self.m_c,
            self.m_h,
            Complex64::new(self.n_c, 0.0),
            Complex64::new(self.n_h, 0.0),
            self.u_ch,
            self.s_cc,
            self.s_hh,
            self.s_ch,
        ]
    }

    pub fn from_slice(y: &[Complex64], t: f64) -> Self {
        Self {
            m_c: y[0],
            m_h: y[1],
            n_c: y[2].re,
            n_h: y[3].re,
            u_ch: y[4],
            s_cc: y[5],
            s_hh: y[6],
            s_ch: y[7],
            t,
        }
    }
}

/// Holder quadrature variances and the squeezing verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    pub var_x: f64,
    pub var_p: f64,
    pub uncertainty_product: f64,
    /// True iff either variance is below the vacuum value 1/2.
    pub squeezed: bool,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Time derivative of every moment field.
pub fn moment_rhs(state: &MomentState, p: &BatteryParams) -> MomentState {
    let delta = p.delta;
    let g = p.g;
    let gamma = p.gamma;
    let gamma_h = p.gamma_h;
    let phase = Complex64::from_polar(1.0, p.theta);
    let omega = p.omega_drive_amp;

    let m_c = state.m_c;
    let m_h = state.m_h;
    let n_c = Complex64::new(state.n_c, 0.0);
    let n_h = Complex64::new(state.n_h, 0.0);
    let u = state.u_ch;
    let s_cc = state.s_cc;
    let s_hh = state.s_hh;
    let s_ch = state.s_ch;

    // drive-independent part (coupling + damping)
    let mut d_m_c = -I * (delta * m_c + g * m_h) - 0.5 * gamma * m_c;
    let d_m_h = -I * (delta * m_h + g * m_c) - 0.5 * gamma_h * m_h;
    let mut d_n_c = I * g * (u.conj() - u) - gamma * n_c;
    let mut d_n_h = I * g * (u - u.conj()) - gamma_h * n_h;
    let mut d_u = I * g * (n_h - n_c) - 0.5 * (gamma + gamma_h) * u;
    let mut d_s_cc = -(2.0 * I * delta + gamma) * s_cc - 2.0 * I * g * s_ch;
    let d_s_hh = -(2.0 * I * delta + gamma_h) * s_hh - 2.0 * I * g * s_ch;
    let mut d_s_ch =
        -(2.0 * I * delta + 0.5 * (gamma + gamma_h)) * s_ch - I * g * (s_hh + s_cc);

    match p.drive_kind {
        DriveKind::Linear => {
            d_m_c += -I * omega * phase;
            d_n_c += Complex64::new(-2.0 * omega * (phase.conj() * m_c).im, 0.0);
            d_n_h += Complex64::ZERO;
            d_u += I * omega * phase.conj() * m_h;
            d_s_cc += -2.0 * I * omega * phase * m_c;
            d_s_ch += -I * omega * phase * m_h;
        }
        DriveKind::Quadratic => {
            d_m_c += -I * omega * phase * m_c.conj();
            d_n_c += Complex64::new(-2.0 * omega * (phase.conj() * s_cc).im, 0.0);
            d_u += I * omega * phase.conj() * s_ch;
            d_s_cc += -I * omega * phase * (2.0 * n_c + Complex64::ONE);
            d_s_ch += -I * omega * phase * u;
        }
    }

    MomentState {
        m_c: d_m_c,
        m_h: d_m_h,
        n_c: d_n_c.re,
        n_h: d_n_h.re,
        u_ch: d_u,
        s_cc: d_s_cc,
        s_hh: d_s_hh,
        s_ch: d_s_ch,
        t: 1.0,
    }
}

struct MomentSystem<'a> {
    p: &'a BatteryParams,
}

impl OdeSystem for MomentSystem<'_> {
    fn dim(&self) -> usize {
        8
    }

    fn rhs(&self, t: f64, y: &[Complex64], dydt: &mut [Complex64]) {
        let state = MomentState::from_slice(y, t);
        let d = moment_rhs(&state, self.p);
        // keep the full complex derivative of the occupations so the
        // integrator sees a smooth system; imaginary parts stay at zero
        dydt.copy_from_slice(&d.to_vec());
    }
}

/// A time-resolved moment trajectory.
#[derive(Debug, Clone)]
pub struct MomentTrajectory {
    pub states: Vec<MomentState>,
    pub termination: Termination,
}

/// Integrate from the vacuum up to `t_end`, reporting at `sample_times`.
pub fn integrate(
    p: &BatteryParams,
    t_end: f64,
    tol: f64,
    sample_times: &[f64],
) -> Result<MomentTrajectory> {
    p.validate()?;
    if !(t_end > 0.0) {
        return Err(Error::InvalidParams("t_end must be positive".into()));
    }
    if !(1e-12..=1e-4).contains(&tol) {
        return Err(Error::InvalidParams("tol must lie in [1e-12, 1e-4]".into()));
    }
    let sys = MomentSystem { p };
    let opts = OdeOptions {
        rtol: tol,
        atol: tol * 1e-2,
        overflow_limit: 1e12,
        ..Default::default()
    };
    let y0 = MomentState::vacuum().to_vec();
    let traj = ode::integrate(&sys, &y0, 0.0, t_end, sample_times, &opts)?;
    Ok(MomentTrajectory {
        states: traj
            .samples
            .into_iter()
            .map(|(t, y)| MomentState::from_slice(&y, t))
            .collect(),
        termination: traj.termination,
    })
}

/// Number of real unknowns in the quadratic second-moment fixed point.
const QUAD_DIM: usize = 10;

fn second_moments_to_real(s: &MomentState) -> [f64; QUAD_DIM] {
    [
        s.n_c, s.n_h, s.u_ch.re, s.u_ch.im, s.s_cc.re, s.s_cc.im, s.s_hh.re, s.s_hh.im,
        s.s_ch.re, s.s_ch.im,
    ]
}

fn second_moments_from_real(x: &[f64]) -> MomentState {
    MomentState {
        m_c: Complex64::ZERO,
        m_h: Complex64::ZERO,
        n_c: x[0],
        n_h: x[1],
        u_ch: Complex64::new(x[2], x[3]),
        s_cc: Complex64::new(x[4], x[5]),
        s_hh: Complex64::new(x[6], x[7]),
        s_ch: Complex64::new(x[8], x[9]),
        t: f64::INFINITY,
    }
}

/// Real-expanded drift matrix and inhomogeneity of the quadratic
/// second-moment block, extracted from [`moment_rhs`] so the fixed point
/// and the dynamics share one set of coefficients.
pub fn quadratic_drift(p: &BatteryParams) -> (DMatrix<f64>, DVector<f64>) {
    let zero = second_moments_from_real(&[0.0; QUAD_DIM]);
    let b_state = moment_rhs(&zero, p);
    let b = DVector::from_row_slice(&second_moments_to_real(&b_state));
    let mut a = DMatrix::<f64>::zeros(QUAD_DIM, QUAD_DIM);
    for j in 0..QUAD_DIM {
        let mut unit = [0.0; QUAD_DIM];
        unit[j] = 1.0;
        let col_state = moment_rhs(&second_moments_from_real(&unit), p);
        let col = second_moments_to_real(&col_state);
        for i in 0..QUAD_DIM {
            a[(i, j)] = col[i] - b[i];
        }
    }
    (a, b)
}

/// Largest real part over the quadratic second-moment drift spectrum.
pub fn quadratic_drift_max_re(p: &BatteryParams) -> f64 {
    let (a, _) = quadratic_drift(p);
    a.complex_eigenvalues()
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Gaussian steady state by linear solve.
///
/// Linear drive: 2×2 complex first-moment solve, second moments are the
/// coherent-state products. Quadratic drive: 10-dimensional real solve of
/// the second-moment block.
pub fn steady_state_moments(p: &BatteryParams) -> Result<MomentState> {
    p.validate()?;
    match p.drive_kind {
        DriveKind::Linear => {
            if p.gamma <= 0.0 {
                return Err(Error::InvalidParams("linear steady state needs gamma > 0".into()));
            }
            let delta = Complex::new(p.delta, 0.0);
            let g = Complex::new(p.g, 0.0);
            let m = nalgebra::Matrix2::new(
                delta - I * (0.5 * p.gamma),
                g,
                g,
                delta - I * (0.5 * p.gamma_h),
            );
            let rhs = nalgebra::Vector2::new(
                -Complex64::from_polar(p.omega_drive_amp, p.theta),
                Complex64::ZERO,
            );
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            if det.norm() < 1e-14 {
                return Err(Error::SingularSystem { cond: f64::INFINITY });
            }
            let sol = nalgebra::Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
                * rhs
                / det;
            let (m_c, m_h) = (sol[0], sol[1]);
            Ok(MomentState {
                m_c,
                m_h,
                n_c: m_c.norm_sqr(),
                n_h: m_h.norm_sqr(),
                u_ch: m_c.conj() * m_h,
                s_cc: m_c * m_c,
                s_hh: m_h * m_h,
                s_ch: m_c * m_h,
                t: f64::INFINITY,
            })
        }
        DriveKind::Quadratic => {
            let (a, b) = quadratic_drift(p);
            let max_re = a
                .complex_eigenvalues()
                .iter()
                .map(|l| l.re)
                .fold(f64::NEG_INFINITY, f64::max);
            if max_re >= 0.0 {
                return Err(Error::NoSteadyState);
            }
            let svd = a.clone().svd(false, false);
            let smax = svd.singular_values.max();
            let smin = svd.singular_values.min();
            let cond = smax / smin;
            if !cond.is_finite() || cond > 1e14 {
                return Err(Error::SingularSystem { cond });
            }
            let lu = a.lu();
            let x = lu
                .solve(&(-b))
                .ok_or(Error::SingularSystem { cond })?;
            Ok(second_moments_from_real(x.as_slice()))
        }
    }
}

/// Holder energy report from a moment snapshot via
/// D = (1 + 2⟨h†h⟩ − 2|⟨h⟩|²)² − 4|⟨hh⟩ − ⟨h⟩²|².
pub fn energy_report_from_moments(m: &MomentState, omega_b: f64) -> Result<EnergyReport> {
    let n_h = m.n_h;
    let d = (1.0 + 2.0 * n_h - 2.0 * m.m_h.norm_sqr()).powi(2)
        - 4.0 * (m.s_hh - m.m_h * m.m_h).norm_sqr();
    EnergyReport::from_energy_and_d(omega_b * n_h, d, omega_b)
}

/// Holder quadrature variances for quadratures referenced to the drive
/// phase θ.
pub fn quadrature_variances(m: &MomentState, theta: f64) -> QuadratureReport {
    let phase = Complex64::from_polar(1.0, -theta);
    let base = 0.5 + m.n_h - m.m_h.norm_sqr();
    let aniso = (phase * (m.s_hh - m.m_h * m.m_h)).re;
    let var_x = base + aniso;
    let var_p = base - aniso;
    let uncertainty_product = (var_x * var_p).max(0.0).sqrt();
    QuadratureReport {
        var_x,
        var_p,
        uncertainty_product,
        squeezed: var_x.min(var_p) < 0.5,
    }
}

/// Charging power P(t) = ℰ(t)/t along a trajectory.
#[derive(Debug, Clone)]
pub struct PowerSeries {
    pub samples: Vec<(f64, f64)>,
    pub t_peak: f64,
    pub p_peak: f64,
}

pub fn charging_power(trajectory: &MomentTrajectory, omega_b: f64) -> Result<PowerSeries> {
    let mut samples = Vec::with_capacity(trajectory.states.len());
    let mut t_peak = f64::NAN;
    let mut p_peak = f64::NEG_INFINITY;
    for s in &trajectory.states {
        if s.t <= 0.0 {
            continue;
        }
        let report = energy_report_from_moments(s, omega_b)?;
        let power = report.ergotropy / s.t;
        if power > p_peak {
            p_peak = power;
            t_peak = s.t;
        }
        samples.push((s.t, power));
    }
    Ok(PowerSeries {
        samples,
        t_peak,
        p_peak,
    })
}
