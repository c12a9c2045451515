//! Adaptive Dormand–Prince 5(4) integrator over complex state vectors.
//!
//! PI step-size control with FSAL, dense output by cubic Hermite
//! interpolation between accepted steps, and an overflow guard so that
//! physically divergent trajectories terminate cleanly.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait OdeSystem {
    fn dim(&self) -> usize;
    fn rhs(&self, t: f64, y: &[Complex64], dydt: &mut [Complex64]);
}

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Abort once any |y_i| exceeds this (divergent trajectories).
    pub overflow_limit: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-8,
            atol: 1e-10,
            max_steps: 50_000_000,
            overflow_limit: 1e12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    Completed,
    /// The state magnitude passed the overflow limit at this time.
    Overflow { t: f64 },
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    /// (t, y) at the requested sample times, ascending.
    pub samples: Vec<(f64, Vec<Complex64>)>,
    pub termination: Termination,
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
// b - b_hat (error weights), incl. k7.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate from `t0` to `t_end`, reporting the state at `sample_times`
/// (must be ascending and within [t0, t_end]).
pub fn integrate<S: OdeSystem>(
    sys: &S,
    y0: &[Complex64],
    t0: f64,
    t_end: f64,
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory> {
    assert_eq!(y0.len(), sys.dim());
    assert!(t_end > t0, "t_end must exceed t0");
    for w in sample_times.windows(2) {
        assert!(w[0] <= w[1], "sample times must be ascending");
    }
    let n = y0.len();
    let mut samples: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(sample_times.len());
    let mut next_sample = 0usize;

    let mut t = t0;
    let mut y = y0.to_vec();
    let mut f0 = vec![Complex64::ZERO; n];
    sys.rhs(t, &y, &mut f0);

    // emit any samples at t0
    while next_sample < sample_times.len() && sample_times[next_sample] <= t0 {
        samples.push((sample_times[next_sample], y.clone()));
        next_sample += 1;
    }

    let mut h = initial_step(&y, &f0, t_end - t0, opts);
    let mut err_old: f64 = 1e-4;
    let mut k = vec![vec![Complex64::ZERO; n]; 7];
    k[0].copy_from_slice(&f0);
    let mut y_stage = vec![Complex64::ZERO; n];
    let mut y_new = vec![Complex64::ZERO; n];

    let mut steps = 0usize;
    loop {
        if t >= t_end {
            break;
        }
        if steps >= opts.max_steps {
            return Err(Error::ConvergenceFailure);
        }
        steps += 1;
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepSizeUnderflow { t });
        }
        let h_eff = h.min(t_end - t);

        // stages 2..7
        for s in 0..6 {
            for i in 0..n {
                let mut acc = Complex64::ZERO;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    let a = A[s][j];
                    if a != 0.0 {
                        acc += a * kj[i];
                    }
                }
                y_stage[i] = y[i] + h_eff * acc;
            }
            let (dst, rest) = {
                let (head, tail) = k.split_at_mut(s + 1);
                (&mut tail[0], head)
            };
            let _ = rest;
            sys.rhs(t + C[s] * h_eff, &y_stage, dst);
        }
        // 5th-order solution is stage 7's argument (FSAL): y_stage holds it
        y_new.copy_from_slice(&y_stage);

        // error estimate
        let mut err_sq = 0.0;
        for i in 0..n {
            let mut e = Complex64::ZERO;
            for (j, kj) in k.iter().enumerate() {
                if E[j] != 0.0 {
                    e += E[j] * kj[i];
                }
            }
            let e = e * h_eff;
            let scale = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
            err_sq += (e.norm() / scale).powi(2);
        }
        let err = (err_sq / n as f64).sqrt();

        if err <= 1.0 {
            // accept; dense output over [t, t+h_eff] by cubic Hermite
            let t_new = t + h_eff;
            while next_sample < sample_times.len() && sample_times[next_sample] <= t_new + 1e-14 {
                let ts = sample_times[next_sample].min(t_new);
                let theta = ((ts - t) / h_eff).clamp(0.0, 1.0);
                samples.push((sample_times[next_sample], hermite(&y, &y_new, &k[0], &k[6], h_eff, theta)));
                next_sample += 1;
            }
            let max_abs = y_new.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if max_abs > opts.overflow_limit {
                return Ok(Trajectory {
                    samples,
                    termination: Termination::Overflow { t: t_new },
                });
            }
            t = t_new;
            std::mem::swap(&mut y, &mut y_new);
            let (first, last) = (0usize, 6usize);
            // FSAL: k1 <- k7
            let tmp = k[last].clone();
            k[first].copy_from_slice(&tmp);

            let fac = 0.9 * err.max(1e-10).powf(-0.17) * err_old.powf(0.04);
            h = h_eff * fac.clamp(0.2, 10.0);
            err_old = err.max(1e-10);
        } else {
            let fac = 0.9 * err.powf(-0.2);
            h = h_eff * fac.clamp(0.1, 1.0);
        }
    }

    // samples exactly at t_end that the loop may have missed
    while next_sample < sample_times.len() && sample_times[next_sample] <= t_end + 1e-12 {
        samples.push((sample_times[next_sample], y.clone()));
        next_sample += 1;
    }
    Ok(Trajectory {
        samples,
        termination: Termination::Completed,
    })
}

fn hermite(
    y0: &[Complex64],
    y1: &[Complex64],
    f0: &[Complex64],
    f1: &[Complex64],
    h: f64,
    theta: f64,
) -> Vec<Complex64> {
    let n = y0.len();
    let mut out = vec![Complex64::ZERO; n];
    let th1 = 1.0 - theta;
    for i in 0..n {
        let diff = y1[i] - y0[i];
        out[i] = th1 * y0[i]
            + theta * y1[i]
            + theta * (theta - 1.0)
                * ((1.0 - 2.0 * theta) * diff + (theta - 1.0) * h * f0[i] + theta * h * f1[i]);
    }
    out
}

fn initial_step(y: &[Complex64], f: &[Complex64], span: f64, opts: &OdeOptions) -> f64 {
    let ny = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let nf = f.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let h = if nf > 1e-12 {
        0.01 * (ny + opts.atol.sqrt()) / nf
    } else {
        span / 100.0
    };
    h.min(span / 10.0).max(1e-10)
}
