//! Closed-form results for the linearly and quadratically driven battery.
//!
//! Everything here is a pure function of [`BatteryParams`]; the moment
//! engine and the Fock oracle are used elsewhere to cross-check these
//! expressions numerically.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{BatteryParams, DriveKind};

/// Heaviside step with the Θ(0) = 1 convention.
pub fn heaviside(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Ξ = sqrt(sqrt(5) − 2) ≃ 0.486, the corner of the Hamiltonian
/// stability boundaries in the (Δ/g, Ω/g) plane.
pub fn xi() -> f64 {
    (5.0_f64.sqrt() - 2.0).sqrt()
}

/// Position of the linear battery relative to the exceptional point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpRegime {
    BelowEp,
    AtEp,
    AboveEp,
}

/// First-moment drift eigenstructure of the linear battery.
#[derive(Debug, Clone, Copy)]
pub struct LinearSpectrum {
    /// Complex eigenvalues ε± = Δ ± G − iγ/4 of the drift matrix.
    pub eps_plus: Complex64,
    pub eps_minus: Complex64,
    /// Renormalized coupling G = sqrt(g² − (γ/4)²), defined above the EP.
    pub big_g: Option<f64>,
    /// Renormalized decay Γ = sqrt((γ/4)² − g²), defined below the EP.
    pub big_gamma: Option<f64>,
    /// Exceptional-point coupling g_EP = γ/4.
    pub g_ep: f64,
    pub regime: EpRegime,
}

/// Holder energy bookkeeping: E_h = E_h^β + ℰ with D the Gaussian
/// passive-state discriminant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub e_holder: f64,
    pub e_passive: f64,
    pub ergotropy: f64,
    pub d_value: f64,
}

impl EnergyReport {
    /// Assemble a report from the holder energy and the discriminant D,
    /// using E_h^β = ω_b (√D − 1)/2.
    ///
    /// D within 1e-9 below 1 is clamped up (floating-point noise on pure
    /// states); D below 1 − 1e-6 is rejected as non-physical.
    pub fn from_energy_and_d(e_holder: f64, d_value: f64, omega_b: f64) -> Result<Self> {
        let d = if d_value < 1.0 {
            if d_value >= 1.0 - 1e-9 {
                1.0
            } else if d_value >= 1.0 - 1e-6 {
                1.0
            } else {
                return Err(Error::NonPhysicalState(format!("D = {d_value} < 1")));
            }
        } else {
            d_value
        };
        let e_passive = omega_b * (d.sqrt() - 1.0) / 2.0;
        Ok(Self {
            e_holder,
            e_passive,
            ergotropy: e_holder - e_passive,
            d_value: d,
        })
    }

    pub fn zero() -> Self {
        Self {
            e_holder: 0.0,
            e_passive: 0.0,
            ergotropy: 0.0,
            d_value: 1.0,
        }
    }
}

/// Relative tolerance (in units of γ) for deciding coalescence at the EP.
pub const EP_TOLERANCE: f64 = 1e-12;

/// Eigenvalues ε± = Δ ± sqrt(g² − (γ/4)²) − iγ/4 of the first-moment
/// drift matrix, with the regime decided by |g − γ/4| against
/// `EP_TOLERANCE`·γ.
pub fn classify_linear_regime(p: &BatteryParams) -> Result<LinearSpectrum> {
    p.validate()?;
    require_drive(p, DriveKind::Linear)?;
    if p.gamma <= 0.0 {
        return Err(Error::InvalidParams("classify_linear_regime needs gamma > 0".into()));
    }
    let g_ep = p.gamma / 4.0;
    let disc = p.g * p.g - g_ep * g_ep;
    let root = Complex64::new(disc, 0.0).sqrt();
    let base = Complex64::new(p.delta, -g_ep);
    let (regime, big_g, big_gamma) = if (p.g - g_ep).abs() <= EP_TOLERANCE * p.gamma {
        (EpRegime::AtEp, Some(0.0), Some(0.0))
    } else if p.g < g_ep {
        (EpRegime::BelowEp, None, Some((-disc).sqrt()))
    } else {
        (EpRegime::AboveEp, Some(disc.sqrt()), None)
    };
    Ok(LinearSpectrum {
        eps_plus: base + root,
        eps_minus: base - root,
        big_g,
        big_gamma,
        g_ep,
        regime,
    })
}

/// Steady-state ergotropy of the linear battery,
/// ℰ = E_h = ω_b (gΩ)² / [(Δ² − g²)² + (γΔ/2)²], with E_h^β = 0.
pub fn linear_steady_ergotropy(p: &BatteryParams) -> Result<EnergyReport> {
    p.validate()?;
    require_drive(p, DriveKind::Linear)?;
    if p.gamma <= 0.0 {
        return Err(Error::InvalidParams("steady state needs gamma > 0".into()));
    }
    if p.delta == 0.0 && p.g == 0.0 {
        return Err(Error::DegenerateDivision);
    }
    if p.omega_drive_amp == 0.0 {
        return Ok(EnergyReport::zero());
    }
    let num = (p.g * p.omega_drive_amp).powi(2);
    let den = (p.delta * p.delta - p.g * p.g).powi(2) + (0.5 * p.gamma * p.delta).powi(2);
    let e = p.omega_b * num / den;
    EnergyReport::from_energy_and_d(e, 1.0, p.omega_b)
}

/// Detuning Δ' maximizing the steady-state ergotropy:
/// Δ' = sqrt(g² − (γ/(2√2))²) Θ(g − γ/(2√2)).
pub fn linear_optimal_detuning(g: f64, gamma: f64) -> f64 {
    let threshold = gamma / (2.0 * 2.0_f64.sqrt());
    if heaviside(g - threshold) == 1.0 {
        (g * g - threshold * threshold).max(0.0).sqrt()
    } else {
        0.0
    }
}

/// Steady-state ergotropy at the optimal detuning Δ'.
///
/// Piecewise in g against γ/(2√2); the boundary belongs to the first
/// branch (the two branches are continuous there).
pub fn linear_max_steady_ergotropy(p: &BatteryParams) -> Result<f64> {
    p.validate()?;
    require_drive(p, DriveKind::Linear)?;
    if p.gamma <= 0.0 || p.g <= 0.0 {
        return Err(Error::InvalidParams("needs gamma > 0 and g > 0".into()));
    }
    let omega = p.omega_drive_amp;
    let threshold = p.gamma / (2.0 * 2.0_f64.sqrt());
    let val = if p.g <= threshold {
        p.omega_b * (omega / p.g).powi(2)
    } else {
        p.omega_b
            * (omega / p.gamma).powi(2)
            * (4.0 * p.g).powi(2)
            / ((2.0 * p.g).powi(2) - (p.gamma / 2.0).powi(2))
    };
    Ok(val)
}

/// Time-domain ergotropy of the linear battery at zero detuning.
///
/// Branches: lossless (γ = 0), below / at / above the exceptional point.
/// The hyperbolic branch is evaluated in exponential form to stay finite
/// at large Γt.
pub fn linear_ergotropy_at(p: &BatteryParams, t: f64) -> Result<EnergyReport> {
    p.validate()?;
    require_drive(p, DriveKind::Linear)?;
    if p.delta != 0.0 {
        return Err(Error::UnsupportedDetuning { delta: p.delta });
    }
    if t < 0.0 {
        return Err(Error::InvalidParams("time must be non-negative".into()));
    }
    if p.omega_drive_amp == 0.0 || p.g == 0.0 {
        return Ok(EnergyReport::zero());
    }
    let omega = p.omega_drive_amp;
    let e = if p.gamma == 0.0 {
        p.omega_b * (2.0 * omega / p.g).powi(2) * (0.5 * p.g * t).sin().powi(4)
    } else {
        let spec = classify_linear_regime(p)?;
        let quarter = p.gamma / 4.0;
        let envelope = match spec.regime {
            EpRegime::BelowEp => {
                let big_gamma = spec.big_gamma.unwrap();
                let a = quarter / big_gamma;
                // cosh/sinh combination rewritten as two decaying exponentials
                0.5 * (1.0 + a) * ((big_gamma - quarter) * t).exp()
                    + 0.5 * (1.0 - a) * ((-big_gamma - quarter) * t).exp()
            }
            EpRegime::AtEp => (1.0 + quarter * t) * (-quarter * t).exp(),
            EpRegime::AboveEp => {
                let big_g = spec.big_g.unwrap();
                ((big_g * t).cos() + quarter / big_g * (big_g * t).sin()) * (-quarter * t).exp()
            }
        };
        let prefactor = match spec.regime {
            EpRegime::AtEp => p.omega_b * (4.0 * omega / p.gamma).powi(2),
            _ => p.omega_b * (omega / p.g).powi(2),
        };
        prefactor * (1.0 - envelope).powi(2)
    };
    EnergyReport::from_energy_and_d(e, 1.0, p.omega_b)
}

/// Bogoliubov eigenstructure of the quadratic Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct BogoliubovSpectrum {
    /// Eigenfrequencies ω± (principal square roots; ω₊ takes the inner +).
    pub omega_plus: Complex64,
    pub omega_minus: Complex64,
    /// Hyperbolic angles of the Bogoliubov coefficients; `None` when the
    /// mode is unstable or the defining tanh relation leaves [-1, 1].
    pub mu_plus: Option<f64>,
    pub mu_minus: Option<f64>,
    pub nu_plus: Option<f64>,
    pub nu_minus: Option<f64>,
    pub xi: f64,
    /// True iff both ω± are real.
    pub stable: bool,
}

fn real_if_close(z: Complex64, scale: f64) -> Option<f64> {
    if z.im.abs() <= 1e-10 * scale.max(1.0) {
        Some(z.re)
    } else {
        None
    }
}

/// ω± = sqrt(Δ² + g² − Ω²/2 ± sqrt(Ω²(Ω²/4 − g²) + 4g²Δ²)).
pub fn bogoliubov_spectrum(p: &BatteryParams) -> Result<BogoliubovSpectrum> {
    p.validate()?;
    require_drive(p, DriveKind::Quadratic)?;
    let (d, g, omega) = (p.delta, p.g, p.omega_drive_amp);
    let base = d * d + g * g - 0.5 * omega * omega;
    let disc = omega * omega * (0.25 * omega * omega - g * g) + 4.0 * g * g * d * d;
    let inner = Complex64::new(disc, 0.0).sqrt();
    let omega_plus = (Complex64::new(base, 0.0) + inner).sqrt();
    let omega_minus = (Complex64::new(base, 0.0) - inner).sqrt();

    let scale = (d.abs() + g + omega).max(1.0);
    let coeffs = |w: Complex64| -> (Option<f64>, Option<f64>) {
        match real_if_close(w, scale) {
            Some(wr) => {
                let den = (d + wr) * (d + wr) - g * g;
                if den == 0.0 {
                    return (None, None);
                }
                let tm = omega * (d + wr) / den;
                let tn = omega * (d - wr) / den;
                let ang = |t: f64| if t.abs() < 1.0 { Some(t.atanh()) } else { None };
                (ang(tm), ang(tn))
            }
            None => (None, None),
        }
    };
    let (mu_plus, nu_plus) = coeffs(omega_plus);
    let (mu_minus, nu_minus) = coeffs(omega_minus);
    let stable =
        real_if_close(omega_plus, scale).is_some() && real_if_close(omega_minus, scale).is_some();
    Ok(BogoliubovSpectrum {
        omega_plus,
        omega_minus,
        mu_plus,
        mu_minus,
        nu_plus,
        nu_minus,
        xi: xi(),
        stable,
    })
}

/// Hamiltonian stability verdict with the three boundary Ω-values at the
/// working Δ/g ratio (`None` where the Heaviside gate switches a
/// boundary off).
#[derive(Debug, Clone, Copy)]
pub struct HamiltonianStability {
    pub stable: bool,
    pub boundaries: [Option<f64>; 3],
}

pub fn hamiltonian_stability(p: &BatteryParams) -> Result<HamiltonianStability> {
    p.validate()?;
    require_drive(p, DriveKind::Quadratic)?;
    if p.g <= 0.0 {
        return Err(Error::InvalidParams("hamiltonian_stability needs g > 0".into()));
    }
    let g = p.g;
    let r = p.delta.abs() / g;
    let b1 = if heaviside(r - xi()) == 1.0 && r > 0.0 {
        let dd = p.delta.abs();
        Some((dd - g * g / dd).abs())
    } else {
        None
    };
    let (b2, b3) = if heaviside(0.5 - r) == 1.0 {
        let lo = (1.0 - 2.0 * r).max(0.0).sqrt();
        let hi = (1.0 + 2.0 * r).sqrt();
        let b2 = Some(g * (hi - lo));
        let b3 = if heaviside(r - xi()) == 1.0 {
            Some(g * (hi + lo))
        } else {
            None
        };
        (b2, b3)
    } else {
        (None, None)
    };
    let stable = bogoliubov_spectrum(p)?.stable;
    Ok(HamiltonianStability {
        stable,
        boundaries: [b1, b2, b3],
    })
}

/// The two critical driving amplitudes of the dissipative theory:
/// Ω_c⁽¹⁾ = sqrt((γ/2)² + (2Δ)²) and
/// Ω_c⁽²⁾ = sqrt((γ/2)² + (Δ − g²/Δ)²), with the Δ = 0, g > 0 pole of
/// the second reported as +∞.
pub fn critical_amplitudes(p: &BatteryParams) -> Result<(f64, f64)> {
    p.validate()?;
    require_drive(p, DriveKind::Quadratic)?;
    let half_gamma = 0.5 * p.gamma;
    let c1 = (half_gamma * half_gamma + (2.0 * p.delta).powi(2)).sqrt();
    let c2 = if p.delta == 0.0 {
        if p.g == 0.0 {
            half_gamma
        } else {
            f64::INFINITY
        }
    } else {
        let q = p.delta - p.g * p.g / p.delta;
        (half_gamma * half_gamma + q * q).sqrt()
    };
    Ok((c1, c2))
}

/// Liouvillian phase-diagram rule: a steady state exists iff
/// Ω < Ω_c⁽¹⁾ for Δ/g ≤ 1/√3 and Ω < Ω_c⁽²⁾ for Δ/g > 1/√3.
/// Boundary points count as unstable.
pub fn liouvillian_stable(p: &BatteryParams) -> Result<bool> {
    p.validate()?;
    require_drive(p, DriveKind::Quadratic)?;
    let (c1, c2) = critical_amplitudes(p)?;
    let ratio = if p.g > 0.0 {
        p.delta.abs() / p.g
    } else {
        f64::INFINITY
    };
    let threshold = if ratio <= 1.0 / 3.0_f64.sqrt() { c1 } else { c2 };
    Ok(p.omega_drive_amp < threshold)
}

/// Steady-state holder energy of the quadratic battery, Eq.-level form:
/// a product of two rational factors in (Δ, g, γ, Ω).
pub fn quadratic_steady_energy(p: &BatteryParams) -> Result<f64> {
    p.validate()?;
    require_drive(p, DriveKind::Quadratic)?;
    if !liouvillian_stable(p)? {
        return Err(Error::NoSteadyState);
    }
    let (d2, g2, hg2, o2) = squares(p);
    let first = o2 / (4.0 * d2 + hg2 - o2);
    let num = d2 * d2 + 0.5 * g2 * g2 - d2 * (0.5 * g2 + o2 - hg2);
    let den = d2 * d2 + g2 * g2 - d2 * (2.0 * g2 + o2 - hg2);
    Ok(p.omega_b * first * num / den)
}

/// Δ → 0 limit of [`quadratic_steady_energy`].
pub fn quadratic_steady_energy_small_delta(p: &BatteryParams) -> f64 {
    let hg2 = (0.5 * p.gamma).powi(2);
    let o2 = p.omega_drive_amp * p.omega_drive_amp;
    0.5 * p.omega_b * o2 / (hg2 - o2)
}

/// g → 0 limit of [`quadratic_steady_energy`].
pub fn quadratic_steady_energy_small_g(p: &BatteryParams) -> f64 {
    let hg2 = (0.5 * p.gamma).powi(2);
    let o2 = p.omega_drive_amp * p.omega_drive_amp;
    p.omega_b * o2 / (4.0 * p.delta * p.delta + hg2 - o2)
}

/// Exact steady-state discriminant D of the quadratic battery.
pub fn quadratic_steady_d(p: &BatteryParams) -> Result<f64> {
    p.validate()?;
    require_drive(p, DriveKind::Quadratic)?;
    if !liouvillian_stable(p)? {
        return Err(Error::NoSteadyState);
    }
    let (d2, g2, hg2, o2) = squares(p);
    let a = 4.0 * d2 + hg2; // (2Δ)² + (γ/2)²
    let num = a * a * ((d2 - g2).powi(2) + d2 * hg2)
        - o2 * a * (2.0 * d2 * d2 + g2 * g2 - d2 * (2.0 * g2 + hg2))
        - d2 * o2 * o2 * (7.0 * d2 - 4.0 * g2 + hg2)
        - d2 * o2 * o2 * o2;
    let den = (a - o2).powi(2) * (d2 * d2 - d2 * (2.0 * g2 + o2 - hg2) + g2 * g2);
    Ok(num / den)
}

/// Compact Δ → 0 limit of the steady-state ergotropy,
/// ℰ = (ω_b/2)(D − √D) with D = (γ/2)²/((γ/2)² − Ω²).
pub fn quadratic_steady_ergotropy_small_delta(p: &BatteryParams) -> f64 {
    let hg2 = (0.5 * p.gamma).powi(2);
    let o2 = p.omega_drive_amp * p.omega_drive_amp;
    let d = hg2 / (hg2 - o2);
    0.5 * p.omega_b * (d - d.sqrt())
}

/// Full steady-state report of the quadratic battery.
pub fn quadratic_steady_ergotropy(p: &BatteryParams) -> Result<EnergyReport> {
    let e_holder = quadratic_steady_energy(p)?;
    let d = quadratic_steady_d(p)?;
    EnergyReport::from_energy_and_d(e_holder, d, p.omega_b)
}

fn squares(p: &BatteryParams) -> (f64, f64, f64, f64) {
    (
        p.delta * p.delta,
        p.g * p.g,
        (0.5 * p.gamma).powi(2),
        p.omega_drive_amp * p.omega_drive_amp,
    )
}

fn require_drive(p: &BatteryParams, kind: DriveKind) -> Result<()> {
    if p.drive_kind != kind {
        return Err(Error::InvalidParams(format!(
            "operation requires {:?} drive, got {:?}",
            kind, p.drive_kind
        )));
    }
    Ok(())
}
