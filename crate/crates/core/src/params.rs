//! Physical parameters of the bipartite charger–holder battery.
//!
//! All rates and frequencies are expressed in units of the charger decay
//! rate γ (so `gamma = 1` is the conventional choice), while `omega_b`
//! enters only as an energy prefactor on reported energies.

use crate::error::{Error, Result};

/// How the charger is driven.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriveKind {
    /// One-photon coherent drive Ω(e^{iθ} c† + e^{-iθ} c).
    Linear,
    /// Two-photon (parametric) drive (Ω/2)(e^{iθ} c†c† + e^{-iθ} cc).
    Quadratic,
}

/// Full parameter set of the battery model in the rotated frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryParams {
    /// Battery level spacing ω_b; reporting prefactor only.
    pub omega_b: f64,
    /// Drive–battery detuning Δ = ω_b − ω_d.
    pub delta: f64,
    /// Charger–holder coupling strength g ≥ 0.
    pub g: f64,
    /// Charger decay rate γ ≥ 0 (the natural unit).
    pub gamma: f64,
    /// Optional holder decay rate γ_h ≥ 0.
    pub gamma_h: f64,
    /// Drive amplitude Ω ≥ 0.
    pub omega_drive_amp: f64,
    /// Drive phase θ ∈ [0, 2π).
    pub theta: f64,
    pub drive_kind: DriveKind,
}

impl Default for BatteryParams {
    fn default() -> Self {
        Self {
            omega_b: 1.0,
            delta: 0.0,
            g: 1.0,
            gamma: 1.0,
            gamma_h: 0.0,
            omega_drive_amp: 0.0,
            theta: 0.0,
            drive_kind: DriveKind::Linear,
        }
    }
}

impl BatteryParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.into()));
        if !(self.omega_b > 0.0) {
            return bad("omega_b must be positive");
        }
        if self.gamma < 0.0 {
            return bad("gamma must be non-negative");
        }
        if self.gamma_h < 0.0 {
            return bad("gamma_h must be non-negative");
        }
        if self.omega_drive_amp < 0.0 {
            return bad("drive amplitude must be non-negative");
        }
        if self.g < 0.0 {
            return bad("coupling g must be non-negative");
        }
        for (name, v) in [
            ("delta", self.delta),
            ("g", self.g),
            ("gamma", self.gamma),
            ("gamma_h", self.gamma_h),
            ("omega", self.omega_drive_amp),
            ("theta", self.theta),
            ("omega_b", self.omega_b),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite")));
            }
        }
        Ok(())
    }

    /// True when the dropped counter-rotating coupling terms may matter,
    /// i.e. when g exceeds ω_b/1000.
    pub fn rwa_advisory(&self) -> bool {
        self.g > self.omega_b / 1000.0
    }
}
