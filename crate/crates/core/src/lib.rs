//! Simulation and verification library for a driven-dissipative quantum
//! battery: a damped charger oscillator coupled to a lossless holder,
//! charged by either a one-photon (linear) or two-photon (quadratic,
//! parametric) coherent drive.
//!
//! Three tiers of description, cheapest first:
//!
//! * [`analytic`] — closed-form spectra, steady-state energies and
//!   ergotropies, stability boundaries and critical drive amplitudes;
//! * [`moments`] — exact equations of motion for the first and second
//!   field moments (the model is Gaussian), integrated adaptively or
//!   solved directly for their fixed point;
//! * [`fock`] — brute-force Lindblad evolution on a truncated two-mode
//!   Fock space, the ground truth the other two tiers are tested against,
//!   plus the genuinely non-Gaussian diagnostics (purity, negativity,
//!   Liouvillian gap, eigen-sorted passive states).

pub mod analytic;
pub mod error;
pub mod fock;
pub mod moments;
pub mod ode;
pub mod params;

pub use error::{Error, Result};
pub use params::{BatteryParams, DriveKind};
