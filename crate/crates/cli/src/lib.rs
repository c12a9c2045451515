//! Experiment runner around the quantum-battery library: declarative
//! parameter sweeps with CSV/JSON artifacts, plus the self-verification
//! suite backing the acceptance criteria.

pub mod config;
pub mod format;
pub mod recipes;
pub mod sweep;
pub mod verify;
