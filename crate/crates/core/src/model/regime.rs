//! Validity of the non-relativistic Floquet description.

use std::fmt;

use super::field::{DerivedParams, ElectronState, FieldConfig};
use super::Constants;

pub const ETA_HARD_LIMIT: f64 = 0.3;
pub const ETA_WARN_LIMIT: f64 = 0.1;
pub const BETA_HARD_LIMIT: f64 = 0.3;
pub const BETA_WARN_LIMIT: f64 = 0.1;
/// ωτ must exceed this, otherwise emission destroys the Floquet state.
pub const OMEGA_TAU_MIN: f64 = 10.0;
pub const PHOTON_ENERGY_RATIO_MAX: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Marginal,
    Invalid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "Valid",
            Verdict::Marginal => "Marginal",
            Verdict::Invalid => "Invalid",
        })
    }
}

/// Individual check outcomes; `true` means the check tripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RegimeFlags {
    pub eta_relativistic: bool,
    pub eta_warning: bool,
    pub beta_relativistic: bool,
    pub beta_warning: bool,
    pub floquet_destroyed: bool,
    pub photon_energy_high: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub eta: f64,
    pub beta_k: f64,
    pub omega_tau: f64,
    /// ħω / m_e c².
    pub photon_energy_ratio: f64,
    pub verdict: Verdict,
    pub flags: RegimeFlags,
}

impl RegimeReport {
    /// Classifies the four dimensionless groups.
    pub fn classify(eta: f64, beta_k: f64, omega_tau: f64, photon_energy_ratio: f64) -> Self {
        let flags = RegimeFlags {
            eta_relativistic: !(eta < ETA_HARD_LIMIT),
            eta_warning: !(eta < ETA_WARN_LIMIT),
            beta_relativistic: !(beta_k < BETA_HARD_LIMIT),
            beta_warning: !(beta_k < BETA_WARN_LIMIT),
            floquet_destroyed: !(omega_tau > OMEGA_TAU_MIN),
            photon_energy_high: !(photon_energy_ratio < PHOTON_ENERGY_RATIO_MAX),
        };
        let verdict =
            if flags.eta_relativistic || flags.beta_relativistic || flags.floquet_destroyed || flags.photon_energy_high
            {
                Verdict::Invalid
            } else if flags.eta_warning || flags.beta_warning {
                Verdict::Marginal
            } else {
                Verdict::Valid
            };
        RegimeReport { eta, beta_k, omega_tau, photon_energy_ratio, verdict, flags }
    }
}

pub fn validate_regime(cfg: &FieldConfig, p: &DerivedParams, s: &ElectronState) -> RegimeReport {
    let k = Constants::codata2018();
    RegimeReport::classify(p.eta.abs(), s.v_k.norm() / k.c, p.omega_tau, k.hbar * cfg.omega / k.rest_energy())
}
