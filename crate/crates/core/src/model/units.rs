//! Conversions between the SI values used at the interfaces and the Gaussian
//! values used internally.

use crate::{Error, Result};

/// One statvolt/cm expressed in V/m.
pub const V_PER_M_PER_STATVOLT_PER_CM: f64 = 2.997_924_58e4;
pub const CM_PER_M: f64 = 100.0;
pub const DYN_PER_N: f64 = 1e5;
pub const ERG_PER_J: f64 = 1e7;

/// Electric field amplitude V/m → statvolt/cm.
pub fn si_to_gaussian(e0_si: f64) -> Result<f64> {
    if !(e0_si > 0.0) || !e0_si.is_finite() {
        return Err(Error::Domain { what: "E0_V_per_m", value: e0_si });
    }
    Ok(e0_si / V_PER_M_PER_STATVOLT_PER_CM)
}

/// Electric field amplitude statvolt/cm → V/m.
pub fn gaussian_to_si(e0: f64) -> f64 {
    e0 * V_PER_M_PER_STATVOLT_PER_CM
}

pub fn cm_to_m(x: f64) -> f64 {
    x / CM_PER_M
}

pub fn m_to_cm(x: f64) -> f64 {
    x * CM_PER_M
}

pub fn dyn_to_newton(f: f64) -> f64 {
    f / DYN_PER_N
}

pub fn erg_per_s_to_watt(p: f64) -> f64 {
    p / ERG_PER_J
}
