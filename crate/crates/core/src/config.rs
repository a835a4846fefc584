//! Flat `key = value` field configuration files.
//!
//! ```text
//! # drive
//! E0_V_per_m = 1e10
//! wavelength_m = 1e-6
//! polarization = "clockwise"
//! mode = homogeneous
//! ```
//!
//! `E0_V_per_m` and exactly one of `omega_rad_per_s` / `wavelength_m` are
//! required; `polarization` defaults to clockwise and `mode` to homogeneous.

use std::collections::BTreeMap;
use std::path::Path;

use crate::model::{FieldConfig, FieldMode, Handedness};
use crate::{Error, Result};

pub const KEYS: [&str; 5] = ["E0_V_per_m", "omega_rad_per_s", "wavelength_m", "polarization", "mode"];

fn config_err(key: &str, message: impl Into<String>) -> Error {
    Error::Config { key: key.to_string(), message: message.into() }
}

fn unquote(v: &str) -> &str {
    let v = v.trim();
    for q in ['"', '\''] {
        if v.len() >= 2 && v.starts_with(q) && v.ends_with(q) {
            return &v[1..v.len() - 1];
        }
    }
    v
}

fn parse_entries(text: &str) -> Result<BTreeMap<&str, &str>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_err(line, format!("line {}: expected `key = value`", lineno + 1)))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(config_err(k, "unknown key"));
        }
        if out.insert(k, unquote(v)).is_some() {
            return Err(config_err(k, "duplicate key"));
        }
    }
    Ok(out)
}

fn number(entries: &BTreeMap<&str, &str>, key: &str) -> Result<Option<f64>> {
    match entries.get(key) {
        None => Ok(None),
        Some(v) => {
            let x: f64 = v.parse().map_err(|_| config_err(key, format!("`{v}` is not a number")))?;
            if !(x > 0.0) || !x.is_finite() {
                return Err(config_err(key, format!("must be positive and finite, got {v}")));
            }
            Ok(Some(x))
        }
    }
}

/// Parses configuration text into a validated [`FieldConfig`].
pub fn parse_config(text: &str) -> Result<FieldConfig> {
    let entries = parse_entries(text)?;
    let e0 = number(&entries, "E0_V_per_m")?.ok_or_else(|| config_err("E0_V_per_m", "missing required key"))?;
    let omega = number(&entries, "omega_rad_per_s")?;
    let lambda = number(&entries, "wavelength_m")?;
    let handedness = match entries.get("polarization") {
        Some(v) => v.parse::<Handedness>().map_err(|_| config_err("polarization", format!("unknown value `{v}`")))?,
        None => Handedness::Clockwise,
    };
    let mode = match entries.get("mode") {
        Some(v) => v.parse::<FieldMode>().map_err(|_| config_err("mode", format!("unknown value `{v}`")))?,
        None => FieldMode::Homogeneous,
    };
    match (omega, lambda) {
        (Some(w), None) => FieldConfig::from_si(e0, w, handedness, mode),
        (None, Some(l)) => FieldConfig::from_si_wavelength(e0, l, handedness, mode),
        (Some(_), Some(_)) => Err(config_err("wavelength_m", "give only one of omega_rad_per_s and wavelength_m")),
        (None, None) => Err(config_err("omega_rad_per_s", "missing; give omega_rad_per_s or wavelength_m")),
    }
}

pub fn load_config(path: &Path) -> Result<FieldConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

/// Canonical text for a configuration, readable by [`parse_config`].
pub fn render_config(cfg: &FieldConfig) -> String {
    format!(
        "E0_V_per_m = {:e}\nomega_rad_per_s = {:e}\npolarization = {}\nmode = {}\n",
        cfg.e0_si(),
        cfg.omega,
        cfg.handedness,
        cfg.mode
    )
}
