use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use super::density::{classical_density, loop_bracket, loop_density, rate_normalization};
use crate::geometry::PhotonDirection;
use crate::model::{ElectronState, Field, FieldConfig};
use crate::{Error, Result};

/// Smallest accepted (n_theta, n_phi).
pub const MIN_PATTERN_GRID: (usize, usize) = (16, 32);

pub const PATTERN_CSV_HEADER: &str = "theta_rad,phi_rad,intensity_erg_per_s_sr,classical_part,loop_part";

/// e²ω²v0²/(8πc³), erg/(s·sr).
pub fn intensity_normalization(field: &Field) -> f64 {
    let k = &field.constants;
    let v0 = field.params.v0;
    k.e * k.e * field.omega().powi(2) * v0 * v0 / (8.0 * PI * k.c.powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityParts {
    pub classical: f64,
    pub loop_part: f64,
}

impl IntensityParts {
    pub fn total(&self) -> f64 {
        self.classical + self.loop_part
    }
}

/// Radiation pattern written out term by term:
/// 1 + cos²θ + β_x(5cos²θ+3) sinθ cosφ + β_y(5cos²θ+3) sinθ sinφ
/// + β_z(5cos²θ+1) cosθ plus the one-loop term.
pub fn intensity_closed_form(state: &ElectronState, dir: &PhotonDirection, field: &Field) -> IntensityParts {
    let b = state.beta();
    let n = dir.n();
    let ct2 = n.z * n.z;
    let bracket = 1.0 + ct2 + (5.0 * ct2 + 3.0) * (b.x * n.x + b.y * n.y) + b.z * (5.0 * ct2 + 1.0) * n.z;
    let norm = intensity_normalization(field);
    IntensityParts { classical: norm * bracket, loop_part: norm * loop_bracket(state, dir, field) }
}

/// Radiation pattern as photon energy ħcq1 times the emission rate, with
/// q1 = (ω/c)(1 + β·n) and the product kept to first order in β.
pub fn intensity_from_density(state: &ElectronState, dir: &PhotonDirection, field: &Field) -> IntensityParts {
    let photon = field.constants.hbar * field.omega();
    let beta_n = state.beta().dot(&dir.n());
    let ct = dir.cos_theta();
    let at_rest = rate_normalization(field) * (1.0 + ct * ct);
    IntensityParts {
        classical: photon * (classical_density(state, dir, field) + beta_n * at_rest),
        loop_part: photon * loop_density(state, dir, field),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternPoint {
    pub theta: f64,
    pub phi: f64,
    pub intensity: f64,
    pub classical_part: f64,
    pub loop_part: f64,
}

/// Intensity on a θ × φ grid, θ-outer. θ runs over [0, π] inclusive and φ
/// over [0, 2π) with uniform spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiationPattern {
    pub config: FieldConfig,
    pub state: ElectronState,
    pub n_theta: usize,
    pub n_phi: usize,
    pub points: Vec<PatternPoint>,
}

impl RadiationPattern {
    pub fn at(&self, i_theta: usize, i_phi: usize) -> &PatternPoint {
        &self.points[i_theta * self.n_phi + i_phi]
    }
}

pub fn radiation_pattern(
    state: &ElectronState,
    field: &Field,
    n_theta: usize,
    n_phi: usize,
) -> Result<RadiationPattern> {
    if n_theta < MIN_PATTERN_GRID.0 || n_phi < MIN_PATTERN_GRID.1 {
        return Err(Error::InvalidArgument(format!(
            "pattern grid {n_theta}x{n_phi} below minimum {}x{}",
            MIN_PATTERN_GRID.0, MIN_PATTERN_GRID.1
        )));
    }
    let rows: Vec<Vec<PatternPoint>> = (0..n_theta)
        .into_par_iter()
        .map(|i| {
            let theta = PI * i as f64 / (n_theta - 1) as f64;
            (0..n_phi)
                .map(|j| {
                    let phi = 2.0 * PI * j as f64 / n_phi as f64;
                    let parts = intensity_closed_form(state, &PhotonDirection::unchecked(theta, phi), field);
                    PatternPoint {
                        theta,
                        phi,
                        intensity: parts.total(),
                        classical_part: parts.classical,
                        loop_part: parts.loop_part,
                    }
                })
                .collect()
        })
        .collect();
    Ok(RadiationPattern {
        config: field.config,
        state: *state,
        n_theta,
        n_phi,
        points: rows.into_iter().flatten().collect(),
    })
}

/// Writes the pattern in its CSV form (17 significant digits).
pub fn write_pattern_csv<W: Write>(pattern: &RadiationPattern, mut out: W) -> Result<()> {
    writeln!(out, "{PATTERN_CSV_HEADER}")?;
    for p in &pattern.points {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            p.theta, p.phi, p.intensity, p.classical_part, p.loop_part
        )?;
    }
    out.flush()?;
    Ok(())
}
