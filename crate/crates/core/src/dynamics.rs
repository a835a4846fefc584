//! Guiding-center drift under the period-averaged recoil forces.

use std::io::Write;

use crate::model::{validate_regime, ElectronState, Field, FieldMode, Verdict};
use crate::numerics::{rk4_integrate_with, OdeState};
use crate::observables::photon_drag;
use crate::{Error, Result, Vec3};

pub const TRAJECTORY_CSV_HEADER: &str = "t_s,x_m,y_m,z_m,vx_m_s,vy_m_s,vz_m_s,speed_m_s";

/// Largest admissible step as a fraction of the damping time.
pub const MAX_DT_FRACTION: f64 = 1e-2;

/// Default step as a fraction of the damping time.
pub const DEFAULT_DT_FRACTION: f64 = 1e-4;

/// Damping time t_damp = 3 m_e³ c⁵ / (2 e⁴ E0²), s.
pub fn damping_time(field: &Field) -> f64 {
    1.0 / damping_rate(field)
}

/// 1/t_damp = (2/3) e⁴E0² / (m_e³ c⁵), 1/s.
pub fn damping_rate(field: &Field) -> f64 {
    (2.0 / 3.0) * field.force_coefficient() / field.constants.m_e
}

/// Rotation rate of v_k about ẑ, signed by the handedness, rad/s.
pub fn heading_drift_rate(field: &Field) -> f64 {
    let eta = field.params.eta;
    field.force_coefficient() / field.constants.m_e * eta * eta * field.constants.alpha / 9.0
        * field.handedness().sign()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForceTerms {
    #[default]
    Full,
    /// Anomalous term switched off.
    DampingOnly,
}

/// Drift acceleration dv_k/dt, cm/s².
pub fn newton_rhs(v_k: &Vec3, field: &Field, terms: ForceTerms, include_drag: bool) -> Vec3 {
    let mut a = -damping_rate(field) * v_k;
    if terms == ForceTerms::Full {
        a += heading_drift_rate(field) * Vec3::z().cross(v_k);
    }
    if include_drag {
        a += photon_drag(field) / field.constants.m_e;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryConfig {
    /// cm/s
    pub initial_vk: Vec3,
    pub t_end: f64,
    pub dt: f64,
    pub include_drag: bool,
    pub output_stride: usize,
    pub terms: ForceTerms,
}

impl TrajectoryConfig {
    pub fn new(initial_vk: Vec3, t_end: f64, dt: f64) -> Self {
        TrajectoryConfig { initial_vk, t_end, dt, include_drag: false, output_stride: 1, terms: ForceTerms::Full }
    }

    pub fn validate(&self, field: &Field) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Domain { what: "dt", value: self.dt });
        }
        if !(self.t_end >= self.dt) || !self.t_end.is_finite() {
            return Err(Error::Domain { what: "t_end", value: self.t_end });
        }
        let limit = MAX_DT_FRACTION * damping_time(field);
        if self.dt > limit {
            return Err(Error::InvalidArgument(format!("dt = {:e} s exceeds t_damp/100 = {:e} s", self.dt, limit)));
        }
        if self.output_stride == 0 {
            return Err(Error::InvalidArgument("output stride must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    /// cm
    pub r: Vec3,
    /// cm/s
    pub v_k: Vec3,
    pub speed: f64,
    /// F⊥·v_k, erg/s
    pub work_rate_perp: f64,
}

/// RK4 integration of (ṙ, v̇_k) = (v_k, newton_rhs) from r = 0.
pub fn simulate(cfg: &TrajectoryConfig, field: &Field) -> Result<Vec<TrajectoryPoint>> {
    cfg.validate(field)?;
    let s0 = ElectronState::new(cfg.initial_vk)?;
    let regime = validate_regime(&field.config, &field.params, &s0);
    if regime.verdict == Verdict::Invalid {
        return Err(Error::InvalidArgument("initial state is outside the valid regime".into()));
    }
    let drag = cfg.include_drag && field.config.mode == FieldMode::PlaneWave;
    let omega_bend = heading_drift_rate(field);
    let m = field.constants.m_e;
    let perp_on = cfg.terms == ForceTerms::Full;

    let rhs = |_t: f64, y: &[f64]| {
        let v = Vec3::new(y[3], y[4], y[5]);
        let a = newton_rhs(&v, field, cfg.terms, drag);
        vec![y[3], y[4], y[5], a.x, a.y, a.z]
    };
    let point = |s: &OdeState| {
        let v = Vec3::new(s.y[3], s.y[4], s.y[5]);
        let f_perp = if perp_on { m * omega_bend * Vec3::z().cross(&v) } else { Vec3::zeros() };
        TrajectoryPoint {
            t: s.t,
            r: Vec3::new(s.y[0], s.y[1], s.y[2]),
            v_k: v,
            speed: v.norm(),
            work_rate_perp: f_perp.dot(&v),
        }
    };

    let steps_hint = (cfg.t_end / cfg.dt).ceil() as usize / cfg.output_stride + 2;
    let mut out = Vec::with_capacity(steps_hint.min(1 << 22));
    let v = cfg.initial_vk;
    let y0 = OdeState::new(0.0, vec![0.0, 0.0, 0.0, v.x, v.y, v.z]);
    let end = rk4_integrate_with(rhs, y0, cfg.t_end, cfg.dt, |step, s| {
        if step % cfg.output_stride == 0 {
            out.push(point(s));
        }
    })?;
    if out.last().map(|p| p.t) != Some(end.t) {
        out.push(point(&end));
    }
    Ok(out)
}

/// Heading angle of v_k relative to `reference`, about ẑ.
pub fn heading_change(reference: &Vec3, v: &Vec3) -> f64 {
    let cross = reference.x * v.y - reference.y * v.x;
    let dot = reference.x * v.x + reference.y * v.y;
    cross.atan2(dot)
}

/// Writes the trajectory as SI CSV with 17 significant digits.
pub fn write_trajectory_csv<W: Write>(points: &[TrajectoryPoint], mut out: W) -> Result<()> {
    writeln!(out, "{TRAJECTORY_CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            p.t,
            p.r.x * 1e-2,
            p.r.y * 1e-2,
            p.r.z * 1e-2,
            p.v_k.x * 1e-2,
            p.v_k.y * 1e-2,
            p.v_k.z * 1e-2,
            p.speed * 1e-2
        )?;
    }
    Ok(())
}
