//! Self-verification suite: every closed form against its independent route.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::dynamics::{damping_time, heading_change, heading_drift_rate, simulate, ForceTerms, TrajectoryConfig};
use crate::emission::{intensity_closed_form, intensity_from_density, one_loop_angular_integral};
use crate::geometry::{polarization_sum, PhotonDirection};
use crate::model::{validate_regime, Constants, ElectronState, Field, FieldConfig, FieldMode, Handedness, Verdict};
use crate::numerics::{bessel_j, jacobi_anger_check, QuadratureRule};
use crate::observables::{
    acceleration_estimate, anomalous_recoil, classical_recoil, lad_time_average, larmor_power, larmor_power_quadrature,
    lifetime, lifetime_quadrature, photon_drag, photon_drag_from_lifetime, Method, LAD_SAMPLES,
};
use crate::{Result, Vec3};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Check { name, residual, tolerance, pass: residual.is_finite() && residual <= tolerance }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<34} residual = {:.3e}  tolerance = {:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tolerance
        )
    }
}

/// Reference drive: 1e10 V/m at 1 µm, clockwise, homogeneous.
pub fn reference_field(mode: FieldMode) -> Field {
    Field::new(FieldConfig::from_si_wavelength(1e10, 1e-6, Handedness::Clockwise, mode).expect("reference config"))
        .expect("reference field")
}

/// Field at ω = 1.9e15 rad/s with the given v0/c.
pub fn field_with_eta(eta: f64) -> Result<Field> {
    let k = Constants::codata2018();
    let omega = 1.9e15;
    Field::new(FieldConfig {
        e0: eta * k.c * k.m_e * omega / k.e,
        omega,
        handedness: Handedness::Clockwise,
        mode: FieldMode::Homogeneous,
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn rel_vec(a: &Vec3, b: &Vec3) -> f64 {
    (a - b).norm() / b.norm()
}

/// Unit directions used by the velocity-dependent checks.
pub fn probe_directions() -> [Vec3; 3] {
    [Vec3::x(), Vec3::z(), Vec3::new(1.0, 1.0, 1.0).normalize()]
}

fn probe_states() -> Vec<ElectronState> {
    let dirs =
        [Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.3, -0.8, 0.52).normalize(), Vec3::new(-0.6, 0.2, -0.77).normalize()];
    let mut out = Vec::new();
    for beta in [1e-4, 1e-3, 1e-2] {
        for d in dirs {
            out.push(ElectronState::from_beta(d * beta).expect("sub-luminal probe"));
        }
    }
    out
}

fn larmor(rule: &QuadratureRule) -> Result<Check> {
    let f = reference_field(FieldMode::Homogeneous);
    Ok(Check::new("larmor_power_quadrature", rel(larmor_power_quadrature(&f, rule)?, larmor_power(&f)), 1e-10))
}

fn lifetime_checks(rule: &QuadratureRule) -> Result<Vec<Check>> {
    let f = reference_field(FieldMode::Homogeneous);
    let tau = lifetime(&f);
    let photon = f.constants.hbar * f.omega();
    Ok(vec![
        Check::new("lifetime_quadrature", rel(lifetime_quadrature(&f, rule)?, tau), 1e-10),
        Check::new("lifetime_times_power", rel(tau * larmor_power(&f), photon), 1e-12),
    ])
}

fn classical_recoil_check(rule: &QuadratureRule) -> Result<Check> {
    let f = reference_field(FieldMode::Homogeneous);
    let mut worst = 0.0f64;
    for s in probe_states() {
        let c = classical_recoil(&s, &f, Method::ClosedForm)?;
        let q = classical_recoil(&s, &f, Method::Quadrature(rule))?;
        worst = worst.max(rel_vec(&q, &c));
    }
    Ok(Check::new("classical_recoil_quadrature", worst, 1e-8))
}

fn anomalous_recoil_checks(rule: &QuadratureRule) -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    let mut perp = 0.0f64;
    for h in [Handedness::Clockwise, Handedness::Counterclockwise] {
        let f = Field::new(reference_field(FieldMode::Homogeneous).config.with_handedness(h))?;
        for s in probe_states() {
            let c = anomalous_recoil(&s, &f, Method::ClosedForm)?;
            let q = anomalous_recoil(&s, &f, Method::Quadrature(rule))?;
            worst = worst.max(rel_vec(&q, &c));
            perp = perp.max(q.dot(&s.v_k).abs() / (q.norm() * s.v_k.norm()));
        }
    }
    Ok(vec![
        Check::new("anomalous_recoil_quadrature", worst, 1e-8),
        Check::new("anomalous_recoil_perpendicular", perp, 1e-9),
    ])
}

fn loop_integral(rule: &QuadratureRule) -> Result<Check> {
    let mut worst = 0.0f64;
    for v in [Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.4, -0.7, 0.3)] {
        let got = one_loop_angular_integral(&v, rule)?;
        let want = Complex64::new(v.x, v.y) * (8.0 * PI / 3.0);
        worst = worst.max((got - want).norm());
    }
    Ok(Check::new("one_loop_angular_integral", worst, 1e-10))
}

fn force_ratio() -> Result<Check> {
    let f = reference_field(FieldMode::Homogeneous);
    let want = f.constants.alpha / 6.0 * f.params.eta.powi(2);
    let mut worst = 0.0f64;
    // in-plane drift only: the ratio is defined for v_k ⊥ L
    for (b, ang) in [(1e-4, 0.0), (1e-3, 1.1), (1e-2, 4.0), (3e-3, 2.5)] {
        let s = ElectronState::from_beta(Vec3::new(f64::cos(ang), f64::sin(ang), 0.0) * b)?;
        let p = anomalous_recoil(&s, &f, Method::ClosedForm)?.norm();
        let c = classical_recoil(&s, &f, Method::ClosedForm)?.norm();
        worst = worst.max(rel(p / c, want));
    }
    Ok(Check::new("force_ratio", worst, 1e-10))
}

fn drag() -> Result<Vec<Check>> {
    let f = reference_field(FieldMode::PlaneWave);
    let d = photon_drag(&f);
    Ok(vec![
        Check::new("photon_drag_momentum_per_lifetime", rel_vec(&photon_drag_from_lifetime(&f), &d), 1e-12),
        Check::new("photon_drag_radiation_pressure", rel(d.norm() * f.constants.c, larmor_power(&f)), 1e-12),
    ])
}

/// Largest |⟨F_LAD⟩ − F∥| / |F∥| divided by 3·max(η², β²) over the probe grid.
pub fn lad_average_worst() -> Result<f64> {
    let mut worst = 0.0f64;
    for eta in [1e-3, 1e-2] {
        let f = field_with_eta(eta)?;
        for beta in [1e-3, 1e-2] {
            for d in probe_directions() {
                let s = ElectronState::from_beta(d * beta)?;
                let avg = lad_time_average(&s, &f, LAD_SAMPLES)?;
                let closed = classical_recoil(&s, &f, Method::ClosedForm)?;
                let bound = 3.0 * eta.max(beta).powi(2);
                worst = worst.max(rel_vec(&avg, &closed) / bound);
            }
        }
    }
    Ok(worst)
}

fn lad() -> Result<Check> {
    Ok(Check::new("lad_period_average", lad_average_worst()?, 1.0))
}

fn estimate() -> Result<Vec<Check>> {
    let f = reference_field(FieldMode::Homogeneous);
    let s = ElectronState::from_si(Vec3::new(3e5, 0.0, 0.0))?;
    let a = acceleration_estimate(&s, &f)?;
    let regime = validate_regime(&f.config, &f.params, &s);
    let regime_residual = if regime.verdict == Verdict::Valid { 10.0 / regime.omega_tau } else { f64::INFINITY };
    Ok(vec![
        Check::new("acceleration_estimate_factor", (a.per_beta_m_s2 / 1e3).log10().abs(), 3f64.log10()),
        Check::new("acceleration_estimate_regime", regime_residual, 1.0),
    ])
}

fn polarization() -> Vec<Check> {
    let mut comp = 0.0f64;
    let mut idem = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let t = PI * (i as f64 + 0.5) / 10.0;
            let p = 2.0 * PI * j as f64 / 10.0;
            let s = polarization_sum(&PhotonDirection::new(t, p).expect("grid angle"));
            let (st, sp, cp) = (t.sin(), p.sin(), p.cos());
            let want = Matrix3::new(
                1.0 - st * st * cp * cp,
                -st * st * sp * cp,
                -(2.0 * t).sin() * cp / 2.0,
                -st * st * sp * cp,
                1.0 - st * st * sp * sp,
                -(2.0 * t).sin() * sp / 2.0,
                -(2.0 * t).sin() * cp / 2.0,
                -(2.0 * t).sin() * sp / 2.0,
                st * st,
            );
            comp = comp.max((s.matrix() - want).abs().max());
            idem = idem.max((s.matrix() * s.matrix() - s.matrix()).abs().max());
        }
    }
    vec![Check::new("polarization_sum_components", comp, 1e-13), Check::new("polarization_sum_idempotent", idem, 1e-13)]
}

fn pattern_routes() -> Result<Check> {
    let mut worst = 0.0f64;
    for h in [Handedness::Clockwise, Handedness::Counterclockwise] {
        let f = Field::new(reference_field(FieldMode::Homogeneous).config.with_handedness(h))?;
        let s = ElectronState::from_si(Vec3::new(3e5, -1e5, 2e5))?;
        let scale = intensity_closed_form(&ElectronState::at_rest(), &PhotonDirection::new(0.0, 0.0)?, &f).total();
        for i in 0..12 {
            for j in 0..12 {
                let d = PhotonDirection::new(PI * i as f64 / 11.0, 2.0 * PI * j as f64 / 12.0)?;
                let a = intensity_closed_form(&s, &d, &f).total();
                let b = intensity_from_density(&s, &d, &f).total();
                worst = worst.max((a - b).abs() / scale);
            }
        }
    }
    Ok(Check::new("pattern_closed_vs_density", worst, 1e-9))
}

fn dynamics_checks() -> Result<Vec<Check>> {
    let f = reference_field(FieldMode::Homogeneous);
    let td = damping_time(&f);
    let v0 = Vec3::new(1e-3 * f.constants.c, 0.0, 0.0);
    let dt = td * 1e-4;
    let stride = 100;

    let mut damp_cfg = TrajectoryConfig { output_stride: stride, ..TrajectoryConfig::new(v0, td, dt) };
    damp_cfg.terms = ForceTerms::DampingOnly;
    let damp = simulate(&damp_cfg, &f)?;
    let decay = rel(damp.last().map(|p| p.speed).unwrap_or(f64::NAN), v0.norm() * (-1.0f64).exp());

    let full = simulate(&TrajectoryConfig { terms: ForceTerms::Full, ..damp_cfg }, &f)?;
    let speed = full.iter().zip(&damp).map(|(a, b)| rel(a.speed, b.speed)).fold(0.0, f64::max);

    let short = TrajectoryConfig::new(v0, 0.1 * td, dt);
    let bend = simulate(&short, &f)?;
    let last = bend.last().expect("non-empty trajectory");
    let heading = rel(heading_change(&v0, &last.v_k), heading_drift_rate(&f) * last.t);

    let vm = Vec3::new(2e7, 1.3e7, 4e6);
    let mirror_cfg = TrajectoryConfig { output_stride: stride, ..TrajectoryConfig::new(vm, 0.2 * td, dt) };
    let a = simulate(&mirror_cfg, &f)?;
    let b = simulate(&TrajectoryConfig { initial_vk: Vec3::new(vm.x, -vm.y, vm.z), ..mirror_cfg }, &f.flipped())?;
    let r_scale = a.iter().map(|p| p.r.norm()).fold(0.0, f64::max);
    let mut mirror = 0.0f64;
    for (p, q) in a.iter().zip(&b) {
        let mr = Vec3::new(q.r.x, -q.r.y, q.r.z);
        let mv = Vec3::new(q.v_k.x, -q.v_k.y, q.v_k.z);
        mirror = mirror.max((p.r - mr).norm() / r_scale).max((p.v_k - mv).norm() / vm.norm());
    }

    Ok(vec![
        Check::new("damping_exponential_decay", decay, 1e-6),
        Check::new("perpendicular_force_no_work", speed, 1e-9),
        Check::new("heading_drift_rate", heading, 1e-4),
        Check::new("handedness_mirror_trajectory", mirror, 1e-10),
    ])
}

fn special_functions() -> Result<Vec<Check>> {
    let mut ja = 0.0f64;
    for xi in [0.1, 0.5, 1.0, 1.5, 2.0] {
        for wt in [0.0, 0.7, 2.5, 4.0] {
            ja = ja.max(jacobi_anger_check(xi, wt, 30)?);
        }
    }
    let mut rec = 0.0f64;
    for x in [0.1, 1.0, 5.0] {
        for m in 1..=10 {
            let lhs = bessel_j(m - 1, x)? + bessel_j(m + 1, x)?;
            let rhs = 2.0 * m as f64 / x * bessel_j(m, x)?;
            rec = rec.max((lhs - rhs).abs());
        }
    }
    Ok(vec![Check::new("jacobi_anger_expansion", ja, 1e-10), Check::new("bessel_recurrence", rec, 1e-10)])
}

/// Runs every check with the sphere rule of the given order.
pub fn run_checks(quad_order: usize) -> Result<Vec<Check>> {
    let rule = QuadratureRule::with_order(quad_order)?;
    let mut out = vec![larmor(&rule)?];
    out.extend(lifetime_checks(&rule)?);
    out.push(classical_recoil_check(&rule)?);
    out.extend(anomalous_recoil_checks(&rule)?);
    out.push(loop_integral(&rule)?);
    out.push(force_ratio()?);
    out.extend(drag()?);
    out.push(lad()?);
    out.extend(estimate()?);
    out.extend(polarization());
    out.push(pattern_routes()?);
    out.extend(dynamics_checks()?);
    out.extend(special_functions()?);
    Ok(out)
}
