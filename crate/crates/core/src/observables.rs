//! Integral observables: radiated power, lifetime and the recoil forces.
//!
//! Each observable has a closed form and an independent quadrature over the
//! radiation pattern; [`force_report`] evaluates both and records the
//! relative residual.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use crate::emission::{classical_density, intensity_from_density};
use crate::geometry::PhotonDirection;
use crate::model::{units, validate_regime, ElectronState, Field, FieldMode, RegimeReport};
use crate::numerics::{sphere_integrate, QuadratureRule};
use crate::{Error, Result, Vec3};

/// Default number of samples per field period in [`lad_time_average`].
pub const LAD_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy)]
pub enum Method<'a> {
    ClosedForm,
    Quadrature(&'a QuadratureRule),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodTag {
    ClosedForm,
    Quadrature,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodTag::ClosedForm => "ClosedForm",
            MethodTag::Quadrature => "Quadrature",
        })
    }
}

/// Larmor power P0 = (2/3) e⁴E0²/(m_e² c³), erg/s.
pub fn larmor_power(field: &Field) -> f64 {
    (2.0 / 3.0) * field.force_coefficient() * field.constants.c.powi(2)
}

/// Power from the quadrature of the rest-frame radiation pattern.
pub fn larmor_power_quadrature(field: &Field, rule: &QuadratureRule) -> Result<f64> {
    let s = ElectronState::at_rest();
    sphere_integrate(|t, p| intensity_from_density(&s, &PhotonDirection::unchecked(t, p), field).total(), rule)
}

/// Radiative lifetime τ = 3ħω m_e² c³ / (2 e⁴ E0²), s.
pub fn lifetime(field: &Field) -> f64 {
    field.params.tau
}

/// Lifetime as the inverse of the quadrature of the one-vertex rate at rest.
pub fn lifetime_quadrature(field: &Field, rule: &QuadratureRule) -> Result<f64> {
    let s = ElectronState::at_rest();
    let rate: f64 = sphere_integrate(|t, p| classical_density(&s, &PhotonDirection::unchecked(t, p), field), rule)?;
    Ok(1.0 / rate)
}

/// −(1/c) ∫ n I dΩ for the intensity returned by `intensity`.
fn recoil_quadrature<F>(field: &Field, rule: &QuadratureRule, intensity: F) -> Result<Vec3>
where
    F: Fn(&PhotonDirection) -> f64,
{
    let v: Vec3 = sphere_integrate(
        |t, p| {
            let d = PhotonDirection::unchecked(t, p);
            d.n() * intensity(&d)
        },
        rule,
    )?;
    Ok(-v / field.constants.c)
}

/// Classical recoil F∥ = −(2/3)(e⁴E0²/m_e²c⁵) v_k, dyn.
pub fn classical_recoil(state: &ElectronState, field: &Field, method: Method<'_>) -> Result<Vec3> {
    match method {
        Method::ClosedForm => Ok(-(2.0 / 3.0) * field.force_coefficient() * state.v_k),
        Method::Quadrature(rule) => {
            // The rest-frame pattern is subtracted so only the velocity-linear
            // asymmetry is contracted with n.
            let rest = ElectronState::at_rest();
            recoil_quadrature(field, rule, |d| {
                intensity_from_density(state, d, field).classical - intensity_from_density(&rest, d, field).classical
            })
        }
    }
}

/// Anomalous recoil F⊥ = (1/9)(e⁴E0²/m_e²c⁵)(v0/c)² α [L × v_k], dyn.
pub fn anomalous_recoil(state: &ElectronState, field: &Field, method: Method<'_>) -> Result<Vec3> {
    match method {
        Method::ClosedForm => {
            let eta = field.params.eta;
            let coeff = field.force_coefficient() * eta * eta * field.constants.alpha / 9.0;
            Ok(coeff * field.handedness().axis().cross(&state.v_k))
        }
        Method::Quadrature(rule) => {
            recoil_quadrature(field, rule, |d| intensity_from_density(state, d, field).loop_part)
        }
    }
}

/// Lorentz factor for speed `v` (cm/s).
pub fn lorentz_factor(v: f64, c: f64) -> Result<f64> {
    let b2 = (v / c).powi(2);
    if !(b2 < 1.0) {
        return Err(Error::Relativistic { what: "|v(t)|/c", beta: v / c });
    }
    Ok(1.0 / (1.0 - b2).sqrt())
}

/// Period average of the Lorentz–Abraham–Dirac force
/// (2e²/3c³)[γ² v̈ + γ⁴ v (v·v̈)/c² + 3γ⁴ v̇ (v·v̇)/c²]
/// along v(t) = v_k + v0(−cos ωt, −sin ωt, 0), using `samples` uniform
/// points per period.
pub fn lad_time_average(state: &ElectronState, field: &Field, samples: usize) -> Result<Vec3> {
    if samples < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 samples per period, got {samples}")));
    }
    let k = &field.constants;
    let (c, w, v0) = (k.c, field.omega(), field.params.v0);
    let c2 = c * c;
    let mut acc = Vec3::zeros();
    for j in 0..samples {
        let (s, co) = (2.0 * PI * j as f64 / samples as f64).sin_cos();
        let v = state.v_k + Vec3::new(-v0 * co, -v0 * s, 0.0);
        let vd = Vec3::new(v0 * w * s, -v0 * w * co, 0.0);
        let vdd = Vec3::new(v0 * w * w * co, v0 * w * w * s, 0.0);
        let b2 = v.norm_squared() / c2;
        if !(b2 < 1.0) {
            return Err(Error::Relativistic { what: "|v(t)|/c", beta: b2.sqrt() });
        }
        let g2 = 1.0 / (1.0 - b2);
        let g4 = g2 * g2;
        // γ² v̈ = v̈ + (γ² − 1) v̈; the uniform-sample mean of v̈ is exactly 0.
        acc += vdd * (b2 * g2) + v * (g4 * v.dot(&vdd) / c2) + vd * (3.0 * g4 * v.dot(&vd) / c2);
    }
    Ok(acc * (2.0 * k.e * k.e / (3.0 * c2 * c) / samples as f64))
}

/// Photon drag F0 = ħq0/τ along the wave vector; zero for the homogeneous field.
pub fn photon_drag(field: &Field) -> Vec3 {
    match field.config.mode {
        FieldMode::Homogeneous => Vec3::zeros(),
        FieldMode::PlaneWave => Vec3::new(0.0, 0.0, (2.0 / 3.0) * field.force_coefficient() * field.constants.c),
    }
}

/// ħq0/τ, the momentum-per-lifetime route to the drag force.
pub fn photon_drag_from_lifetime(field: &Field) -> Vec3 {
    field.config.wave_vector(&field.constants) * (field.constants.hbar / lifetime(field))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelerationEstimate {
    pub a_perp_cm_s2: f64,
    pub a_perp_m_s2: f64,
    /// a⊥ / (|v_k|/c) in m/s², independent of v_k.
    pub per_beta_m_s2: f64,
}

pub fn acceleration_estimate(state: &ElectronState, field: &Field) -> Result<AccelerationEstimate> {
    let f = anomalous_recoil(state, field, Method::ClosedForm)?;
    let m = field.constants.m_e;
    let a = f.norm() / m;
    let eta = field.params.eta;
    let per_beta = field.force_coefficient() * eta * eta * field.constants.alpha / 9.0 * field.constants.c / m;
    Ok(AccelerationEstimate {
        a_perp_cm_s2: a,
        a_perp_m_s2: units::cm_to_m(a),
        per_beta_m_s2: units::cm_to_m(per_beta),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tagged<T> {
    pub value: T,
    pub method: MethodTag,
}

impl<T> Tagged<T> {
    fn closed(value: T) -> Self {
        Tagged { value, method: MethodTag::ClosedForm }
    }
}

/// Observables for one drift state, closed forms cross-checked by quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceReport {
    pub power: Tagged<f64>,
    pub tau: Tagged<f64>,
    pub f_parallel: Tagged<Vec3>,
    pub f_perp: Tagged<Vec3>,
    pub f_drag: Tagged<Vec3>,
    pub residual_power: f64,
    pub residual_tau: f64,
    pub residual_parallel: f64,
    pub residual_perp: f64,
    pub residual_drag: f64,
    pub mode: FieldMode,
    pub regime: RegimeReport,
}

fn relative(q: f64, c: f64) -> f64 {
    (q - c).abs() / c.abs()
}

/// Relative residual of two vectors; a vanishing closed form is compared
/// against `scale` instead.
fn relative_vec(q: &Vec3, c: &Vec3, scale: f64) -> f64 {
    let d = (q - c).norm();
    if c.norm() > 0.0 {
        d / c.norm()
    } else {
        d / scale
    }
}

pub fn force_report(state: &ElectronState, field: &Field, rule: &QuadratureRule) -> Result<ForceReport> {
    let quad = Method::Quadrature(rule);
    let power = larmor_power(field);
    let tau = lifetime(field);
    let f_par = classical_recoil(state, field, Method::ClosedForm)?;
    let f_perp = anomalous_recoil(state, field, Method::ClosedForm)?;
    let f_drag = photon_drag(field);
    let scale = field.force_coefficient() * field.constants.c;
    let eta = field.params.eta;
    Ok(ForceReport {
        power: Tagged::closed(power),
        tau: Tagged::closed(tau),
        f_parallel: Tagged::closed(f_par),
        f_perp: Tagged::closed(f_perp),
        f_drag: Tagged::closed(f_drag),
        residual_power: relative(larmor_power_quadrature(field, rule)?, power),
        residual_tau: relative(lifetime_quadrature(field, rule)?, tau),
        residual_parallel: relative_vec(&classical_recoil(state, field, quad)?, &f_par, scale),
        residual_perp: relative_vec(
            &anomalous_recoil(state, field, quad)?,
            &f_perp,
            scale * eta * eta * field.constants.alpha,
        ),
        residual_drag: relative_vec(&photon_drag_from_lifetime(field), &f_drag, scale),
        mode: field.config.mode,
        regime: validate_regime(&field.config, &field.params, state),
    })
}

fn fmt_vec(v: &Vec3) -> String {
    // + 0.0 folds negative zeros
    let v = v.map(|x| x + 0.0);
    format!("{:.16e},{:.16e},{:.16e}", v.x, v.y, v.z)
}

/// Key-value serialization of a report in SI units.
pub fn write_force_report<W: Write>(r: &ForceReport, mut out: W) -> Result<()> {
    let newton = |v: &Vec3| v.map(units::dyn_to_newton);
    writeln!(out, "P_W = {:.16e}", units::erg_per_s_to_watt(r.power.value))?;
    writeln!(out, "tau_s = {:.16e}", r.tau.value)?;
    writeln!(out, "F_parallel_N = {}", fmt_vec(&newton(&r.f_parallel.value)))?;
    writeln!(out, "F_perp_N = {}", fmt_vec(&newton(&r.f_perp.value)))?;
    writeln!(out, "F_drag_N = {}", fmt_vec(&newton(&r.f_drag.value)))?;
    writeln!(out, "residual_power = {:.3e}", r.residual_power)?;
    writeln!(out, "residual_tau = {:.3e}", r.residual_tau)?;
    writeln!(out, "residual_parallel = {:.3e}", r.residual_parallel)?;
    writeln!(out, "residual_perp = {:.3e}", r.residual_perp)?;
    writeln!(out, "residual_drag = {:.3e}", r.residual_drag)?;
    writeln!(out, "method_P = {}", r.power.method)?;
    writeln!(out, "method_tau = {}", r.tau.method)?;
    writeln!(out, "method_F_parallel = {}", r.f_parallel.method)?;
    writeln!(out, "method_F_perp = {}", r.f_perp.method)?;
    writeln!(out, "method_F_drag = {}", r.f_drag.method)?;
    writeln!(out, "cross_check_method = {}", MethodTag::Quadrature)?;
    if r.mode == FieldMode::Homogeneous {
        writeln!(out, "drag_note = homogeneous field carries no wave momentum")?;
    }
    writeln!(out, "regime_verdict = {}", r.regime.verdict)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FieldConfig, Handedness};
    use nalgebra::Rotation3;
    use proptest::prelude::*;

    fn field(mode: FieldMode) -> Field {
        Field::new(FieldConfig::from_si_wavelength(1e10, 1e-6, Handedness::Clockwise, mode).unwrap()).unwrap()
    }

    fn sample_states() -> Vec<ElectronState> {
        [Vec3::new(1e-3, 0.0, 0.0), Vec3::new(-3e-4, 2e-3, 7e-4), Vec3::new(0.0, 0.0, 1e-2)]
            .into_iter()
            .map(|b| ElectronState::from_beta(b).unwrap())
            .collect()
    }

    #[test]
    fn larmor_power_scaling_and_kinematics() {
        let f = field(FieldMode::Homogeneous);
        let g = Field::new(f.config.with_e0(2.0 * f.config.e0)).unwrap();
        assert!((larmor_power(&g) / larmor_power(&f) - 4.0).abs() < 1e-12);
        // (2e²/3c³) v̇² with |v̇| = v0 ω
        let k = f.constants;
        let vdot = f.params.v0 * f.omega();
        let kinematic = 2.0 * k.e * k.e / (3.0 * k.c.powi(3)) * vdot * vdot;
        assert!((kinematic / larmor_power(&f) - 1.0).abs() < 1e-12);
        let q = larmor_power_quadrature(&f, &QuadratureRule::default()).unwrap();
        assert!((q / larmor_power(&f) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lifetime_identities() {
        let f = field(FieldMode::Homogeneous);
        let tau = lifetime(&f);
        let photon = f.constants.hbar * f.omega();
        assert!((tau * larmor_power(&f) / photon - 1.0).abs() < 1e-12);
        let q = lifetime_quadrature(&f, &QuadratureRule::default()).unwrap();
        assert!((q / tau - 1.0).abs() < 1e-10);
        let g = Field::new(f.config.with_e0(2.0 * f.config.e0)).unwrap();
        assert!((lifetime(&f) / lifetime(&g) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn classical_recoil_routes_agree() {
        let f = field(FieldMode::Homogeneous);
        let rule = QuadratureRule::default();
        let zero = classical_recoil(&ElectronState::at_rest(), &f, Method::ClosedForm).unwrap();
        assert_eq!(zero, Vec3::zeros());
        let zq = classical_recoil(&ElectronState::at_rest(), &f, Method::Quadrature(&rule)).unwrap();
        assert_eq!(zq, Vec3::zeros());
        for s in sample_states() {
            let c = classical_recoil(&s, &f, Method::ClosedForm).unwrap();
            let q = classical_recoil(&s, &f, Method::Quadrature(&rule)).unwrap();
            assert!((q - c).norm() < 1e-8 * c.norm());
            assert!(c.dot(&s.v_k) < 0.0);
            // damping rate m_e|v| / |F| = t_damp
            let t_damp = 3.0 * f.constants.m_e.powi(3) * f.constants.c.powi(5)
                / (2.0 * f.constants.e.powi(4) * f.config.e0.powi(2));
            assert!((f.constants.m_e * s.v_k.norm() / c.norm() / t_damp - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn anomalous_recoil_direction_and_routes() {
        let f = field(FieldMode::Homogeneous);
        let rule = QuadratureRule::default();
        let v = 1e-3 * f.constants.c;
        let s = ElectronState::new(Vec3::new(v, 0.0, 0.0)).unwrap();
        let fp = anomalous_recoil(&s, &f, Method::ClosedForm).unwrap();
        let eta = f.params.eta;
        let want = f.force_coefficient() * eta * eta * f.constants.alpha * v / 9.0;
        assert_eq!(fp.x, 0.0);
        assert!((fp.y / want - 1.0).abs() < 1e-14);
        assert_eq!(fp.z, 0.0);
        for s in sample_states() {
            let c = anomalous_recoil(&s, &f, Method::ClosedForm).unwrap();
            let q = anomalous_recoil(&s, &f, Method::Quadrature(&rule)).unwrap();
            if c.norm() == 0.0 {
                assert!(q.norm() < 1e-30);
                continue;
            }
            assert!((q - c).norm() < 1e-8 * c.norm());
            let par = classical_recoil(&s, &f, Method::ClosedForm).unwrap();
            let ratio = c.norm() / par.norm();
            let perp_xy = (s.v_k.x.powi(2) + s.v_k.y.powi(2)).sqrt() / s.v_k.norm();
            assert!((ratio / (f.constants.alpha / 6.0 * eta * eta * perp_xy) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lad_average_reproduces_closed_form() {
        let k = crate::Constants::codata2018();
        let omega = 1.9e15;
        let e0 = 1e-3 * k.c * k.m_e * omega / k.e;
        let f = Field::new(FieldConfig { e0, omega, handedness: Handedness::Clockwise, mode: FieldMode::Homogeneous })
            .unwrap();
        let s = ElectronState::from_beta(Vec3::new(1e-3, 0.0, 0.0)).unwrap();
        let avg = lad_time_average(&s, &f, LAD_SAMPLES).unwrap();
        let closed = classical_recoil(&s, &f, Method::ClosedForm).unwrap();
        assert!((avg - closed).norm() < 1e-4 * closed.norm());

        let rest = lad_time_average(&ElectronState::at_rest(), &f, LAD_SAMPLES).unwrap();
        let scale = (2.0 / 3.0) * f.force_coefficient() * f.params.v0;
        assert!(rest.norm() < f.params.eta.powi(2) * scale);
        assert_eq!(lorentz_factor(0.0, k.c).unwrap(), 1.0);
        assert!(lorentz_factor(k.c, k.c).is_err());
    }

    #[test]
    fn lad_average_deviation_is_second_order() {
        // the deviation from the closed form is the discarded relativistic
        // correction: it scales as (v/c)²
        let k = crate::Constants::codata2018();
        let omega = 1.9e15;
        let dev = |eta: f64, beta: f64| {
            let e0 = eta * k.c * k.m_e * omega / k.e;
            let f =
                Field::new(FieldConfig { e0, omega, handedness: Handedness::Clockwise, mode: FieldMode::Homogeneous })
                    .unwrap();
            let s = ElectronState::from_beta(Vec3::new(beta, 0.0, 0.0)).unwrap();
            let avg = lad_time_average(&s, &f, LAD_SAMPLES).unwrap();
            let closed = classical_recoil(&s, &f, Method::ClosedForm).unwrap();
            (avg - closed).norm() / closed.norm()
        };
        let slope = (dev(1e-2, 1e-2) / dev(1e-3, 1e-3)).log10();
        assert!((slope - 2.0).abs() < 0.01, "slope {slope}");
        // in-plane coefficient is 4 (η² + β²)
        assert!((dev(1e-3, 1e-3) / 8e-6 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn lad_average_rejects_superluminal_samples() {
        let k = crate::Constants::codata2018();
        let omega = 1.9e15;
        let e0 = 0.9 * k.c * k.m_e * omega / k.e;
        let f = Field::new(FieldConfig { e0, omega, handedness: Handedness::Clockwise, mode: FieldMode::Homogeneous })
            .unwrap();
        let s = ElectronState::from_beta(Vec3::new(0.2, 0.0, 0.0)).unwrap();
        assert!(matches!(lad_time_average(&s, &f, 100), Err(Error::Relativistic { .. })));
    }

    #[test]
    fn photon_drag_identities() {
        let f = field(FieldMode::PlaneWave);
        let d = photon_drag(&f);
        assert_eq!((d.x, d.y), (0.0, 0.0));
        assert!((d.z * f.constants.c / larmor_power(&f) - 1.0).abs() < 1e-12);
        assert!((photon_drag_from_lifetime(&f) - d).norm() < 1e-12 * d.norm());
        assert_eq!(photon_drag(&field(FieldMode::Homogeneous)), Vec3::zeros());
    }

    #[test]
    fn acceleration_for_table_top_laser() {
        let f = field(FieldMode::Homogeneous);
        let s = ElectronState::from_si(Vec3::new(3e5, 0.0, 0.0)).unwrap();
        let a = acceleration_estimate(&s, &f).unwrap();
        assert!(a.per_beta_m_s2 > 1e3 / 3.0 && a.per_beta_m_s2 < 3e3, "{}", a.per_beta_m_s2);
        let beta = s.v_k.norm() / f.constants.c;
        assert!((a.a_perp_m_s2 / (a.per_beta_m_s2 * beta) - 1.0).abs() < 1e-12);
        let zero = acceleration_estimate(&ElectronState::at_rest(), &f).unwrap();
        assert_eq!(zero.a_perp_m_s2, 0.0);
        // E0⁴ at fixed ω
        let g = Field::new(f.config.with_e0(2.0 * f.config.e0)).unwrap();
        let ag = acceleration_estimate(&s, &g).unwrap();
        assert!((ag.a_perp_m_s2 / a.a_perp_m_s2 - 16.0).abs() < 1e-11);
    }

    #[test]
    fn report_serialization() {
        let f = field(FieldMode::Homogeneous);
        let s = ElectronState::from_si(Vec3::new(3e5, 0.0, 0.0)).unwrap();
        let r = force_report(&s, &f, &QuadratureRule::default()).unwrap();
        assert!(r.residual_parallel < 1e-8 && r.residual_perp < 1e-8);
        assert!(r.residual_power < 1e-10 && r.residual_tau < 1e-10);
        let mut buf = Vec::new();
        write_force_report(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for key in [
            "P_W",
            "tau_s",
            "F_parallel_N",
            "F_perp_N",
            "F_drag_N",
            "residual_parallel",
            "residual_perp",
            "regime_verdict",
        ] {
            assert!(text.lines().any(|l| l.starts_with(&format!("{key} = "))), "missing {key}");
        }
        assert!(text.contains("F_drag_N = 0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0"));
        assert!(text.contains("regime_verdict = Valid"));
    }

    proptest! {
        #[test]
        fn rotation_about_field_axis(chi in 0.0f64..(2.0 * PI), bx in -1e-2f64..1e-2, by in -1e-2f64..1e-2, bz in -1e-2f64..1e-2) {
            let f = field(FieldMode::Homogeneous);
            let rot = Rotation3::from_axis_angle(&Vec3::z_axis(), chi);
            let s = ElectronState::from_beta(Vec3::new(bx, by, bz)).unwrap();
            let r = ElectronState::new(rot * s.v_k).unwrap();
            for which in 0..2 {
                let force = |st: &ElectronState| if which == 0 {
                    classical_recoil(st, &f, Method::ClosedForm).unwrap()
                } else {
                    anomalous_recoil(st, &f, Method::ClosedForm).unwrap()
                };
                let a = rot * force(&s);
                let b = force(&r);
                prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-300));
            }
        }

        #[test]
        fn handedness_sign_law(bx in -1e-2f64..1e-2, by in -1e-2f64..1e-2, bz in -1e-2f64..1e-2) {
            let f = field(FieldMode::Homogeneous);
            let g = f.flipped();
            let s = ElectronState::from_beta(Vec3::new(bx, by, bz)).unwrap();
            let cf = Method::ClosedForm;
            prop_assert_eq!(anomalous_recoil(&s, &f, cf).unwrap(), -anomalous_recoil(&s, &g, cf).unwrap());
            prop_assert_eq!(classical_recoil(&s, &f, cf).unwrap(), classical_recoil(&s, &g, cf).unwrap());
            prop_assert_eq!(larmor_power(&f), larmor_power(&g));
            prop_assert_eq!(lifetime(&f), lifetime(&g));
            let fp = anomalous_recoil(&s, &f, cf).unwrap();
            prop_assert!(fp.dot(&s.v_k).abs() <= 1e-12 * fp.norm() * s.v_k.norm());
        }
    }
}
