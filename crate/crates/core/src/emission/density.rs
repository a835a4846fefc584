use std::f64::consts::PI;

use crate::geometry::PhotonDirection;
use crate::model::{ElectronState, Field};

/// One-vertex rate density at rest per unit bracket, e²v0²ω/(8πħc³), in
/// 1/(s·sr). The rest-frame bracket 1 + cos²θ integrates to 16π/3.
pub fn rate_normalization(field: &Field) -> f64 {
    let k = &field.constants;
    let v0 = field.params.v0;
    k.e * k.e * v0 * v0 * field.omega() / (8.0 * PI * k.hbar * k.c.powi(3))
}

/// Angular factor of the one-vertex probability:
/// 1 + cos²θ + 2 cos²θ (β_x sinθ cosφ + β_y sinθ sinφ) − 2 β_z cosθ sin²θ.
pub fn classical_bracket(state: &ElectronState, dir: &PhotonDirection) -> f64 {
    let b = state.beta();
    let n = dir.n();
    let ct = n.z;
    let ct2 = ct * ct;
    let st2 = 1.0 - ct2;
    1.0 + ct2 + 2.0 * ct2 * (b.x * n.x + b.y * n.y) - 2.0 * b.z * ct * st2
}

/// Angular factor of the one-loop correction,
/// L · (2/3)(v0/c)² α (β_y sinθ cosφ − β_x sinθ sinφ).
pub fn loop_bracket(state: &ElectronState, dir: &PhotonDirection, field: &Field) -> f64 {
    let b = state.beta();
    let n = dir.n();
    let eta = field.params.eta;
    field.handedness().sign() * (2.0 / 3.0) * eta * eta * field.constants.alpha * (b.y * n.x - b.x * n.y)
}

/// One-vertex emission rate per solid angle, 1/(s·sr).
///
/// Includes the q1² phase-space factor with q1 = (ω/c)(1 + β·n), linearized.
pub fn classical_density(state: &ElectronState, dir: &PhotonDirection, field: &Field) -> f64 {
    let beta_n = state.beta().dot(&dir.n());
    let ct = dir.cos_theta();
    rate_normalization(field) * (classical_bracket(state, dir) + 2.0 * beta_n * (1.0 + ct * ct))
}

/// One-loop correction to the emission rate per solid angle, 1/(s·sr).
/// Already first order in v_k/c, so no Doppler factor is attached.
pub fn loop_density(state: &ElectronState, dir: &PhotonDirection, field: &Field) -> f64 {
    rate_normalization(field) * loop_bracket(state, dir, field)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularDensity {
    pub direction: PhotonDirection,
    pub rate_density: f64,
    pub classical_part: f64,
    pub loop_part: f64,
}

pub fn angular_density(state: &ElectronState, dir: &PhotonDirection, field: &Field) -> AngularDensity {
    let classical_part = classical_density(state, dir, field);
    let loop_part = loop_density(state, dir, field);
    AngularDensity { direction: *dir, rate_density: classical_part + loop_part, classical_part, loop_part }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FieldConfig, FieldMode, Handedness};
    use crate::numerics::{sphere_integrate, QuadratureRule};
    use crate::Vec3;
    use proptest::prelude::*;

    fn field_with(e0_si: f64, h: Handedness) -> Field {
        Field::new(FieldConfig::from_si_wavelength(e0_si, 1e-6, h, FieldMode::Homogeneous).unwrap()).unwrap()
    }

    fn field() -> Field {
        field_with(1e10, Handedness::Clockwise)
    }

    fn dir(t: f64, p: f64) -> PhotonDirection {
        PhotonDirection::new(t, p).unwrap()
    }

    #[test]
    fn rest_frame_rate_integrates_to_inverse_lifetime() {
        let f = field();
        let s = ElectronState::at_rest();
        let rule = QuadratureRule::default();
        let total: f64 =
            sphere_integrate(|t, p| classical_density(&s, &PhotonDirection::unchecked(t, p), &f), &rule).unwrap();
        let k = f.constants;
        let inv_tau =
            2.0 * k.e.powi(4) * f.config.e0.powi(2) / (3.0 * k.hbar * f.omega() * k.m_e.powi(2) * k.c.powi(3));
        assert!((total * f.params.tau - 1.0).abs() < 1e-10);
        assert!((total / inv_tau - 1.0).abs() < 1e-10);
    }

    #[test]
    fn polar_to_equatorial_ratio() {
        let f = field();
        let s = ElectronState::at_rest();
        let r = classical_density(&s, &dir(0.0, 0.0), &f) / classical_density(&s, &dir(PI / 2.0, 0.0), &f);
        assert!((r - 2.0).abs() < 1e-14);
    }

    #[test]
    fn velocity_asymmetry_of_bracket() {
        let beta = 1e-3;
        let s = ElectronState::from_beta(Vec3::new(beta, 0.0, 0.0)).unwrap();
        let rest = ElectronState::at_rest();
        for t in [0.3, 0.9, 1.4, 2.2] {
            let d = dir(t, 0.0);
            let diff = classical_bracket(&s, &d) - classical_bracket(&rest, &d);
            let want = 2.0 * beta * t.cos().powi(2) * t.sin();
            assert!((diff - want).abs() < 1e-16, "{diff} vs {want}");
        }
    }

    #[test]
    fn loop_vanishes_at_rest() {
        let f = field();
        let s = ElectronState::at_rest();
        for (t, p) in [(0.1, 0.2), (1.5, 3.0), (2.9, 5.5)] {
            assert_eq!(loop_density(&s, &dir(t, p), &f), 0.0);
        }
    }

    #[test]
    fn loop_maximum_for_x_drift() {
        let f = field();
        let s = ElectronState::from_beta(Vec3::new(1e-3, 0.0, 0.0)).unwrap();
        let peak = loop_density(&s, &dir(PI / 2.0, 3.0 * PI / 2.0), &f);
        assert!(peak > 0.0);
        for i in 0..36 {
            for j in 0..72 {
                let d = dir(PI * i as f64 / 35.0, 2.0 * PI * j as f64 / 72.0);
                let v = loop_density(&s, &d, &f);
                assert!(v <= peak * (1.0 + 1e-12));
                let shape = -d.sin_theta() * d.phi.sin();
                assert!((v - peak * shape).abs() <= 1e-12 * peak);
            }
        }
    }

    #[test]
    fn handedness_flips_loop() {
        let f = field();
        let g = f.flipped();
        let s = ElectronState::from_beta(Vec3::new(2e-4, -7e-4, 3e-4)).unwrap();
        for (t, p) in [(0.4, 0.2), (1.5, 2.0), (2.6, 4.1)] {
            let d = dir(t, p);
            assert_eq!(loop_density(&s, &d, &f), -loop_density(&s, &d, &g));
            assert_eq!(classical_density(&s, &d, &f), classical_density(&s, &d, &g));
        }
    }

    #[test]
    fn loop_to_classical_ratio_scales_as_eta_squared() {
        let s = ElectronState::from_beta(Vec3::new(1e-3, 5e-4, 0.0)).unwrap();
        let d = dir(1.2, 4.0);
        // eta ∝ E0 at fixed ω; E0 spanning 1e-4..1e-2 in eta
        let f_ref = field();
        let e0_for = |eta: f64| 1e10 * eta / f_ref.params.eta;
        let etas = [1e-4, 1e-3, 1e-2];
        let ratios: Vec<f64> = etas
            .iter()
            .map(|&eta| {
                let f = field_with(e0_for(eta), Handedness::Clockwise);
                let a = angular_density(&s, &d, &f);
                (a.loop_part / a.classical_part).abs()
            })
            .collect();
        for w in 0..2 {
            let slope = (ratios[w + 1] / ratios[w]).ln() / (etas[w + 1] / etas[w]).ln();
            assert!((slope - 2.0).abs() < 1e-9, "slope {slope}");
        }
    }

    proptest! {
        #[test]
        fn parity(
            bx in -1e-2f64..1e-2, by in -1e-2f64..1e-2, bz in -1e-2f64..1e-2,
            t in 0.0f64..PI, p in 0.0f64..(2.0 * PI),
        ) {
            let f = field();
            let s = ElectronState::from_beta(Vec3::new(bx, by, bz)).unwrap();
            let m = ElectronState::from_beta(-Vec3::new(bx, by, bz)).unwrap();
            let d = dir(t, p);
            let a = classical_density(&s, &d, &f);
            let b = classical_density(&m, &d.antipodal(), &f);
            prop_assert!((a - b).abs() <= 1e-12 * a.abs());
            prop_assert!(a > 0.0);
            prop_assert_eq!(loop_density(&s, &d, &f), -loop_density(&m, &d, &f));
        }
    }
}
