//! Amplitude-level description of the emission: harmonic matrix elements and
//! the on-shell one-loop correction, contracted through polarization sums.
//!
//! These routes are independent of the closed-form brackets in `density` and
//! are used to cross-check them.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::geometry::{polarization_sum, PhotonDirection, PolarizationSumTensor};
use crate::model::{ElectronState, Field, Handedness};
use crate::numerics::{bessel_j, sphere_integrate, QuadratureRule};
use crate::{Error, Result, Vec3};

pub const MAX_HARMONIC: i32 = 8;

type CVec3 = Vector3<Complex64>;

/// Bracket of the harmonic-`m` matrix element written as a linear form
/// `Σ_i coefficients_i · e_i` in the photon polarization (Cartesian basis,
/// cm/s). The prefactor `e √(2πħ/cq𝒱)` is not included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionData {
    pub m: i32,
    pub xi: f64,
    pub coefficients: CVec3,
}

fn mirror(v: &Vec3) -> Vec3 {
    Vec3::new(v.x, -v.y, v.z)
}

fn mirror_c(v: &CVec3) -> CVec3 {
    CVec3::new(v.x, -v.y, v.z)
}

/// Matrix-element bracket for emission of a photon with wave number `q`
/// (1/cm) along `dir` at harmonic `m`.
///
/// The counterclockwise field is handled as the mirror image (y → −y) of the
/// clockwise one.
pub fn matrix_element_bracket(
    m: i32,
    state: &ElectronState,
    q: f64,
    dir: &PhotonDirection,
    field: &Field,
) -> Result<ContractionData> {
    if m.abs() > MAX_HARMONIC {
        return Err(Error::UnsupportedOrder { order: m, max: MAX_HARMONIC });
    }
    match field.handedness() {
        Handedness::Clockwise => clockwise_bracket(m, &state.v_k, q, dir, field),
        Handedness::Counterclockwise => {
            let mut d = clockwise_bracket(m, &mirror(&state.v_k), q, &dir.mirrored(), field)?;
            d.coefficients = mirror_c(&d.coefficients);
            Ok(d)
        }
    }
}

fn clockwise_bracket(m: i32, v_k: &Vec3, q: f64, dir: &PhotonDirection, field: &Field) -> Result<ContractionData> {
    let v0 = field.params.v0;
    // emission: ξ⁻ = −(v0/ω) q sinθ
    let xi = -(v0 / field.omega()) * q * dir.sin_theta();
    let phase = |k: i32| Complex64::from_polar(1.0, k as f64 * dir.phi);
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    let drift = v_k.map(|x| Complex64::new(x, 0.0)) * (bessel_j(m, xi)? * phase(m));
    let minus = CVec3::new(one, -i, zero) * (-0.5 * v0 * bessel_j(m + 1, xi)? * phase(m + 1));
    let plus = CVec3::new(one, i, zero) * (-0.5 * v0 * bessel_j(m - 1, xi)? * phase(m - 1));
    Ok(ContractionData { m, xi, coefficients: drift + minus + plus })
}

/// Σ_pol |a·e|² = Re Σ_ij a_i S_ij a_j*.
pub fn contract(coefficients: &CVec3, s: &PolarizationSumTensor) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        for j in 0..3 {
            acc += coefficients[i] * s.get(i, j) * coefficients[j].conj();
        }
    }
    acc.re
}

/// Emission amplitude with the common factor `−e v0 √(πħ/2cq𝒱)` removed,
/// as a linear form in the photon polarization. Dimensionless; at rest and
/// for ξ → 0 it is `e_x + i e_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBracket(pub CVec3);

impl std::ops::Add for ReducedBracket {
    type Output = ReducedBracket;
    fn add(self, rhs: Self) -> Self {
        ReducedBracket(self.0 + rhs.0)
    }
}

/// Reduced one-vertex amplitude from the m = 1 matrix element at the
/// first-order photon wave number.
pub fn one_vertex_reduced(state: &ElectronState, dir: &PhotonDirection, field: &Field) -> Result<ReducedBracket> {
    let q1 = field.q1() * (1.0 + state.beta().dot(&dir.n()));
    let d = matrix_element_bracket(1, state, q1, dir, field)?;
    Ok(ReducedBracket(d.coefficients * Complex64::new(-2.0 / field.params.v0, 0.0)))
}

/// ∫ dΩ' Σ_pol [v_x |e'_x|² + i v_y |e'_y|²] over virtual-photon directions,
/// evaluated by quadrature of the polarization-summed integrand.
pub fn one_loop_angular_integral(v_k: &Vec3, rule: &QuadratureRule) -> Result<Complex64> {
    sphere_integrate(
        |t, p| {
            let s = polarization_sum(&PhotonDirection::unchecked(t, p));
            Complex64::new(v_k.x * s.get(0, 0), v_k.y * s.get(1, 1))
        },
        rule,
    )
}

/// On-shell one-loop correction to the reduced amplitude,
/// `(v0/c)² α · I/(8πc) · (e_y n_x − e_x n_y)` with `I` the angular integral.
pub fn loop_reduced(
    state: &ElectronState,
    dir: &PhotonDirection,
    field: &Field,
    rule: &QuadratureRule,
) -> Result<ReducedBracket> {
    let (v, d) = match field.handedness() {
        Handedness::Clockwise => (state.v_k, *dir),
        Handedness::Counterclockwise => (mirror(&state.v_k), dir.mirrored()),
    };
    let k = &field.constants;
    let eta = field.params.eta;
    let integral = one_loop_angular_integral(&v, rule)?;
    let scale = integral * (eta * eta * k.alpha / (8.0 * PI * k.c));
    let n = d.n();
    let zero = Complex64::new(0.0, 0.0);
    let coeffs = CVec3::new(Complex64::new(-n.y, 0.0), Complex64::new(n.x, 0.0), zero) * scale;
    Ok(ReducedBracket(match field.handedness() {
        Handedness::Clockwise => coeffs,
        Handedness::Counterclockwise => mirror_c(&coeffs),
    }))
}

pub fn total_reduced(
    state: &ElectronState,
    dir: &PhotonDirection,
    field: &Field,
    rule: &QuadratureRule,
) -> Result<ReducedBracket> {
    Ok(one_vertex_reduced(state, dir, field)? + loop_reduced(state, dir, field, rule)?)
}

/// Polarization-summed squared modulus of a reduced amplitude.
pub fn polarization_summed(r: &ReducedBracket, dir: &PhotonDirection) -> f64 {
    contract(&r.0, &polarization_sum(dir))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emission::{classical_bracket, loop_bracket};
    use crate::model::{FieldConfig, FieldMode};

    fn field_with_eta(eta: f64, h: Handedness) -> Field {
        let k = crate::Constants::codata2018();
        let omega = 1.883_651_567_308_853e15;
        let e0 = eta * k.c * k.m_e * omega / k.e;
        Field::new(FieldConfig { e0, omega, handedness: h, mode: FieldMode::Homogeneous }).unwrap()
    }

    fn dirs() -> Vec<PhotonDirection> {
        let mut v = Vec::new();
        for i in 0..7 {
            for j in 0..9 {
                v.push(PhotonDirection::new(0.05 + 3.0 * i as f64 / 6.0, 0.3 + 0.7 * j as f64).unwrap());
            }
        }
        v
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_argument_first_harmonic_at_rest() {
        let f = field_with_eta(1e-9, Handedness::Clockwise);
        let s = ElectronState::at_rest();
        for d in dirs() {
            let a = matrix_element_bracket(1, &s, f.q1(), &d, &f).unwrap();
            let want = CVec3::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)) * c(-0.5 * f.params.v0, 0.0);
            assert!((a.coefficients - want).norm() < 1e-8 * f.params.v0);
        }
    }

    #[test]
    fn zeroth_harmonic_at_rest_is_order_xi() {
        let f = field_with_eta(1e-3, Handedness::Clockwise);
        let s = ElectronState::at_rest();
        for d in dirs() {
            let a = matrix_element_bracket(0, &s, f.q1(), &d, &f).unwrap();
            let j1 = bessel_j(1, a.xi).unwrap();
            // −(v0/2) J1 [e^{iφ}(1,−i,0) − e^{−iφ}(1,i,0)]
            let e = Complex64::from_polar(1.0, d.phi);
            let want = (CVec3::new(e, -Complex64::i() * e, c(0.0, 0.0))
                - CVec3::new(e.conj(), Complex64::i() * e.conj(), c(0.0, 0.0)))
                * c(-0.5 * f.params.v0 * j1, 0.0);
            assert!((a.coefficients - want).norm() <= 1e-15 * f.params.v0);
            assert!(a.coefficients.norm() <= f.params.v0 * a.xi.abs() * 0.8);
        }
    }

    /// First-order expansion of the m = 1 bracket:
    /// (e_x + i e_y) + (v_k·e)(n_x + i n_y)/c.
    fn first_order_fixture(beta: &Vec3, d: &PhotonDirection) -> CVec3 {
        let n = d.n();
        let w = c(n.x, n.y);
        CVec3::new(c(1.0, 0.0) + w * beta.x, c(0.0, 1.0) + w * beta.y, w * beta.z)
    }

    #[test]
    fn first_harmonic_matches_first_order_expansion() {
        let eta = 1e-4;
        let f = field_with_eta(eta, Handedness::Clockwise);
        let beta = Vec3::new(3e-4, -2e-4, 5e-4);
        let s = ElectronState::from_beta(beta).unwrap();
        for d in dirs() {
            let r = one_vertex_reduced(&s, &d, &f).unwrap();
            let diff = (r.0 - first_order_fixture(&beta, &d)).norm();
            assert!(diff < 2.0 * (eta * eta + beta.norm_squared()), "{diff}");
        }
    }

    #[test]
    fn contracted_one_vertex_reproduces_closed_bracket() {
        for (eta, b) in [(1e-4, 1e-4), (1e-3, 1e-3), (1e-5, 1e-5)] {
            let f = field_with_eta(eta, Handedness::Clockwise);
            let beta = Vec3::new(b, 0.5 * b, -0.8 * b);
            let s = ElectronState::from_beta(beta).unwrap();
            let mut worst: f64 = 0.0;
            for d in dirs() {
                let route = polarization_summed(&one_vertex_reduced(&s, &d, &f).unwrap(), &d);
                worst = worst.max((route - classical_bracket(&s, &d)).abs());
            }
            assert!(worst < 4.0 * (eta * eta + b * b), "eta={eta}: {worst}");
        }
    }

    #[test]
    fn angular_integral_closed_form() {
        let rule = QuadratureRule::default();
        let third = 8.0 * PI / 3.0;
        assert_eq!(one_loop_angular_integral(&Vec3::zeros(), &rule).unwrap().norm(), 0.0);
        let x = one_loop_angular_integral(&Vec3::new(1.0, 0.0, 0.0), &rule).unwrap();
        assert!((x - c(third, 0.0)).norm() < 1e-10);
        let y = one_loop_angular_integral(&Vec3::new(0.0, 1.0, 0.0), &rule).unwrap();
        assert!((y - c(0.0, third)).norm() < 1e-10);
        let g = one_loop_angular_integral(&Vec3::new(0.3, -1.7, 9.0), &rule).unwrap();
        assert!((g - c(0.3 * third, -1.7 * third)).norm() < 1e-10);
    }

    #[test]
    fn loop_amplitude_carries_one_third() {
        let f = field_with_eta(1e-3, Handedness::Clockwise);
        let rule = QuadratureRule::default();
        let beta = Vec3::new(2e-3, 1e-3, 0.0);
        let s = ElectronState::from_beta(beta).unwrap();
        let d = PhotonDirection::new(1.1, 0.4).unwrap();
        let r = loop_reduced(&s, &d, &f, &rule).unwrap();
        let n = d.n();
        let k = (1.0 / 3.0) * 1e-6 * f.constants.alpha;
        let want = CVec3::new(c(-n.y, 0.0), c(n.x, 0.0), c(0.0, 0.0)) * c(k * beta.x, k * beta.y);
        assert!((r.0 - want).norm() < 1e-10 * want.norm());
    }

    #[test]
    fn contracted_loop_reproduces_closed_bracket() {
        let rule = QuadratureRule::default();
        for h in [Handedness::Clockwise, Handedness::Counterclockwise] {
            let f = field_with_eta(1e-3, h);
            let s = ElectronState::from_beta(Vec3::new(1e-6, -2e-6, 4e-7)).unwrap();
            for d in dirs() {
                // the loop enters through its interference with the one-vertex
                // amplitude; subtracting two O(1) contractions would lose it
                let a = one_vertex_reduced(&s, &d, &f).unwrap().0;
                let b = loop_reduced(&s, &d, &f, &rule).unwrap().0;
                let sum = polarization_sum(&d);
                let mut cross = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        cross += 2.0 * (a[i] * b[j].conj()).re * sum.get(i, j);
                    }
                }
                let closed = loop_bracket(&s, &d, &f);
                let scale = (2.0 / 3.0) * 1e-6 * f.constants.alpha * 2.3e-6;
                assert!((cross - closed).abs() < 1e-5 * scale, "{h:?} {:?}", (cross, closed));
            }
        }
    }

    #[test]
    fn counterclockwise_is_mirror_image() {
        let cw = field_with_eta(1e-3, Handedness::Clockwise);
        let ccw = cw.flipped();
        let s = ElectronState::from_beta(Vec3::new(1e-3, 2e-3, -1e-3)).unwrap();
        let sm = ElectronState::from_beta(Vec3::new(1e-3, -2e-3, -1e-3)).unwrap();
        for d in dirs() {
            let a = polarization_summed(&one_vertex_reduced(&s, &d, &ccw).unwrap(), &d);
            let b = polarization_summed(&one_vertex_reduced(&sm, &d.mirrored(), &cw).unwrap(), &d.mirrored());
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn harmonic_limit() {
        let f = field_with_eta(1e-3, Handedness::Clockwise);
        let d = PhotonDirection::new(1.0, 1.0).unwrap();
        let s = ElectronState::at_rest();
        assert!(matrix_element_bracket(9, &s, f.q1(), &d, &f).is_err());
        assert!(matrix_element_bracket(-8, &s, f.q1(), &d, &f).is_ok());
    }
}
