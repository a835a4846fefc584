//! Photon directions, polarization sums and allowed photon wave numbers.

use std::f64::consts::PI;

use nalgebra::Matrix3;

use crate::model::Field;
use crate::{Error, Result, Vec3};

/// Direction of an emitted photon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonDirection {
    pub theta: f64,
    pub phi: f64,
    n: Vec3,
}

impl PhotonDirection {
    /// `theta ∈ [0, π]`; `phi` is reduced to `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain { what: "theta_q", value: theta });
        }
        if !phi.is_finite() {
            return Err(Error::Domain { what: "phi_q", value: phi });
        }
        Ok(Self::unchecked(theta, phi.rem_euclid(2.0 * PI)))
    }

    /// Builds a direction without range checks; used on quadrature grids.
    pub(crate) fn unchecked(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        PhotonDirection { theta, phi, n: Vec3::new(st * cp, st * sp, ct) }
    }

    /// Unit wave vector (sinθ cosφ, sinθ sinφ, cosθ).
    pub fn n(&self) -> Vec3 {
        self.n
    }

    pub fn cos_theta(&self) -> f64 {
        self.n.z
    }

    pub fn sin_theta(&self) -> f64 {
        self.theta.sin()
    }

    /// Direction reflected through the xz plane (φ → −φ).
    pub fn mirrored(&self) -> Self {
        Self::unchecked(self.theta, (-self.phi).rem_euclid(2.0 * PI))
    }

    pub fn antipodal(&self) -> Self {
        Self::unchecked(PI - self.theta, (self.phi + PI).rem_euclid(2.0 * PI))
    }
}

/// Σ_pol e_i e_j* for a photon travelling along `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationSumTensor(pub Matrix3<f64>);

impl PolarizationSumTensor {
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }
}

/// Transverse projector `I − n nᵀ`.
pub fn polarization_sum(dir: &PhotonDirection) -> PolarizationSumTensor {
    let n = dir.n();
    PolarizationSumTensor(Matrix3::identity() - n * n.transpose())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonWaveNumber {
    pub m: u32,
    /// Exact root of ε_k + mħω = ε_{k−q} + ħcq, 1/cm.
    pub q_m: f64,
    /// (mω/c)(1 + v·n/c), 1/cm.
    pub first_order_q: f64,
}

/// Photon wave number for harmonic `m` emitted along `dir` by an electron
/// drifting with velocity `v` (cm/s).
pub fn allowed_photon_q(m: u32, v: &Vec3, dir: &PhotonDirection, field: &Field) -> Result<PhotonWaveNumber> {
    if m == 0 {
        return Err(Error::Domain { what: "harmonic m", value: 0.0 });
    }
    let c = field.constants.c;
    if !(v.norm() < c) {
        return Err(Error::Relativistic { what: "|v|/c", beta: v.norm() / c });
    }
    let lambda0 = field.params.lambda0;
    let mf = m as f64;
    let a = 1.0 - v.dot(&dir.n()) / c;
    let x = 2.0 * mf * lambda0 * field.omega() / c;
    let disc = a * a + x;
    if !(disc >= 0.0) {
        return Err(Error::NonFinite("photon wave-number discriminant"));
    }
    // sqrt(a² + x) − a written without cancellation
    let q_m = x / (disc.sqrt() + a) / lambda0;
    let first_order_q = mf * field.omega() / c * (1.0 + v.dot(&dir.n()) / c);
    Ok(PhotonWaveNumber { m, q_m, first_order_q })
}
