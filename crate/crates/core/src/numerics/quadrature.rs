//! Product quadrature on the unit sphere: Gauss–Legendre in cos θ, periodic
//! trapezoid in φ.

use std::f64::consts::PI;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::{Error, Result, Vec3};

pub const DEFAULT_ORDER: usize = 64;
const MIN_PHI_COUNT: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    phi_count: usize,
}

impl QuadratureRule {
    pub fn new(order: usize, phi_count: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("quadrature order must be positive".into()));
        }
        if phi_count < MIN_PHI_COUNT {
            return Err(Error::InvalidArgument(format!(
                "azimuthal point count {phi_count} below minimum {MIN_PHI_COUNT}"
            )));
        }
        let (nodes, weights) = gauss_legendre(order);
        Ok(QuadratureRule { order, nodes, weights, phi_count })
    }

    /// Rule of the given Gauss–Legendre order with `2·order` azimuthal points.
    pub fn with_order(order: usize) -> Result<Self> {
        Self::new(order, (2 * order).max(MIN_PHI_COUNT))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Gauss–Legendre abscissae in cos θ, strictly increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn phi_count(&self) -> usize {
        self.phi_count
    }

    /// Σ w_i f(x_i) over [−1, 1].
    pub fn integrate_1d(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::with_order(DEFAULT_ORDER).expect("default order is valid")
    }
}

/// Nodes and weights on [−1, 1] by Newton iteration on P_n.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Values that can be accumulated by [`sphere_integrate`].
pub trait Integrand: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn is_finite(&self) -> bool;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Integrand for Vec3 {
    fn zero() -> Self {
        Vec3::zeros()
    }
    fn is_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// ∫ f(θ, φ) dΩ. Summation order is fixed (θ outer, φ inner), so results are
/// bit-reproducible.
pub fn sphere_integrate<T, F>(f: F, rule: &QuadratureRule) -> Result<T>
where
    T: Integrand,
    F: Fn(f64, f64) -> T,
{
    let dphi = 2.0 * PI / rule.phi_count as f64;
    let mut total = T::zero();
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let theta = u.acos();
        let mut ring = T::zero();
        for j in 0..rule.phi_count {
            ring = ring + f(theta, j as f64 * dphi);
        }
        total = total + ring * (w * dphi);
    }
    if !total.is_finite() {
        return Err(Error::NonFinite("sphere integrand"));
    }
    Ok(total)
}
