//! Bessel functions of the first kind for integer order.

use num_complex::Complex64;

use crate::{Error, Result};

pub const MAX_BESSEL_ORDER: i32 = 64;

/// Below this argument the defining power series is summed directly.
const SERIES_CUTOFF: f64 = 2.0;

/// `J_m(x)` for integer `|m| ≤ 64` and finite `x`.
///
/// Small arguments use the power series; larger ones use Miller's backward
/// recurrence normalised with `J_0 + 2 Σ J_2k = 1`.
pub fn bessel_j(m: i32, x: f64) -> Result<f64> {
    if m.abs() > MAX_BESSEL_ORDER {
        return Err(Error::UnsupportedOrder { order: m, max: MAX_BESSEL_ORDER });
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("Bessel argument"));
    }
    let n = m.unsigned_abs() as usize;
    // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x)
    let mut sign = 1.0;
    if m < 0 && n % 2 == 1 {
        sign = -sign;
    }
    if x < 0.0 && n % 2 == 1 {
        sign = -sign;
    }
    let ax = x.abs();
    let value = if ax == 0.0 {
        if n == 0 {
            1.0
        } else {
            0.0
        }
    } else if ax < SERIES_CUTOFF {
        series(n, ax)
    } else {
        miller(n, ax)
    };
    Ok(sign * value)
}

fn series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=n {
        term *= half / i as f64;
    }
    let q = half * half;
    let mut sum = term;
    let mut j = 0.0;
    loop {
        j += 1.0;
        term *= -q / (j * (j + n as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || term == 0.0 {
            break;
        }
    }
    sum
}

fn miller(n: usize, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let mut start = (top + 30.0 + (40.0 * top).sqrt()) as usize;
    start += start % 2;

    let two_over_x = 2.0 / x;
    let (mut above, mut current) = (0.0_f64, 1e-30_f64);
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        // current = J_k, above = J_{k+1}
        let below = k as f64 * two_over_x * current - above;
        above = current;
        current = below;
        let order = k - 1;
        if order == n {
            wanted = current;
        }
        if order % 2 == 0 && order > 0 {
            norm += 2.0 * current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    norm += current;
    wanted / norm
}

/// Residual `|exp(iξ sin ωt) − Σ_{|m|≤M} J_m(ξ) exp(imωt)|` of the truncated
/// Jacobi–Anger expansion.
pub fn jacobi_anger_check(xi: f64, omega_t: f64, truncation: i32) -> Result<f64> {
    let exact = Complex64::from_polar(1.0, xi * omega_t.sin());
    let mut sum = Complex64::new(0.0, 0.0);
    for m in -truncation..=truncation {
        sum += bessel_j(m, xi)? * Complex64::from_polar(1.0, m as f64 * omega_t);
    }
    Ok((exact - sum).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Bessel's integral J_m(x) = (1/π) ∫_0^π cos(mτ − x sin τ) dτ, evaluated
    /// with the periodic trapezoid rule over [0, 2π).
    fn integral_oracle(m: i32, x: f64) -> f64 {
        let n = 512;
        let h = 2.0 * PI / n as f64;
        (0..n)
            .map(|i| {
                let t = i as f64 * h;
                (m as f64 * t - x * t.sin()).cos()
            })
            .sum::<f64>()
            * h
            / (2.0 * PI)
    }

    /// Defining series summed with no shortcuts.
    fn series_oracle(m: u32, x: f64) -> f64 {
        let mut sum = 0.0;
        for j in 0..60u32 {
            let mut t = (x / 2.0).powi((2 * j + m) as i32);
            for i in 1..=j {
                t /= i as f64;
            }
            for i in 1..=(j + m) {
                t /= i as f64;
            }
            sum += if j % 2 == 0 { t } else { -t };
        }
        sum
    }

    #[test]
    fn special_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        assert!((bessel_j(1, 1e-6).unwrap() - 5e-7).abs() < 1e-13);
    }

    #[test]
    fn matches_series_at_moderate_argument() {
        let v = bessel_j(2, 1.5).unwrap();
        assert!((v - series_oracle(2, 1.5)).abs() < 1e-12);
        assert!((v - 0.232_087_672_144_214_75).abs() < 1e-12);
    }

    #[test]
    fn matches_integral_representation() {
        for m in [0, 1, 2, 5, 10, 20, 40, 64] {
            for x in [0.1, 0.7, 1.99, 2.01, 3.5, 6.0, 9.9, 10.0] {
                let got = bessel_j(m, x).unwrap();
                let want = integral_oracle(m, x);
                assert!((got - want).abs() < 1e-12, "J_{m}({x}) = {got}, oracle {want}");
            }
        }
    }

    #[test]
    fn reference_values() {
        assert!((bessel_j(0, 10.0).unwrap() - (-0.245_935_764_451_348_3)).abs() < 1e-14);
        assert!((bessel_j(1, 5.0).unwrap() - (-0.327_579_137_591_465_2)).abs() < 1e-14);
    }

    #[test]
    fn reflection_symmetries() {
        for m in 0..=10 {
            for x in [0.3, 2.5, 7.0] {
                let j = bessel_j(m, x).unwrap();
                let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(bessel_j(-m, x).unwrap(), parity * j);
                assert_eq!(bessel_j(m, -x).unwrap(), parity * j);
            }
        }
    }

    #[test]
    fn three_term_recurrence() {
        for x in [0.1, 1.0, 5.0] {
            for m in 1..=10 {
                let lhs = bessel_j(m - 1, x).unwrap() + bessel_j(m + 1, x).unwrap();
                let rhs = 2.0 * m as f64 / x * bessel_j(m, x).unwrap();
                assert!((lhs - rhs).abs() < 1e-10, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn order_limit() {
        assert!(matches!(bessel_j(65, 1.0), Err(Error::UnsupportedOrder { .. })));
        assert!(bessel_j(-64, 1.0).is_ok());
        assert!(bessel_j(0, f64::NAN).is_err());
    }

    #[test]
    fn jacobi_anger() {
        assert_eq!(jacobi_anger_check(0.0, 1.3, 5).unwrap(), 0.0);
        assert!(jacobi_anger_check(0.5, 1.0, 20).unwrap() < 1e-10);
        assert!(jacobi_anger_check(2.0, 2.5, 30).unwrap() < 1e-10);
        for xi in [-5.0, -1.0, 3.0, 5.0] {
            assert!(jacobi_anger_check(xi, 0.7, 30).unwrap() < 1e-10);
        }
    }
}
