//! Numerical building blocks shared by the physics modules.

mod bessel;
mod ode;
mod quadrature;

pub use bessel::{bessel_j, jacobi_anger_check, MAX_BESSEL_ORDER};
pub use ode::{rk4_integrate, rk4_integrate_with, rk4_step, OdeState};
pub use quadrature::{sphere_integrate, Integrand, QuadratureRule, DEFAULT_ORDER};
