//! Photon emission by a non-relativistic electron dressed by a strong
//! circularly polarized field, and the radiation-reaction forces that follow
//! from it.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: constants, unit conversion, drive-field configuration and
//!   the derived classical parameters (rotation velocity, lifetime, regime).
//! * [`numerics`]: Bessel functions, Gauss–Legendre sphere quadrature and a
//!   fixed-step RK4 integrator.
//! * [`geometry`]: photon directions, polarization sums and the photon wave
//!   numbers allowed by energy–momentum conservation.
//! * [`emission`]: per-solid-angle emission rates (one-vertex and one-loop)
//!   and the radiation pattern.
//! * [`observables`]: power, lifetime and the three recoil forces, each with
//!   a closed form and an independent quadrature path.
//! * [`dynamics`]: guiding-centre drift under the combined recoil forces.
//! * [`verify`]: the oracle-equivalence check suite.
//! * [`config`]: the flat `key = value` configuration format.
//!
//! All internal arithmetic is Gaussian CGS. SI enters and leaves only through
//! [`model::units`] and the file formats.

// `!(x > 0.0)` is used on purpose so NaN falls into the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dynamics;
pub mod emission;
pub mod error;
pub mod geometry;
pub mod model;
pub mod numerics;
pub mod observables;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Constants, DerivedParams, ElectronState, Field, FieldConfig, FieldMode, Handedness};

/// Cartesian 3-vector used throughout (components in CGS units unless noted).
pub type Vec3 = nalgebra::Vector3<f64>;
