//! Physical constants, the drive field and its derived classical parameters.

pub mod constants;
mod field;
mod regime;
pub mod units;

pub use constants::Constants;
pub use field::{derive_params, DerivedParams, ElectronState, Field, FieldConfig, FieldMode, Handedness};
pub use regime::{validate_regime, RegimeFlags, RegimeReport, Verdict};
