//! Photon emission at the main harmonic.
//!
//! Rates are per unit solid angle after the photon wave number has been
//! fixed by energy conservation, so the normalization volume never appears.
//! Velocity corrections are kept to first order in v_k/c.

mod amplitude;
mod density;
mod pattern;

pub use amplitude::{
    contract, loop_reduced, matrix_element_bracket, one_loop_angular_integral, one_vertex_reduced, polarization_summed,
    total_reduced, ContractionData, ReducedBracket, MAX_HARMONIC,
};
pub use density::{
    angular_density, classical_bracket, classical_density, loop_bracket, loop_density, rate_normalization,
    AngularDensity,
};
pub use pattern::{
    intensity_closed_form, intensity_from_density, intensity_normalization, radiation_pattern, write_pattern_csv,
    IntensityParts, PatternPoint, RadiationPattern, MIN_PATTERN_GRID, PATTERN_CSV_HEADER,
};
