//! CODATA 2018 constants in Gaussian CGS units.

/// Electron charge magnitude in esu (statcoulomb).
pub const ELECTRON_CHARGE: f64 = 4.803_204_712_570_263e-10;
/// Electron mass in grams.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-28;
/// Speed of light in cm/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;
/// Reduced Planck constant in erg·s.
pub const HBAR: f64 = 1.054_571_817e-27;

/// The set of constants every formula in the crate is written against.
///
/// Only the charge magnitude is stored: every observable depends on `e²` or
/// `e⁴`, and the sign of the rotation velocity is absorbed into `r0 = |v0|/ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub e: f64,
    pub m_e: f64,
    pub c: f64,
    pub hbar: f64,
    pub alpha: f64,
}

impl Constants {
    pub fn codata2018() -> Self {
        let (e, hbar, c) = (ELECTRON_CHARGE, HBAR, SPEED_OF_LIGHT);
        Constants { e, m_e: ELECTRON_MASS, c, hbar, alpha: e * e / (hbar * c) }
    }

    /// Reduced Compton wavelength ħ/(m_e c) in cm.
    pub fn compton_wavelength(&self) -> f64 {
        self.hbar / (self.m_e * self.c)
    }

    /// Electron rest energy m_e c² in erg.
    pub fn rest_energy(&self) -> f64 {
        self.m_e * self.c * self.c
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::codata2018()
    }
}
