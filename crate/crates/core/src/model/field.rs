use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::constants::Constants;
use super::units;
use crate::{Error, Result, Vec3};

/// Sense of rotation of the drive field.
///
/// `Clockwise` is the field `A ∝ (cos ωt, sin ωt, 0)` and carries angular
/// momentum along `+z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handedness {
    Clockwise,
    Counterclockwise,
}

impl Handedness {
    /// `+1` for clockwise, `-1` for counterclockwise.
    pub fn sign(self) -> f64 {
        match self {
            Handedness::Clockwise => 1.0,
            Handedness::Counterclockwise => -1.0,
        }
    }

    /// Unit vector `L` along the field angular momentum.
    pub fn axis(self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.sign())
    }

    pub fn flipped(self) -> Self {
        match self {
            Handedness::Clockwise => Handedness::Counterclockwise,
            Handedness::Counterclockwise => Handedness::Clockwise,
        }
    }
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Handedness::Clockwise => "clockwise",
            Handedness::Counterclockwise => "counterclockwise",
        })
    }
}

impl FromStr for Handedness {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "clockwise" => Ok(Handedness::Clockwise),
            "counterclockwise" => Ok(Handedness::Counterclockwise),
            other => Err(format!("expected `clockwise` or `counterclockwise`, got `{other}`")),
        }
    }
}

/// Homogeneous rotating field, or a circularly polarized plane wave
/// travelling along `+z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMode {
    Homogeneous,
    PlaneWave,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldMode::Homogeneous => "homogeneous",
            FieldMode::PlaneWave => "plane_wave",
        })
    }
}

impl FromStr for FieldMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "homogeneous" => Ok(FieldMode::Homogeneous),
            "plane_wave" => Ok(FieldMode::PlaneWave),
            other => Err(format!("expected `homogeneous` or `plane_wave`, got `{other}`")),
        }
    }
}

/// The drive field. `e0` is stored in statvolt/cm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    pub e0: f64,
    pub omega: f64,
    pub handedness: Handedness,
    pub mode: FieldMode,
}

impl FieldConfig {
    /// Builds a configuration from an SI field amplitude (V/m) and an angular
    /// frequency in rad/s.
    pub fn from_si(e0_v_per_m: f64, omega: f64, handedness: Handedness, mode: FieldMode) -> Result<Self> {
        let cfg = FieldConfig { e0: units::si_to_gaussian(e0_v_per_m)?, omega, handedness, mode };
        cfg.validate()?;
        Ok(cfg)
    }

    /// As [`FieldConfig::from_si`] with the frequency given as a vacuum
    /// wavelength in metres.
    pub fn from_si_wavelength(
        e0_v_per_m: f64,
        wavelength_m: f64,
        handedness: Handedness,
        mode: FieldMode,
    ) -> Result<Self> {
        if !(wavelength_m > 0.0) || !wavelength_m.is_finite() {
            return Err(Error::Domain { what: "wavelength_m", value: wavelength_m });
        }
        let c = Constants::codata2018().c;
        let omega = 2.0 * PI * c / units::m_to_cm(wavelength_m);
        Self::from_si(e0_v_per_m, omega, handedness, mode)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e0 > 0.0) || !self.e0.is_finite() {
            return Err(Error::Domain { what: "E0", value: self.e0 });
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::Domain { what: "omega", value: self.omega });
        }
        Ok(())
    }

    pub fn e0_si(&self) -> f64 {
        units::gaussian_to_si(self.e0)
    }

    pub fn with_e0(mut self, e0: f64) -> Self {
        self.e0 = e0;
        self
    }

    pub fn with_handedness(mut self, handedness: Handedness) -> Self {
        self.handedness = handedness;
        self
    }

    /// Wave vector of the drive, `(0, 0, ω/c)`; zero for the homogeneous field.
    pub fn wave_vector(&self, k: &Constants) -> Vec3 {
        match self.mode {
            FieldMode::Homogeneous => Vec3::zeros(),
            FieldMode::PlaneWave => Vec3::new(0.0, 0.0, self.omega / k.c),
        }
    }
}

/// Classical quantities of the dressed electron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Rotation speed e E0 / (m_e ω), cm/s.
    pub v0: f64,
    /// Radius of the circular orbit |v0|/ω, cm.
    pub r0: f64,
    /// Rotational kinetic energy m_e v0²/2, erg.
    pub eps0: f64,
    /// Radiative lifetime of the Floquet state, s.
    pub tau: f64,
    /// v0/c.
    pub eta: f64,
    /// ω τ.
    pub omega_tau: f64,
    /// Reduced Compton wavelength, cm.
    pub lambda0: f64,
}

pub fn derive_params(cfg: &FieldConfig, k: &Constants) -> Result<DerivedParams> {
    cfg.validate()?;
    let v0 = k.e * cfg.e0 / (k.m_e * cfg.omega);
    let eta = v0 / k.c;
    if eta >= 1.0 {
        return Err(Error::Relativistic { what: "v0/c", beta: eta });
    }
    // tau = 3 ħ ω m² c³ / (2 e⁴ E0²); E0² may underflow, giving +inf.
    let e2 = k.e * k.e;
    let tau = 3.0 * k.hbar * cfg.omega * k.m_e * k.m_e * k.c.powi(3) / (2.0 * e2 * e2 * cfg.e0 * cfg.e0);
    Ok(DerivedParams {
        v0,
        r0: v0.abs() / cfg.omega,
        eps0: 0.5 * k.m_e * v0 * v0,
        tau,
        eta,
        omega_tau: cfg.omega * tau,
        lambda0: k.compton_wavelength(),
    })
}

/// Drive field bundled with its derived parameters and the constants used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Field {
    pub config: FieldConfig,
    pub params: DerivedParams,
    pub constants: Constants,
}

impl Field {
    pub fn new(config: FieldConfig) -> Result<Self> {
        let constants = Constants::codata2018();
        let params = derive_params(&config, &constants)?;
        Ok(Field { config, params, constants })
    }

    pub fn omega(&self) -> f64 {
        self.config.omega
    }

    pub fn handedness(&self) -> Handedness {
        self.config.handedness
    }

    /// Same field with the opposite sense of rotation.
    pub fn flipped(&self) -> Self {
        let mut f = *self;
        f.config.handedness = f.config.handedness.flipped();
        f
    }

    /// The recurring force scale e⁴E0²/(m_e² c⁵), in dyn·s/cm.
    pub fn force_coefficient(&self) -> f64 {
        let k = &self.constants;
        let e2 = k.e * k.e;
        e2 * e2 * self.config.e0 * self.config.e0 / (k.m_e * k.m_e * k.c.powi(5))
    }

    /// Rest-frame photon wave number ω/c.
    pub fn q1(&self) -> f64 {
        self.config.omega / self.constants.c
    }
}

/// Forward-drift state of the dressed electron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronState {
    /// Drift velocity ħk/m_e, cm/s.
    pub v_k: Vec3,
}

impl ElectronState {
    pub fn new(v_k: Vec3) -> Result<Self> {
        let c = Constants::codata2018().c;
        if !v_k.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("drift velocity"));
        }
        let beta = v_k.norm() / c;
        if beta >= 1.0 {
            return Err(Error::Relativistic { what: "|v_k|/c", beta });
        }
        Ok(ElectronState { v_k })
    }

    pub fn at_rest() -> Self {
        ElectronState { v_k: Vec3::zeros() }
    }

    /// Drift velocity given in m/s.
    pub fn from_si(v_k_m_per_s: Vec3) -> Result<Self> {
        Self::new(v_k_m_per_s * units::CM_PER_M)
    }

    /// Drift velocity given as a fraction of c.
    pub fn from_beta(beta: Vec3) -> Result<Self> {
        Self::new(beta * Constants::codata2018().c)
    }

    /// v_k / c.
    pub fn beta(&self) -> Vec3 {
        self.v_k / Constants::codata2018().c
    }

    /// Electron wave vector m_e v_k / ħ, 1/cm.
    pub fn wave_vector(&self) -> Vec3 {
        let k = Constants::codata2018();
        self.v_k * (k.m_e / k.hbar)
    }

    /// Kinetic energy of forward motion ħ²k²/(2m_e), erg.
    pub fn eps_k(&self) -> f64 {
        let k = Constants::codata2018();
        let kv = self.wave_vector();
        k.hbar * k.hbar * kv.norm_squared() / (2.0 * k.m_e)
    }
}
