//! Physical constants and the two supported unit modes.
//!
//! All formulas in this crate are algebraically homogeneous, so computations
//! run in whatever units the caller supplies; nothing is rescaled behind the
//! caller's back. The two modes simply fix which constants are in force.

use crate::error::{Error, Result};

/// Reduced Planck constant, CGS (erg s). CODATA 2018 exact value.
pub const HBAR_CGS: f64 = 1.054571817e-27;
/// Boltzmann constant, CGS (erg/K). CODATA 2018 exact value.
pub const K_BOLTZMANN_CGS: f64 = 1.380649e-16;
/// Electron rest mass (g).
pub const ELECTRON_MASS_G: f64 = 9.1093837015e-28;
/// One Angstrom in centimeters.
pub const ANGSTROM_CM: f64 = 1e-8;

/// Unit system selector. Exactly one mode is active per computation context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    /// Centimeter-gram-second units; hbar and k carry their CGS values.
    Cgs,
    /// hbar = k = 1.
    Natural,
}

/// The constants every formula draws from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Reduced Planck constant (erg s in CGS mode, 1 in natural mode).
    pub hbar: f64,
    /// Boltzmann constant (erg/K in CGS mode, 1 in natural mode).
    pub k_boltzmann: f64,
}

impl Constants {
    pub fn natural() -> Self {
        Constants {
            hbar: 1.0,
            k_boltzmann: 1.0,
        }
    }

    pub fn cgs() -> Self {
        Constants {
            hbar: HBAR_CGS,
            k_boltzmann: K_BOLTZMANN_CGS,
        }
    }
}

pub fn constants_for(mode: UnitMode) -> Constants {
    match mode {
        UnitMode::Cgs => Constants::cgs(),
        UnitMode::Natural => Constants::natural(),
    }
}

/// Root-mean-square thermal velocity sqrt(kT/m) of a free particle.
pub fn thermal_velocity(mass: f64, temperature: f64, c: &Constants) -> Result<f64> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::domain(format!(
            "mass must be positive and finite, got {mass}"
        )));
    }
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(Error::domain(format!(
            "temperature must be nonnegative and finite, got {temperature}"
        )));
    }
    Ok((c.k_boltzmann * temperature / mass).sqrt())
}
