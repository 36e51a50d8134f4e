//! Physical constants shared by every module.

use crate::error::{Error, Result};

/// Reduced Planck constant, particle mass, and the constant background
/// potential. All identities in this crate are exact in natural units
/// (`hbar = mass = 1`, `potential = 0`), which is also the default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    pub potential: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64, potential: f64) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::domain(format!("hbar must be positive, got {hbar}")));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::domain(format!("mass must be positive, got {mass}")));
        }
        if !potential.is_finite() {
            return Err(Error::domain("potential must be finite"));
        }
        Ok(Self {
            hbar,
            mass,
            potential,
        })
    }

    /// Natural units: `hbar = 1`, `mass = 1`, `potential = 0`.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            potential: 0.0,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}
