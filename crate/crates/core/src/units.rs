//! Natural unit system built on a reference mass, speed and action.
//!
//! Dimensional note: the level parameter `Ω` enters the mass shell as
//! `m²c² + 2mcΩ`, so it carries momentum units, while `Ω̃` is an angular
//! frequency (`ħΩ̃` is the non-relativistic level gap). Expanding
//! `c√(m²c² + 2mcΩ)` gives the gap `2cΩ`, so the two models agree when
//! `Ω = ħΩ̃/(2c)`; the relation `Ω̃ = Ω/m` is not dimensionally homogeneous
//! and diverges in the `c → ∞` limit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reference scales; all other units derive from `(mass, speed, action)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub mass: f64,
    pub speed: f64,
    pub action: f64,
}

impl UnitSystem {
    pub fn new(mass: f64, speed: f64, action: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("speed", speed), ("action", action)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "unit scale",
                    reason: format!("{name} must be positive and finite, got {v}"),
                });
            }
        }
        Ok(Self { mass, speed, action })
    }

    /// Electron mass, speed of light and reduced Planck constant in SI.
    pub fn atomic_si() -> Self {
        Self {
            mass: 9.109_383_701_5e-31,
            speed: 299_792_458.0,
            action: 1.054_571_817e-34,
        }
    }

    pub fn length(&self) -> f64 {
        self.action / (self.mass * self.speed)
    }

    pub fn time(&self) -> f64 {
        self.action / (self.mass * self.speed * self.speed)
    }

    pub fn energy(&self) -> f64 {
        self.mass * self.speed * self.speed
    }

    pub fn momentum(&self) -> f64 {
        self.mass * self.speed
    }

    pub fn frequency(&self) -> f64 {
        1.0 / self.time()
    }

    pub fn to_internal(&self, value: f64, dim: Dimension) -> f64 {
        value / self.scale(dim)
    }

    pub fn from_internal(&self, value: f64, dim: Dimension) -> f64 {
        value * self.scale(dim)
    }

    fn scale(&self, dim: Dimension) -> f64 {
        match dim {
            Dimension::Mass => self.mass,
            Dimension::Speed => self.speed,
            Dimension::Action => self.action,
            Dimension::Length => self.length(),
            Dimension::Time => self.time(),
            Dimension::Energy => self.energy(),
            Dimension::Momentum => self.momentum(),
            Dimension::Frequency => self.frequency(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    Mass,
    Speed,
    Action,
    Length,
    Time,
    Energy,
    Momentum,
    Frequency,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_scales_are_consistent() {
        let u = UnitSystem::atomic_si();
        assert!((u.energy() * u.time() / u.action - 1.0).abs() < 1e-15);
        assert!((u.length() / u.time() / u.speed - 1.0).abs() < 1e-15);
        // reduced Compton wavelength of the electron
        assert!((u.length() / 3.861_592_6796e-13 - 1.0).abs() < 1e-9);
        let e = 1.602_176_634e-19;
        assert!((u.from_internal(u.to_internal(e, Dimension::Energy), Dimension::Energy) / e - 1.0).abs() < 1e-15);
        assert!(UnitSystem::new(1.0, 0.0, 1.0).is_err());
    }
}
