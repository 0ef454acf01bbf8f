use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FieldState, InitialState, LevelLink};
use crate::error::{Error, Result};
use crate::hamiltonian::{CouplingForm, EnergyOffset, HamiltonianKind, ModelParams};
use crate::kinematics::Signature;
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialLevel {
    #[default]
    Excited,
    Ground,
    /// `(Φ(+) + Φ(−))/√2`.
    Superposition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaultInjection {
    /// Perturb every tetrad before the orthonormality check.
    Tetrad,
}

/// Flat run configuration read from TOML. Every key is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub mass: f64,
    pub c: f64,
    pub hbar: f64,
    /// `Ω`; derived from `level_frequency` through `link` when absent.
    pub level_splitting: Option<f64>,
    pub level_frequency: f64,
    pub mode_frequency: f64,
    /// `d`; derived from `coupling` when absent.
    pub dipole: Option<f64>,
    /// `g = cħd|𝓔|`.
    pub coupling: f64,
    pub kappa: [f64; 3],
    pub field: [f64; 3],
    pub fock_cutoff: usize,
    pub coupling_form: CouplingForm,
    pub aligned_sign: i8,
    pub mode_direction: [f64; 3],
    pub energy_offset: EnergyOffset,
    pub link: LevelLink,

    pub hamiltonian: HamiltonianKind,
    pub initial_level: InitialLevel,
    pub photons: usize,
    /// Coherent amplitude `[re, im]`; replaces `photons` when present.
    pub amplitude: Option<[f64; 2]>,

    /// End of the time grid; `periods` vacuum Rabi periods `πħ/g` when absent.
    pub t_max: Option<f64>,
    pub periods: f64,
    pub samples: usize,
    pub ratios: Vec<f64>,
    pub c_list: Vec<f64>,

    pub signature: Signature,
    pub points: usize,
    pub tetrad_points: usize,
    pub fault_injection: Option<FaultInjection>,

    pub tol_grassmann: f64,
    pub tol_tetrad: f64,
    pub tol_poincare: f64,
    pub tol_quantize: f64,
    pub tol_hamiltonian: f64,
    pub tol_convergence: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let m = ModelParams::default();
        Self {
            mass: m.mass,
            c: m.c,
            hbar: m.hbar,
            level_splitting: None,
            level_frequency: m.level_frequency,
            mode_frequency: m.mode_frequency,
            dipole: None,
            coupling: 0.05,
            kappa: m.kappa,
            field: m.field,
            fock_cutoff: m.fock_cutoff,
            coupling_form: m.coupling_form,
            aligned_sign: m.aligned_sign,
            mode_direction: m.mode_direction,
            energy_offset: EnergyOffset::RestMass,
            link: LevelLink::NonRelativistic,
            hamiltonian: HamiltonianKind::JaynesCummings,
            initial_level: InitialLevel::Excited,
            photons: 0,
            amplitude: None,
            t_max: None,
            periods: 5.0,
            samples: 1001,
            ratios: vec![0.0, 1e-3, 1e-2, 0.1, 0.3],
            c_list: vec![10.0, 100.0, 1000.0, 1e4],
            signature: Signature::Plus,
            points: 100,
            tetrad_points: 1000,
            fault_injection: None,
            tol_grassmann: 1e-14,
            tol_tetrad: 1e-12,
            tol_poincare: 1e-10,
            tol_quantize: 1e-14,
            tol_hamiltonian: 1e-12,
            tol_convergence: 1e-6,
        }
    }
}

fn config_error(key: &str, reason: impl std::fmt::Display) -> Error {
    Error::Config(format!("key `{key}`: {reason}"))
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    fn check(&self) -> Result<()> {
        let tolerances = [
            ("tol_grassmann", self.tol_grassmann),
            ("tol_tetrad", self.tol_tetrad),
            ("tol_poincare", self.tol_poincare),
            ("tol_quantize", self.tol_quantize),
            ("tol_hamiltonian", self.tol_hamiltonian),
            ("tol_convergence", self.tol_convergence),
        ];
        for (key, v) in tolerances {
            if !(v > 0.0) || !v.is_finite() {
                return Err(config_error(key, format!("tolerance must be positive, got {v}")));
            }
        }
        if !(self.periods > 0.0) {
            return Err(config_error("periods", "must be positive"));
        }
        if let Some(t) = self.t_max {
            if !(t > 0.0) || !t.is_finite() {
                return Err(config_error("t_max", "must be positive"));
            }
        }
        if self.samples < 2 {
            return Err(config_error("samples", "need at least 2 grid points"));
        }
        if self.c_list.is_empty() {
            return Err(config_error("c_list", "must not be empty"));
        }
        if self.ratios.is_empty() {
            return Err(config_error("ratios", "must not be empty"));
        }
        if self.points == 0 || self.tetrad_points == 0 {
            return Err(config_error("points", "must be positive"));
        }
        self.params().map(|_| ())
    }

    /// Model parameters with `Ω` and `d` resolved.
    pub fn params(&self) -> Result<ModelParams> {
        let mut p = ModelParams {
            mass: self.mass,
            c: self.c,
            hbar: self.hbar,
            level_splitting: 0.0,
            level_frequency: self.level_frequency,
            mode_frequency: self.mode_frequency,
            dipole: 0.0,
            kappa: self.kappa,
            field: self.field,
            fock_cutoff: self.fock_cutoff,
            coupling_form: self.coupling_form,
            aligned_sign: self.aligned_sign,
            mode_direction: self.mode_direction,
            energy_offset: self.energy_offset,
        };
        p = match (self.level_splitting, self.link) {
            (Some(omega), _) => ModelParams { level_splitting: omega, ..p },
            (None, LevelLink::Mass) => p.with_mass_link(),
            (None, LevelLink::NonRelativistic) => p.with_nonrelativistic_link(),
        };
        p = match self.dipole {
            Some(d) => ModelParams { dipole: d, ..p },
            None if self.field.iter().any(|x| *x != 0.0) => p.with_coupling(self.coupling),
            None => p,
        };
        p.validate().map_err(|e| match e {
            Error::InvalidParameter { name, reason } => config_error(name, reason),
            other => other,
        })?;
        Ok(p)
    }

    pub fn initial_state(&self) -> InitialState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let level = match self.initial_level {
            InitialLevel::Excited => [one, zero],
            InitialLevel::Ground => [zero, one],
            InitialLevel::Superposition => [one * s, one * s],
        };
        let field = match self.amplitude {
            Some([re, im]) => FieldState::Coherent(Complex64::new(re, im)),
            None => FieldState::Fock(self.photons),
        };
        InitialState { level, field }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
        let p = RunConfig::default().params().unwrap();
        assert!((p.coupling() - 0.05).abs() < 1e-15);
        assert!((p.level_splitting - 0.005).abs() < 1e-15);
    }

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfig::from_toml("fock_cutof = 3").unwrap_err().to_string();
        assert!(err.contains("fock_cutof"), "{err}");
    }

    #[test]
    fn invalid_values_name_their_key() {
        let err = RunConfig::from_toml("tol_tetrad = 0.0").unwrap_err().to_string();
        assert!(err.contains("tol_tetrad"), "{err}");
        let err = RunConfig::from_toml("mass = -1.0").unwrap_err().to_string();
        assert!(err.contains("mass"), "{err}");
    }

    #[test]
    fn explicit_values_override_links() {
        let cfg = RunConfig::from_toml("level_splitting = 0.25\ndipole = 0.01\nlink = \"mass\"").unwrap();
        let p = cfg.params().unwrap();
        assert_eq!((p.level_splitting, p.dipole), (0.25, 0.01));
        let cfg = RunConfig::from_toml("link = \"mass\"\nmass = 2.0").unwrap();
        assert_eq!(cfg.params().unwrap().level_splitting, 2.0);
    }
}
