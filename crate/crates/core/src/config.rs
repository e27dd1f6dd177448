//! JSON model configuration.
//!
//! Rates and frequencies in the file are ordinary frequencies in Hz. They are
//! converted to angular frequencies (x 2 pi) here and nowhere else.
//!
//! ```json
//! {
//!   "modes": [
//!     {"label": "microwave", "frequency_hz": 5e9, "kappa_int_hz": 1e5, "kappa_ext_hz": 1e6, "bath_temperature_k": 0.01},
//!     {"label": "intermediate", "frequency_hz": 5e9, "kappa_int_hz": 1e3, "kappa_ext_hz": 0, "bath_temperature_k": 0.01},
//!     {"label": "optical", "frequency_hz": 1.94e14, "kappa_int_hz": 1e5, "kappa_ext_hz": 1e6, "bath_temperature_k": 300}
//!   ],
//!   "couplings": [{"a": 0, "b": 1, "strength_hz": 2e4}, {"a": 1, "b": 2, "strength_hz": 2e4}],
//!   "pump": {"detuning_hz": -5e9},
//!   "environment": {"waveguide_temperature_k": 0.01}
//! }
//! ```

use std::f64::consts::TAU;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{build_chain, ChainModel, CouplingSpec, ModeLabel, ModeSpec, NoiseEnvironment, PumpSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeConfig {
    pub label: ModeLabel,
    pub frequency_hz: f64,
    pub kappa_int_hz: f64,
    pub kappa_ext_hz: f64,
    pub bath_temperature_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    pub a: usize,
    pub b: usize,
    pub strength_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PumpConfig {
    Frequency { frequency_hz: f64 },
    Detuning { detuning_hz: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentConfig {
    #[serde(default)]
    pub waveguide_temperature_k: f64,
    #[serde(default = "default_true")]
    pub optical_occupancy_forced_zero: bool,
}

fn default_true() -> bool {
    true
}

impl Default for EnvironmentConfig {
    fn default() -> Self {
        EnvironmentConfig {
            waveguide_temperature_k: 0.0,
            optical_occupancy_forced_zero: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub modes: Vec<ModeConfig>,
    pub couplings: Vec<CouplingConfig>,
    pub pump: PumpConfig,
    #[serde(default)]
    pub environment: EnvironmentConfig,
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid model configuration: {e}")))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Builds the validated chain and its noise environment.
    pub fn build(&self) -> Result<(ChainModel, NoiseEnvironment)> {
        let modes: Vec<ModeSpec> = self
            .modes
            .iter()
            .map(|m| {
                ModeSpec::new(
                    m.label,
                    TAU * m.frequency_hz,
                    TAU * m.kappa_int_hz,
                    TAU * m.kappa_ext_hz,
                    m.bath_temperature_k,
                )
            })
            .collect();
        let couplings: Vec<CouplingSpec> = self
            .couplings
            .iter()
            .map(|c| CouplingSpec::beam_splitter(c.a, c.b, TAU * c.strength_hz))
            .collect();
        let pump = match self.pump {
            PumpConfig::Detuning { detuning_hz } => PumpSpec::from_detuning(TAU * detuning_hz)?,
            PumpConfig::Frequency { frequency_hz } => {
                let optical = modes
                    .iter()
                    .find(|m| m.label == ModeLabel::Optical)
                    .ok_or_else(|| Error::Config("pump given as a frequency but no mode is labeled optical".into()))?;
                PumpSpec::from_frequency(TAU * frequency_hz, optical.frequency)?
            }
        };
        let mut env = NoiseEnvironment::new(self.environment.waveguide_temperature_k)?;
        env.optical_occupancy_forced_zero = self.environment.optical_occupancy_forced_zero;
        Ok((build_chain(&modes, &couplings, pump)?, env))
    }
}
