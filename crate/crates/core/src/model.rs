//! Transducer model description: modes, beam-splitter links, the optical pump
//! and the thermal environment, plus the validated chain builders.
//!
//! A [`ChainModel`] is a linear chain of bosonic modes ordered from the
//! microwave end to the optical end. Adjacent modes are coupled by real,
//! nonnegative beam-splitter rates. Every dissipation channel is a port:
//!
//! * the two chain endpoints each carry one itinerant (waveguide/fiber) port,
//! * every mode carries one bath port for its intrinsic loss,
//! * interior modes with a nonzero external coupling get an extra itinerant
//!   port, appended after all the ports above.
//!
//! For the one-stage chain this reproduces the canonical port order
//! `(e_in, e_th, m_th, o_in, o_th)`; for the zero-stage chain
//! `(e_in, e_th, o_in, o_th)`.
//!
//! All frequencies are angular frequencies in rad/s. The optical mode is
//! handled in the frame rotating at the pump frequency, so only the pump
//! detuning enters the dynamics for it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeLabel {
    Microwave,
    Intermediate,
    Optical,
    Custom,
}

/// One bosonic mode: a microwave cavity, an intermediate phonon/magnon mode,
/// or an optical cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    pub label: ModeLabel,
    /// Resonance frequency [rad/s].
    pub frequency: f64,
    /// Intrinsic loss rate into the mode's thermal bath [rad/s].
    pub intrinsic_loss: f64,
    /// Coupling rate to the itinerant port [rad/s]; zero means no port.
    pub external_coupling: f64,
    /// Bath temperature [K].
    pub bath_temperature: f64,
}

impl ModeSpec {
    pub fn new(
        label: ModeLabel,
        frequency: f64,
        intrinsic_loss: f64,
        external_coupling: f64,
        bath_temperature: f64,
    ) -> Self {
        ModeSpec {
            label,
            frequency,
            intrinsic_loss,
            external_coupling,
            bath_temperature,
        }
    }

    pub fn microwave(frequency: f64, intrinsic_loss: f64, external_coupling: f64, bath_temperature: f64) -> Self {
        Self::new(
            ModeLabel::Microwave,
            frequency,
            intrinsic_loss,
            external_coupling,
            bath_temperature,
        )
    }

    /// Intermediate mode with a bath port only.
    pub fn intermediate(frequency: f64, loss: f64, bath_temperature: f64) -> Self {
        Self::new(ModeLabel::Intermediate, frequency, loss, 0.0, bath_temperature)
    }

    pub fn optical(frequency: f64, intrinsic_loss: f64, external_coupling: f64, bath_temperature: f64) -> Self {
        Self::new(
            ModeLabel::Optical,
            frequency,
            intrinsic_loss,
            external_coupling,
            bath_temperature,
        )
    }

    /// Total loss rate `kappa = kappa_i + kappa_e`.
    pub fn total_loss(&self) -> f64 {
        self.intrinsic_loss + self.external_coupling
    }

    /// External port ratio `kappa_e / kappa`.
    pub fn port_ratio(&self) -> f64 {
        self.external_coupling / self.total_loss()
    }

    /// Checks the mode invariants. `name` prefixes the offending field in the
    /// error message.
    pub fn validate(&self, name: &str) -> Result<()> {
        let field = |f: &str| format!("{name}.{f}");
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(Error::validation(
                field("frequency"),
                format!("must be positive, got {}", self.frequency),
            ));
        }
        if !(self.intrinsic_loss.is_finite() && self.intrinsic_loss >= 0.0) {
            return Err(Error::validation(
                field("intrinsic_loss"),
                format!("must be nonnegative, got {}", self.intrinsic_loss),
            ));
        }
        if !(self.external_coupling.is_finite() && self.external_coupling >= 0.0) {
            return Err(Error::validation(
                field("external_coupling"),
                format!("must be nonnegative, got {}", self.external_coupling),
            ));
        }
        if self.total_loss() <= 0.0 {
            return Err(Error::validation(
                field("total_loss"),
                "total loss rate must be positive",
            ));
        }
        if !(self.bath_temperature.is_finite() && self.bath_temperature >= 0.0) {
            return Err(Error::validation(
                field("bath_temperature"),
                format!("must be nonnegative, got {}", self.bath_temperature),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingKind {
    #[default]
    BeamSplitter,
}

/// Coherent coupling between two modes of a chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSpec {
    pub mode_a: usize,
    pub mode_b: usize,
    /// Coupling rate [rad/s], real and nonnegative.
    pub strength: f64,
    pub kind: CouplingKind,
}

impl CouplingSpec {
    pub fn beam_splitter(mode_a: usize, mode_b: usize, strength: f64) -> Self {
        CouplingSpec {
            mode_a,
            mode_b,
            strength,
            kind: CouplingKind::BeamSplitter,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sideband {
    Red,
    Blue,
}

/// Optical pump, described by its detuning `delta = w_p - w_o` from the
/// optical cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpSpec {
    /// Pump frequency [rad/s] when it was specified directly.
    pub pump_frequency: Option<f64>,
    /// Signed detuning `w_p - w_o` [rad/s]; negative on the red sideband.
    pub detuning: f64,
    pub sideband: Sideband,
}

impl PumpSpec {
    /// Pump from its detuning. Only red-detuned (`detuning < 0`) pumps are
    /// accepted; a blue pump produces two-mode squeezing, not conversion.
    pub fn from_detuning(detuning: f64) -> Result<Self> {
        if !detuning.is_finite() {
            return Err(Error::validation("pump.detuning", "must be finite"));
        }
        if detuning >= 0.0 {
            return Err(Error::Config(format!(
                "pump detuning {detuning} is not on the red sideband (blue-detuned pumps are not supported)"
            )));
        }
        Ok(PumpSpec {
            pump_frequency: None,
            detuning,
            sideband: Sideband::Red,
        })
    }

    pub fn from_frequency(pump_frequency: f64, optical_frequency: f64) -> Result<Self> {
        if !(pump_frequency.is_finite() && pump_frequency > 0.0) {
            return Err(Error::validation("pump.frequency", "must be positive"));
        }
        let mut pump = Self::from_detuning(pump_frequency - optical_frequency)?;
        pump.pump_frequency = Some(pump_frequency);
        Ok(pump)
    }

    /// Red pump satisfying the resonance condition `-delta = omega`.
    pub fn resonant_with(omega: f64) -> Result<Self> {
        Self::from_detuning(-omega)
    }
}

/// Temperatures of the itinerant channels. Bath temperatures of the modes live
/// on each [`ModeSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseEnvironment {
    /// Microwave waveguide temperature [K].
    pub waveguide_temperature: f64,
    /// Treat the optical bath and fiber occupations as exactly zero.
    pub optical_occupancy_forced_zero: bool,
}

impl NoiseEnvironment {
    pub fn new(waveguide_temperature: f64) -> Result<Self> {
        if !(waveguide_temperature.is_finite() && waveguide_temperature >= 0.0) {
            return Err(Error::validation(
                "environment.waveguide_temperature",
                "must be nonnegative",
            ));
        }
        Ok(NoiseEnvironment {
            waveguide_temperature,
            optical_occupancy_forced_zero: true,
        })
    }

    pub fn zero_temperature() -> Self {
        NoiseEnvironment {
            waveguide_temperature: 0.0,
            optical_occupancy_forced_zero: true,
        }
    }
}

impl Default for NoiseEnvironment {
    fn default() -> Self {
        Self::zero_temperature()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortClass {
    Itinerant,
    Bath,
}

/// One column of the input matrix: a dissipation channel of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Port {
    pub mode: usize,
    pub rate: f64,
    pub class: PortClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Direct microwave--optical coupling.
    ZeroStage,
    /// One intermediate mode.
    OneStage,
    /// Two or more intermediate modes.
    MultiStage(usize),
}

/// Validated, immutable transducer chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel {
    modes: Vec<ModeSpec>,
    /// `links[i]` couples modes `i` and `i + 1`.
    links: Vec<f64>,
    pump: PumpSpec,
    ports: Vec<Port>,
}

impl ChainModel {
    pub fn modes(&self) -> &[ModeSpec] {
        &self.modes
    }

    pub fn mode(&self, index: usize) -> &ModeSpec {
        &self.modes[index]
    }

    pub fn links(&self) -> &[f64] {
        &self.links
    }

    pub fn couplings(&self) -> Vec<CouplingSpec> {
        self.links
            .iter()
            .enumerate()
            .map(|(i, &g)| CouplingSpec::beam_splitter(i, i + 1, g))
            .collect()
    }

    pub fn pump(&self) -> &PumpSpec {
        &self.pump
    }

    pub fn ports(&self) -> &[Port] {
        &self.ports
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn port_count(&self) -> usize {
        self.ports.len()
    }

    pub fn topology(&self) -> Topology {
        match self.modes.len() {
            2 => Topology::ZeroStage,
            3 => Topology::OneStage,
            n => Topology::MultiStage(n - 2),
        }
    }

    /// Index of the microwave-end itinerant port (always 0).
    pub fn input_port(&self) -> usize {
        0
    }

    /// Index of the optical-end itinerant port.
    pub fn output_port(&self) -> usize {
        let last = self.modes.len() - 1;
        self.ports
            .iter()
            .position(|p| p.mode == last && p.class == PortClass::Itinerant)
            .expect("validated chain has an optical itinerant port")
    }

    /// Whether mode `index` is described in the pump's rotating frame.
    pub fn is_rotating_frame(&self, index: usize) -> bool {
        self.modes[index].label == ModeLabel::Optical
    }

    /// Signal frequency at which the chain is resonant: the microwave-end
    /// mode frequency for zero-stage chains, the first intermediate mode
    /// otherwise.
    pub fn center_frequency(&self) -> f64 {
        match self.topology() {
            Topology::ZeroStage => self.modes[0].frequency,
            _ => self.modes[1].frequency,
        }
    }

    /// Indices of the itinerant ports, in port order.
    pub fn itinerant_ports(&self) -> Vec<usize> {
        self.ports
            .iter()
            .enumerate()
            .filter(|(_, p)| p.class == PortClass::Itinerant)
            .map(|(j, _)| j)
            .collect()
    }

    /// Copy of the model with new link strengths.
    pub fn with_links(&self, links: &[f64]) -> Result<Self> {
        let couplings: Vec<_> = links
            .iter()
            .enumerate()
            .map(|(i, &g)| CouplingSpec::beam_splitter(i, i + 1, g))
            .collect();
        build_chain(&self.modes, &couplings, self.pump)
    }
}

fn check_coupling(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::validation(
            name,
            format!("coupling must be real and nonnegative, got {value}"),
        ))
    }
}

/// One-stage chain microwave -- intermediate -- optical with couplings `g`
/// (microwave side) and `zeta` (optical side).
pub fn build_one_stage(e: ModeSpec, m: ModeSpec, o: ModeSpec, g: f64, zeta: f64, pump: PumpSpec) -> Result<ChainModel> {
    e.validate("e")?;
    m.validate("m")?;
    o.validate("o")?;
    check_coupling("g", g)?;
    check_coupling("zeta", zeta)?;
    if m.external_coupling != 0.0 {
        return Err(Error::Config(
            "intermediate mode of a one-stage chain must not have an itinerant port (m.external_coupling != 0)".into(),
        ));
    }
    build_chain(
        &[e, m, o],
        &[
            CouplingSpec::beam_splitter(0, 1, g),
            CouplingSpec::beam_splitter(1, 2, zeta),
        ],
        pump,
    )
}

/// Zero-stage chain: microwave and optical cavities coupled directly by
/// `g_eo`.
pub fn build_zero_stage(e: ModeSpec, o: ModeSpec, g_eo: f64, pump: PumpSpec) -> Result<ChainModel> {
    e.validate("e")?;
    o.validate("o")?;
    check_coupling("g_eo", g_eo)?;
    build_chain(&[e, o], &[CouplingSpec::beam_splitter(0, 1, g_eo)], pump)
}

/// General linear chain. `couplings` must list every adjacent pair exactly
/// once and nothing else.
pub fn build_chain(modes: &[ModeSpec], couplings: &[CouplingSpec], pump: PumpSpec) -> Result<ChainModel> {
    let n = modes.len();
    if n < 2 {
        return Err(Error::Config(format!(
            "a transduction chain needs at least two modes, got {n}"
        )));
    }
    for (i, mode) in modes.iter().enumerate() {
        mode.validate(&format!("modes[{i}]"))?;
        if mode.label == ModeLabel::Optical && i != n - 1 {
            return Err(Error::Config(format!(
                "mode {i} is labeled optical but only the last mode of the chain may be optical"
            )));
        }
    }
    if modes[0].external_coupling <= 0.0 {
        return Err(Error::Config(
            "microwave-end mode has no itinerant port (external coupling is 0)".into(),
        ));
    }
    if modes[n - 1].external_coupling <= 0.0 {
        return Err(Error::Config(
            "optical-end mode has no itinerant port (external coupling is 0)".into(),
        ));
    }
    if pump.sideband != Sideband::Red || pump.detuning.is_nan() || pump.detuning >= 0.0 {
        return Err(Error::Config("only red-detuned pumps are supported".into()));
    }

    let mut links = vec![None; n - 1];
    for (k, c) in couplings.iter().enumerate() {
        check_coupling(&format!("couplings[{k}].strength"), c.strength)?;
        let (a, b) = (c.mode_a.min(c.mode_b), c.mode_a.max(c.mode_b));
        if c.mode_a == c.mode_b {
            return Err(Error::Config(format!("coupling {k} connects mode {a} to itself")));
        }
        if b >= n {
            return Err(Error::Config(format!(
                "coupling {k} refers to mode {b}, chain has {n} modes"
            )));
        }
        if b != a + 1 {
            return Err(Error::Config(format!(
                "coupling {k} connects non-adjacent modes {a} and {b}; couplings must form a path"
            )));
        }
        if links[a].replace(c.strength).is_some() {
            return Err(Error::Config(format!("modes {a} and {b} are coupled more than once")));
        }
    }
    let links = links
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            g.ok_or_else(|| {
                Error::Config(format!(
                    "modes {i} and {} are not coupled; couplings must form a path",
                    i + 1
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut ports = Vec::with_capacity(2 * n);
    for (i, mode) in modes.iter().enumerate() {
        if i == 0 || i == n - 1 {
            ports.push(Port {
                mode: i,
                rate: mode.external_coupling,
                class: PortClass::Itinerant,
            });
        }
        ports.push(Port {
            mode: i,
            rate: mode.intrinsic_loss,
            class: PortClass::Bath,
        });
    }
    for (i, mode) in modes.iter().enumerate().take(n - 1).skip(1) {
        if mode.external_coupling > 0.0 {
            ports.push(Port {
                mode: i,
                rate: mode.external_coupling,
                class: PortClass::Itinerant,
            });
        }
    }

    Ok(ChainModel {
        modes: modes.to_vec(),
        links,
        pump,
        ports,
    })
}
