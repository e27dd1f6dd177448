//! Input-output modeling of microwave-to-optical quantum transducers.
//!
//! A transducer is a linear chain of bosonic modes: a microwave cavity, zero
//! or more intermediate excitations (mechanical, magnonic, ...) and an
//! optical cavity driven on its red sideband. [`model`] builds and validates
//! the chain, [`scattering`] turns it into a frequency-domain scattering
//! matrix, and [`metrics`] extracts efficiency, added noise, bandwidth and
//! quantum capacity. [`oracle`] integrates the equations of motion in the
//! time domain as an independent check, and [`catalog`] holds published
//! device figures.

pub mod catalog;
pub mod cli;
pub mod config;
pub mod error;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod physics;
pub mod scattering;

pub use error::{Error, Result};
pub use model::{
    build_chain, build_one_stage, build_zero_stage, ChainModel, CouplingSpec, ModeLabel, ModeSpec, NoiseEnvironment,
    PumpSpec, Topology,
};
pub use scattering::{scattering_matrix, ScatteringMatrix};
