//! Time-domain check of the scattering matrix.
//!
//! The equations of motion are integrated with fourth-order Runge-Kutta
//! while one input port is driven at a single frequency. Once transients have
//! died out, each output is projected onto the drive frequency over whole
//! periods, which gives one column of `S(w)` without any linear solve.
//!
//! Integration runs in a frame rotating at `w - beat`, where `beat` is the
//! slowest mode decay rate. The drive then oscillates at `beat`, which keeps
//! the period short without making the projection trivial.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ChainModel;
use crate::scattering::{assemble, scattering_from_matrices};

/// Largest ratio between the fastest and the slowest rate in the model that
/// fixed-step integration accepts.
pub const MAX_STIFFNESS: f64 = 1e4;

/// Relative change of the per-period projection at which the response is
/// considered stationary.
pub const STATIONARY_TOLERANCE: f64 = 1e-10;

const STEPS_PER_FASTEST_RATE: f64 = 40.0;
const MIN_STEPS_PER_PERIOD: usize = 64;
const SETTLE_DECAY_TIMES: f64 = 10.0;
const AVERAGED_PERIODS: usize = 5;
const MAX_PERIODS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSpec {
    pub port: usize,
    /// Laboratory signal frequency [rad/s].
    pub omega: f64,
    pub amplitude: Complex64,
}

impl DriveSpec {
    pub fn unit(port: usize, omega: f64) -> Self {
        DriveSpec {
            port,
            omega,
            amplitude: Complex64::new(1.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResponse {
    pub drive: DriveSpec,
    /// Steady-state output amplitude at the drive frequency, per port.
    pub outputs: Vec<Complex64>,
    pub steps: u64,
    pub periods: usize,
    /// `max(kappa, 2 g, |detuning|) / min(kappa)` of the model.
    pub stiffness: f64,
}

impl OracleResponse {
    /// Column `drive.port` of the scattering matrix.
    pub fn column(&self) -> Vec<Complex64> {
        self.outputs.iter().map(|a| a / self.drive.amplitude).collect()
    }
}

/// Stiffness ratio of the integration at signal frequency `omega`.
pub fn stiffness(model: &ChainModel, omega: f64) -> f64 {
    let kappas: Vec<f64> = model.modes().iter().map(|m| m.total_loss()).collect();
    let slowest = kappas.iter().copied().fold(f64::INFINITY, f64::min);
    let detuning = (0..model.mode_count())
        .map(|i| {
            let f = if model.is_rotating_frame(i) {
                -model.pump().detuning
            } else {
                model.mode(i).frequency
            };
            (f - omega).abs()
        })
        .fold(0.0, f64::max);
    let fastest = kappas
        .iter()
        .copied()
        .chain(model.links().iter().map(|g| 2.0 * g))
        .chain(std::iter::once(detuning))
        .fold(0.0, f64::max);
    fastest / slowest
}

struct System {
    n: usize,
    /// Row-major `A - i (w - beat) I`.
    m: Vec<Complex64>,
    /// Column of `B` for the driven port, times the drive amplitude.
    drive: Vec<Complex64>,
    beat: f64,
}

impl System {
    /// `dc/dt = -M c - b exp(-i beat t)`.
    fn rate(&self, tau: f64, c: &[Complex64], out: &mut [Complex64]) {
        let phase = Complex64::cis(-self.beat * tau);
        for (i, (slot, b)) in out.iter_mut().zip(&self.drive).enumerate() {
            let row = &self.m[i * self.n..(i + 1) * self.n];
            let acc: Complex64 = row.iter().zip(c).map(|(m, ci)| m * ci).sum();
            *slot = -(acc + b * phase);
        }
    }
}

/// Drives one port of `model` and returns the stationary output amplitudes.
///
/// Fails with [`Error::Stiff`] when the rates span more than
/// [`MAX_STIFFNESS`] and with [`Error::Convergence`] when the projection does
/// not settle within the period budget.
pub fn steady_state_response(model: &ChainModel, drive: &DriveSpec) -> Result<OracleResponse> {
    if drive.port >= model.port_count() {
        return Err(Error::Domain(format!(
            "drive port {} out of range for {} ports",
            drive.port,
            model.port_count()
        )));
    }
    if !drive.omega.is_finite() || drive.amplitude.norm() == 0.0 {
        return Err(Error::Domain(
            "drive needs a finite frequency and nonzero amplitude".into(),
        ));
    }
    let ratio = stiffness(model, drive.omega);
    if !ratio.is_finite() || ratio > MAX_STIFFNESS {
        return Err(Error::Stiff(format!(
            "rate ratio {ratio:.3e} exceeds {MAX_STIFFNESS:.0e}; use the frequency-domain solver"
        )));
    }

    let mats = assemble(model);
    let n = mats.mode_count();
    let slowest = 0.5
        * model
            .modes()
            .iter()
            .map(|m| m.total_loss())
            .fold(f64::INFINITY, f64::min);
    let beat = slowest;
    let frame = drive.omega - beat;
    let mut m: Vec<Complex64> = mats.a.iter().copied().collect();
    for i in 0..n {
        m[i * n + i] -= Complex64::new(0.0, frame);
    }
    let fastest = m.iter().map(|z| z.norm()).fold(beat, f64::max);
    let period = TAU / beat;
    let steps = ((period * fastest * STEPS_PER_FASTEST_RATE).ceil() as usize).max(MIN_STEPS_PER_PERIOD);
    let h = period / steps as f64;
    let system = System {
        n,
        m,
        drive: (0..n).map(|i| drive.amplitude * mats.b[[i, drive.port]]).collect(),
        beat,
    };
    let couplings: Vec<Vec<f64>> = (0..mats.port_count())
        .map(|j| (0..n).map(|i| mats.b[[i, j]]).collect())
        .collect();

    let mut c = vec![Complex64::new(0.0, 0.0); n];
    let mut k = [
        vec![Complex64::default(); n],
        vec![Complex64::default(); n],
        vec![Complex64::default(); n],
        vec![Complex64::default(); n],
    ];
    let mut tmp = vec![Complex64::default(); n];
    let mut total_steps = 0u64;
    let mut step_period = |c: &mut Vec<Complex64>, projections: Option<&mut Vec<Complex64>>| {
        let mut proj = projections;
        for s in 0..steps {
            let tau = s as f64 * h;
            if let Some(p) = proj.as_deref_mut() {
                let back = Complex64::cis(beat * tau);
                for (j, col) in couplings.iter().enumerate() {
                    let mut out: Complex64 = col.iter().zip(c.iter()).map(|(b, ci)| ci * b).sum();
                    if j == drive.port {
                        out += drive.amplitude * Complex64::cis(-beat * tau);
                    }
                    p[j] += out * back;
                }
            }
            system.rate(tau, c, &mut k[0]);
            for i in 0..n {
                tmp[i] = c[i] + 0.5 * h * k[0][i];
            }
            system.rate(tau + 0.5 * h, &tmp, &mut k[1]);
            for i in 0..n {
                tmp[i] = c[i] + 0.5 * h * k[1][i];
            }
            system.rate(tau + 0.5 * h, &tmp, &mut k[2]);
            for i in 0..n {
                tmp[i] = c[i] + h * k[2][i];
            }
            system.rate(tau + h, &tmp, &mut k[3]);
            for i in 0..n {
                c[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
            }
        }
        total_steps += steps as u64;
        if let Some(p) = proj {
            for v in p.iter_mut() {
                *v /= steps as f64;
            }
        }
    };

    let settle_periods = ((SETTLE_DECAY_TIMES / slowest) / period).ceil() as usize;
    for _ in 0..settle_periods {
        step_period(&mut c, None);
    }
    let ports = mats.port_count();
    let mut history: Vec<Vec<Complex64>> = Vec::new();
    for periods in 1..=MAX_PERIODS {
        let mut p = vec![Complex64::default(); ports];
        step_period(&mut c, Some(&mut p));
        let settled = history.last().is_some_and(|prev: &Vec<Complex64>| {
            let scale = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let change = p.iter().zip(prev).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            change <= STATIONARY_TOLERANCE * scale
        });
        history.push(p);
        if settled && history.len() >= AVERAGED_PERIODS {
            let tail = &history[history.len() - AVERAGED_PERIODS..];
            let outputs = (0..ports)
                .map(|j| tail.iter().map(|p| p[j]).sum::<Complex64>() / AVERAGED_PERIODS as f64)
                .collect();
            return Ok(OracleResponse {
                drive: *drive,
                outputs,
                steps: total_steps,
                periods: settle_periods + periods,
                stiffness: ratio,
            });
        }
    }
    Err(Error::Convergence(format!(
        "projection still changing after {} periods",
        settle_periods + MAX_PERIODS
    )))
}

/// Oracle column next to the corresponding column of the scattering matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub oracle: Vec<Complex64>,
    pub scattering: Vec<Complex64>,
    /// `max_j |S_oracle - S|`.
    pub max_abs_error: f64,
    /// `|S_out,in|^2` from the two routes when the drive is on the input
    /// port.
    pub eta_oracle: f64,
    pub eta_scattering: f64,
}

impl OracleComparison {
    /// `|eta_oracle - eta_scattering| / eta_scattering`.
    pub fn eta_relative_error(&self) -> f64 {
        if self.eta_scattering == 0.0 {
            self.eta_oracle.abs()
        } else {
            (self.eta_oracle - self.eta_scattering).abs() / self.eta_scattering
        }
    }
}

pub fn compare_with_scattering(model: &ChainModel, drive: &DriveSpec) -> Result<OracleComparison> {
    let response = steady_state_response(model, drive)?;
    let s = scattering_from_matrices(&assemble(model), drive.omega)?;
    let oracle = response.column();
    let scattering: Vec<Complex64> = (0..s.size()).map(|j| s.element(j, drive.port)).collect();
    let max_abs_error = oracle
        .iter()
        .zip(&scattering)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let out = model.output_port();
    Ok(OracleComparison {
        eta_oracle: oracle[out].norm_sqr(),
        eta_scattering: scattering[out].norm_sqr(),
        oracle,
        scattering,
        max_abs_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_one_stage, build_zero_stage, ModeSpec, PumpSpec};

    const W0: f64 = 50.0;

    fn one_stage(g: f64, zeta: f64) -> ChainModel {
        build_one_stage(
            ModeSpec::microwave(W0, 0.2, 1.0, 0.0),
            ModeSpec::intermediate(W0 + 0.1, 0.3, 0.0),
            ModeSpec::optical(1e4, 0.1, 2.0, 0.0),
            g,
            zeta,
            PumpSpec::resonant_with(W0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn single_mode_reflection() {
        let model = build_zero_stage(
            ModeSpec::microwave(W0, 0.5, 1.0, 0.0),
            ModeSpec::optical(1e4, 0.5, 1.0, 0.0),
            0.0,
            PumpSpec::resonant_with(W0).unwrap(),
        )
        .unwrap();
        let cmp = compare_with_scattering(&model, &DriveSpec::unit(0, W0 + 0.3)).unwrap();
        assert!(cmp.max_abs_error < 1e-6, "{}", cmp.max_abs_error);
        assert_eq!(cmp.eta_scattering, 0.0);
        assert!(cmp.eta_oracle < 1e-20);
    }

    #[test]
    fn one_stage_column_matches() {
        let model = one_stage(0.4, 0.6);
        for dw in [-0.5, 0.0, 0.2] {
            let cmp = compare_with_scattering(&model, &DriveSpec::unit(0, W0 + dw)).unwrap();
            assert!(cmp.max_abs_error < 1e-6);
            assert!(cmp.eta_relative_error() < 1e-6, "{}", cmp.eta_relative_error());
        }
    }

    #[test]
    fn drive_amplitude_and_other_ports() {
        let model = one_stage(0.4, 0.6);
        let drive = DriveSpec {
            port: 3,
            omega: W0 + 0.1,
            amplitude: Complex64::new(0.0, -2.5),
        };
        let cmp = compare_with_scattering(&model, &drive).unwrap();
        assert!(cmp.max_abs_error < 1e-6);
    }

    #[test]
    fn stiff_and_invalid_models_are_rejected() {
        let stiff = build_one_stage(
            ModeSpec::microwave(W0, 0.0, 1.0, 0.0),
            ModeSpec::intermediate(W0, 1e-5, 0.0),
            ModeSpec::optical(1e4, 0.0, 1.0, 0.0),
            0.1,
            0.1,
            PumpSpec::resonant_with(W0).unwrap(),
        )
        .unwrap();
        assert!(stiffness(&stiff, W0) > MAX_STIFFNESS);
        assert!(matches!(
            steady_state_response(&stiff, &DriveSpec::unit(0, W0)),
            Err(Error::Stiff(_))
        ));
        let model = one_stage(0.1, 0.1);
        assert!(matches!(
            steady_state_response(&model, &DriveSpec::unit(9, W0)),
            Err(Error::Domain(_))
        ));
    }
}
