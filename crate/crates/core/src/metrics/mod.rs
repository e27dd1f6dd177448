//! Figures of merit of a transducer chain: susceptibilities and
//! cooperativities, conversion efficiency (numeric and closed form), added
//! noise, bandwidth, quantum capacity and the efficiency/noise trade-off.

mod bandwidth;
mod capacity;
mod noise;
mod sweep;

use num_complex::Complex64;

pub use bandwidth::{bandwidth_analytic, bandwidth_numeric, find_peak, NumericBandwidth, Peak};
pub use capacity::{
    continuous_capacity, continuous_capacity_profile, q1, CapacityEstimate, FrequencyGrid, CAPACITY_TOLERANCE,
};
pub use noise::{
    added_noise, added_noise_closed_form_one_stage, added_noise_closed_form_zero_stage, onres_matrix_elements,
    onres_matrix_elements_zero_stage, port_occupations, AddedNoise, OnResonanceElements, ZeroStageElements,
};
pub use sweep::{sweep_tradeoff, write_sweep_csv, CooperativityRange, Spacing, SweepPoint, TradeoffGrid, SWEEP_HEADER};

use crate::error::{Error, Result};
use crate::model::{ChainModel, ModeLabel, NoiseEnvironment, Topology};
use crate::physics::HBAR;
use crate::scattering::{assemble, scattering_from_matrices, scattering_matrix};

/// Susceptibilities, cooperativities and port ratios at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonantResponse {
    pub omega: f64,
    /// `chi_mu = [-i (w - w_mu) + kappa_mu / 2]^-1` per mode, chain order.
    /// The optical mode uses `w + delta` in place of `w - w_mu`.
    pub susceptibilities: Vec<Complex64>,
    /// `4 g_i^2 / (kappa_i kappa_{i+1})` for every link.
    pub link_cooperativities: Vec<f64>,
    /// `2 g^2 Re chi_e`, one-stage chains only.
    pub gamma_em: Option<f64>,
    /// `2 zeta^2 Re chi_o`, one-stage chains only.
    pub gamma_om: Option<f64>,
    /// External ratio of the microwave-end mode.
    pub eta_e: f64,
    /// External ratio of the optical-end mode.
    pub eta_o: f64,
    /// External ratio of an interior intermediate mode with its own
    /// itinerant port.
    pub eta_m: Option<f64>,
    topology: Topology,
}

impl ResonantResponse {
    pub fn c_em(&self) -> Option<f64> {
        (self.topology == Topology::OneStage).then(|| self.link_cooperativities[0])
    }

    pub fn c_om(&self) -> Option<f64> {
        (self.topology == Topology::OneStage).then(|| self.link_cooperativities[1])
    }

    pub fn c_eo(&self) -> Option<f64> {
        (self.topology == Topology::ZeroStage).then(|| self.link_cooperativities[0])
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }
}

/// `4 g^2 / (kappa_a kappa_b)`.
pub fn cooperativity(coupling: f64, kappa_a: f64, kappa_b: f64) -> f64 {
    4.0 * coupling * coupling / (kappa_a * kappa_b)
}

/// Coupling that yields cooperativity `c` between modes with total losses
/// `kappa_a`, `kappa_b`.
pub fn coupling_for_cooperativity(c: f64, kappa_a: f64, kappa_b: f64) -> f64 {
    (0.25 * c * kappa_a * kappa_b).sqrt()
}

/// Inverse susceptibility of mode `i` at signal frequency `omega`.
pub(crate) fn inverse_susceptibility(model: &ChainModel, i: usize, omega: f64) -> Complex64 {
    let mode = model.mode(i);
    let center = if model.is_rotating_frame(i) {
        -model.pump().detuning
    } else {
        mode.frequency
    };
    Complex64::new(0.5 * mode.total_loss(), -(omega - center))
}

pub fn susceptibilities(model: &ChainModel, omega: f64) -> ResonantResponse {
    let n = model.mode_count();
    let chi: Vec<Complex64> = (0..n).map(|i| inverse_susceptibility(model, i, omega).inv()).collect();
    let link_cooperativities = model
        .links()
        .iter()
        .enumerate()
        .map(|(i, &g)| cooperativity(g, model.mode(i).total_loss(), model.mode(i + 1).total_loss()))
        .collect();
    let topology = model.topology();
    let (gamma_em, gamma_om) = if topology == Topology::OneStage {
        let (g, zeta) = (model.links()[0], model.links()[1]);
        (Some(2.0 * g * g * chi[0].re), Some(2.0 * zeta * zeta * chi[2].re))
    } else {
        (None, None)
    };
    let eta_m = model
        .modes()
        .iter()
        .enumerate()
        .skip(1)
        .take(n.saturating_sub(2))
        .find(|(_, m)| m.label == ModeLabel::Intermediate && m.external_coupling > 0.0)
        .map(|(_, m)| m.port_ratio());
    ResonantResponse {
        omega,
        susceptibilities: chi,
        link_cooperativities,
        gamma_em,
        gamma_om,
        eta_e: model.mode(0).port_ratio(),
        eta_o: model.mode(n - 1).port_ratio(),
        eta_m,
        topology,
    }
}

/// Microwave-to-optical efficiency `|S_out,in(w)|^2` from the scattering
/// matrix.
pub fn efficiency(model: &ChainModel, omega: f64) -> Result<f64> {
    let s = scattering_matrix(model, omega)?;
    Ok(s.power(model.output_port(), model.input_port()))
}

/// Efficiency evaluated from the mode susceptibilities without a matrix
/// solve.
///
/// One stage: `|g zeta sqrt(k_ee k_oe) / (chi_e^-1 chi_o^-1 chi_m^-1 + g^2 chi_o^-1 + zeta^2 chi_e^-1)|^2`;
/// zero stage: `|G sqrt(k_ee k_oe) / (chi_e^-1 chi_o^-1 + G^2)|^2`. Longer
/// chains use the continuant of the tridiagonal system, which reduces to the
/// same expressions.
pub fn efficiency_from_susceptibilities(model: &ChainModel, omega: f64) -> f64 {
    let n = model.mode_count();
    let inv: Vec<Complex64> = (0..n).map(|i| inverse_susceptibility(model, i, omega)).collect();
    let links = model.links();
    let port_gain = model.mode(0).external_coupling * model.mode(n - 1).external_coupling;
    match model.topology() {
        Topology::ZeroStage => {
            let g = links[0];
            let den = inv[0] * inv[1] + g * g;
            port_gain * g * g / den.norm_sqr()
        }
        Topology::OneStage => {
            let (g, zeta) = (links[0], links[1]);
            let den = inv[0] * inv[2] * inv[1] + g * g * inv[2] + zeta * zeta * inv[0];
            port_gain * (g * zeta).powi(2) / den.norm_sqr()
        }
        Topology::MultiStage(_) => {
            // det of tridiagonal matrix with off-diagonals i g_k: D_k = d_k D_{k-1} + g_{k-1}^2 D_{k-2}
            let mut prev = Complex64::new(1.0, 0.0);
            let mut det = inv[0];
            for k in 1..n {
                let next = inv[k] * det + links[k - 1] * links[k - 1] * prev;
                prev = det;
                det = next;
            }
            let gains: f64 = links.iter().map(|g| g * g).product();
            port_gain * gains / det.norm_sqr()
        }
    }
}

/// `eta_e eta_o 4 C_em C_om / (1 + C_em + C_om)^2`.
pub fn efficiency_closed_form_one_stage(c_em: f64, c_om: f64, eta_e: f64, eta_o: f64) -> f64 {
    let d = 1.0 + c_em + c_om;
    eta_e * eta_o * 4.0 * c_em * c_om / (d * d)
}

/// `eta_e eta_o 4 C_eo / (1 + C_eo)^2`.
pub fn efficiency_closed_form_zero_stage(c_eo: f64, eta_e: f64, eta_o: f64) -> f64 {
    let d = 1.0 + c_eo;
    eta_e * eta_o * 4.0 * c_eo / (d * d)
}

/// Cavity on one side only: `eta_mu eta_m 4 C_mum / (1 + C_mum)^2`.
///
/// `c_mum` is the quadratic cooperativity `4 G^2 / (kappa_mu kappa_m)`, see
/// [`cooperativity`]. `eta_m` is not clamped to `[0, 1]`.
pub fn efficiency_closed_form_half_cavity(c_mum: f64, eta_mu: f64, eta_m: f64) -> f64 {
    efficiency_closed_form_zero_stage(c_mum, eta_mu, eta_m)
}

/// Internal efficiency `eta / (eta_e eta_o)`.
pub fn internal_efficiency(eta: f64, eta_e: f64, eta_o: f64) -> Result<f64> {
    if !(eta_e > 0.0 && eta_o > 0.0) {
        return Err(Error::Domain(format!(
            "port ratios must be positive for the internal efficiency (eta_e = {eta_e}, eta_o = {eta_o})"
        )));
    }
    Ok(eta / (eta_e * eta_o))
}

/// Photon-flux ratio used for Rydberg-atom transducers:
/// `(P_L / hbar w_L) / (I_M S_M / hbar w_M)`.
pub fn rydberg_efficiency(
    optical_power: f64,
    optical_omega: f64,
    microwave_intensity: f64,
    cross_section: f64,
    microwave_omega: f64,
) -> Result<f64> {
    for (name, v) in [
        ("optical_power", optical_power),
        ("optical_omega", optical_omega),
        ("microwave_intensity", microwave_intensity),
        ("cross_section", cross_section),
        ("microwave_omega", microwave_omega),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!("{name} must be positive, got {v}")));
        }
    }
    let optical_flux = optical_power / (HBAR * optical_omega);
    let microwave_flux = microwave_intensity * cross_section / (HBAR * microwave_omega);
    Ok(optical_flux / microwave_flux)
}

/// Everything [`evaluate`] reports for one model and environment.
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceReport {
    pub eta_peak: f64,
    pub omega_peak: f64,
    /// `(omega, eta)` over the capacity window.
    pub eta_samples: Vec<(f64, f64)>,
    pub eta_internal: f64,
    pub n_add_o: f64,
    pub n_add_e: f64,
    pub bandwidth_analytic: f64,
    /// `None` when the efficiency has no half-maximum crossing.
    pub bandwidth_numeric: Option<f64>,
    pub q1_peak: f64,
    pub capacity: CapacityEstimate,
    pub response: ResonantResponse,
}

/// Number of `(omega, eta)` samples stored in a [`PerformanceReport`].
pub const REPORT_SAMPLES: usize = 101;

/// Default frequency window for capacity integration: the peak plus or minus
/// ten analytic bandwidths.
pub fn default_window(model: &ChainModel) -> Result<FrequencyGrid> {
    let peak = find_peak(model)?;
    let width = bandwidth_analytic(model);
    FrequencyGrid::new(peak.omega - 10.0 * width, peak.omega + 10.0 * width, 401)
}

pub fn evaluate(model: &ChainModel, env: &NoiseEnvironment) -> Result<PerformanceReport> {
    evaluate_with_window(model, env, None)
}

pub fn evaluate_with_window(
    model: &ChainModel,
    env: &NoiseEnvironment,
    window: Option<FrequencyGrid>,
) -> Result<PerformanceReport> {
    let peak = find_peak(model)?;
    let response = susceptibilities(model, model.center_frequency());
    let eta_internal = internal_efficiency(peak.eta, response.eta_e, response.eta_o)?;
    let noise = added_noise(model, peak.omega, env)?;
    let bandwidth_analytic = bandwidth_analytic(model);
    let bandwidth_numeric = match bandwidth_numeric(model) {
        Ok(b) => Some(b.fwhm),
        Err(Error::Window(_)) => None,
        Err(e) => return Err(e),
    };
    let window = match window {
        Some(w) => w,
        None => default_window(model)?,
    };
    let capacity = continuous_capacity(model, &window)?;
    let mats = assemble(model);
    let (inp, out) = (model.input_port(), model.output_port());
    let eta_samples = window
        .resampled(REPORT_SAMPLES)
        .into_iter()
        .map(|w| scattering_from_matrices(&mats, w).map(|s| (w, s.power(out, inp))))
        .collect::<Result<Vec<_>>>()?;
    Ok(PerformanceReport {
        eta_peak: peak.eta,
        omega_peak: peak.omega,
        eta_samples,
        eta_internal,
        n_add_o: noise.n_add_o,
        n_add_e: noise.n_add_e,
        bandwidth_analytic,
        bandwidth_numeric,
        q1_peak: q1(peak.eta.min(1.0))?,
        capacity,
        response,
    })
}
