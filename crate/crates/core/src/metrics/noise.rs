use crate::error::Result;
use crate::model::{ChainModel, NoiseEnvironment, PortClass};
use crate::physics::bose_occupation;
use crate::scattering::scattering_matrix;

/// Added noise referred to the input, in quanta, for both directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AddedNoise {
    pub eta: f64,
    /// Noise quanta leaving the optical port.
    pub n_out_o: f64,
    /// Noise quanta leaving the microwave port.
    pub n_out_e: f64,
    /// `n_out_o / eta` (microwave to optical).
    pub n_add_o: f64,
    /// `n_out_e / eta` (optical to microwave).
    pub n_add_e: f64,
}

/// Thermal occupation of every input port at signal frequency `omega`.
///
/// Itinerant microwave-side ports see the waveguide at `omega`; bath ports
/// see their mode's bath at the mode frequency. Optical ports use the
/// optical bath temperature unless the environment forces them to zero.
pub fn port_occupations(model: &ChainModel, omega: f64, env: &NoiseEnvironment) -> Result<Vec<f64>> {
    model
        .ports()
        .iter()
        .map(|port| {
            let mode = model.mode(port.mode);
            if model.is_rotating_frame(port.mode) {
                if env.optical_occupancy_forced_zero {
                    Ok(0.0)
                } else {
                    bose_occupation(mode.frequency, mode.bath_temperature)
                }
            } else {
                match port.class {
                    PortClass::Itinerant => bose_occupation(omega, env.waveguide_temperature),
                    PortClass::Bath => bose_occupation(mode.frequency, mode.bath_temperature),
                }
            }
        })
        .collect()
}

/// Added noise in both directions from the full scattering matrix:
/// `N_out = sum_j |S_out,j|^2 N_j`, divided by the efficiency.
pub fn added_noise(model: &ChainModel, omega: f64, env: &NoiseEnvironment) -> Result<AddedNoise> {
    let s = scattering_matrix(model, omega)?;
    let occ = port_occupations(model, omega, env)?;
    let (inp, out) = (model.input_port(), model.output_port());
    let collected = |row: usize| -> f64 { occ.iter().enumerate().map(|(j, n)| s.power(row, j) * n).sum() };
    let eta = s.power(out, inp);
    let n_out_o = collected(out);
    let n_out_e = collected(inp);
    let refer = |n: f64| if eta > 0.0 { n / eta } else { f64::INFINITY };
    Ok(AddedNoise {
        eta,
        n_out_o,
        n_out_e,
        n_add_o: refer(n_out_o),
        n_add_e: refer(n_out_e),
    })
}

/// On-resonance `|S_ij|^2` of a one-stage chain in closed form, ports
/// numbered 1 = microwave waveguide, 2 = microwave bath, 3 = intermediate
/// bath, 4 = optical fiber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnResonanceElements {
    pub s41: f64,
    pub s42: f64,
    pub s43: f64,
    pub s11: f64,
    pub s12: f64,
    pub s13: f64,
}

pub fn onres_matrix_elements(c_em: f64, c_om: f64, eta_e: f64, eta_o: f64) -> OnResonanceElements {
    let d = 1.0 + c_em + c_om;
    let d2 = d * d;
    OnResonanceElements {
        s41: eta_e * eta_o * 4.0 * c_em * c_om / d2,
        s42: eta_o * (1.0 - eta_e) * 4.0 * c_em * c_om / d2,
        s43: eta_o * 4.0 * c_om / d2,
        s11: (1.0 - 2.0 * eta_e * (1.0 + c_om) / d).powi(2),
        s12: eta_e * (1.0 - eta_e) * 4.0 * (1.0 + c_om).powi(2) / d2,
        s13: eta_e * 4.0 * c_em / d2,
    }
}

/// Zero-stage analogue of [`OnResonanceElements`]: 1 = microwave waveguide,
/// 2 = microwave bath, 3 = optical fiber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroStageElements {
    pub s31: f64,
    pub s32: f64,
    pub s11: f64,
    pub s12: f64,
}

pub fn onres_matrix_elements_zero_stage(c_eo: f64, eta_e: f64, eta_o: f64) -> ZeroStageElements {
    let d = 1.0 + c_eo;
    let d2 = d * d;
    ZeroStageElements {
        s31: eta_e * eta_o * 4.0 * c_eo / d2,
        s32: (1.0 - eta_e) * eta_o * 4.0 * c_eo / d2,
        s11: (1.0 - 2.0 * eta_e / d).powi(2),
        s12: eta_e * (1.0 - eta_e) * 4.0 / d2,
    }
}

/// Closed-form on-resonance added noise `(N_add,o, N_add,e)` of a one-stage
/// chain with a cold optical side.
pub fn added_noise_closed_form_one_stage(
    c_em: f64,
    c_om: f64,
    eta_e: f64,
    eta_o: f64,
    n_wg: f64,
    n_e_th: f64,
    n_m_th: f64,
) -> (f64, f64) {
    let to_optical = n_wg + (1.0 / eta_e - 1.0) * n_e_th + n_m_th / (eta_e * c_em);
    let reflected = (c_em + (1.0 - 2.0 * eta_e) * (1.0 + c_om)).powi(2);
    let to_microwave = reflected / (4.0 * c_om * c_em * eta_o * eta_e) * n_wg
        + (1.0 - eta_e) / eta_o * (1.0 + c_om).powi(2) / (c_om * c_em) * n_e_th
        + n_m_th / (eta_o * c_om);
    (to_optical, to_microwave)
}

/// Closed-form on-resonance added noise `(N_add,o, N_add,e)` of a zero-stage
/// chain with a cold optical side.
pub fn added_noise_closed_form_zero_stage(c_eo: f64, eta_e: f64, eta_o: f64, n_wg: f64, n_e_th: f64) -> (f64, f64) {
    let to_optical = n_wg + (1.0 / eta_e - 1.0) * n_e_th;
    let to_microwave = (1.0 - 2.0 * eta_e + c_eo).powi(2) / (4.0 * c_eo * eta_e * eta_o) * n_wg
        + (1.0 - eta_e) / (eta_o * c_eo) * n_e_th;
    (to_optical, to_microwave)
}
