//! Scalar physics: thermal occupation, zero-point motion, intracavity photon
//! number and the microscopic coupling rates of the common transducer
//! platforms.
//!
//! Every frequency and rate is an angular frequency in rad/s.

use crate::error::{Error, Result};

/// Fundamental constants, CODATA 2018 recommended values (SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant [J s].
    pub hbar: f64,
    /// Boltzmann constant [J/K].
    pub k_b: f64,
    /// Speed of light in vacuum [m/s].
    pub c: f64,
    /// Vacuum permittivity [F/m].
    pub epsilon_0: f64,
    /// Vacuum permeability [H/m].
    pub mu_0: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    k_b: 1.380_649e-23,
    c: 299_792_458.0,
    epsilon_0: 8.854_187_812_8e-12,
    mu_0: 1.256_637_062_12e-6,
};

pub const HBAR: f64 = CODATA_2018.hbar;
pub const K_B: f64 = CODATA_2018.k_b;
pub const C_LIGHT: f64 = CODATA_2018.c;
pub const EPSILON_0: f64 = CODATA_2018.epsilon_0;
pub const MU_0: f64 = CODATA_2018.mu_0;

fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

fn require_nonnegative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be nonnegative and finite, got {value}"
        )))
    }
}

/// Mean thermal occupation `1 / (exp(hbar w / k_B T) - 1)` of a bosonic mode.
///
/// Exactly zero at `T = 0`. `exp_m1` keeps the high-temperature limit free of
/// cancellation.
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    require_positive("omega", omega)?;
    require_nonnegative("temperature", temperature)?;
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = HBAR * omega / (K_B * temperature);
    Ok(1.0 / x.exp_m1())
}

/// Mechanical zero-point amplitude `sqrt(hbar / (2 m_eff w_m))` in metres.
pub fn zero_point_amplitude(effective_mass: f64, omega_m: f64) -> Result<f64> {
    require_positive("effective_mass", effective_mass)?;
    require_positive("omega_m", omega_m)?;
    Ok((HBAR / (2.0 * effective_mass * omega_m)).sqrt())
}

/// Mean intracavity photon number `|E|^2 / (dw^2 + kappa^2 / 4)` for a drive
/// rate `drive` detuned by `detuning` from a cavity of total loss `kappa`.
pub fn intracavity_photon_number(drive: f64, detuning: f64, kappa: f64) -> Result<f64> {
    require_positive("kappa", kappa)?;
    if !drive.is_finite() || !detuning.is_finite() {
        return Err(Error::Domain("drive and detuning must be finite".into()));
    }
    Ok(drive * drive / (detuning * detuning + 0.25 * kappa * kappa))
}

/// Pump-enhanced coupling `g sqrt(n)`.
pub fn linearized_coupling(single_photon: f64, photons: f64) -> Result<f64> {
    require_nonnegative("photons", photons)?;
    if !single_photon.is_finite() {
        return Err(Error::Domain("single-photon coupling must be finite".into()));
    }
    Ok(single_photon * photons.sqrt())
}

/// Collective magnon--microwave coupling `g_0 sqrt(N_s)` with single-spin
/// rate `g_0 = (|gamma| / 2) sqrt(hbar w_e mu_0 / V_c)`.
///
/// `gyromagnetic_ratio` is in rad/(s T); its sign is ignored.
pub fn magnon_microwave_coupling(gyromagnetic_ratio: f64, omega_e: f64, mode_volume: f64, spins: f64) -> Result<f64> {
    require_positive("|gyromagnetic_ratio|", gyromagnetic_ratio.abs())?;
    require_positive("omega_e", omega_e)?;
    require_positive("mode_volume", mode_volume)?;
    require_positive("spins", spins)?;
    let single_spin = 0.5 * gyromagnetic_ratio.abs() * (HBAR * omega_e * MU_0 / mode_volume).sqrt();
    Ok(single_spin * spins.sqrt())
}

/// Faraday-effect magnon--optical coupling `g_MO,0 sqrt(n_cav)` with
/// `g_MO,0 = c theta_F / (4 sqrt(2 eps_r N_s))`.
///
/// `faraday_rotation` is the rotation angle per unit length [rad/m].
pub fn magnon_optical_coupling(
    faraday_rotation: f64,
    relative_permittivity: f64,
    spins: f64,
    cavity_photons: f64,
) -> Result<f64> {
    require_positive("faraday_rotation", faraday_rotation)?;
    require_positive("relative_permittivity", relative_permittivity)?;
    require_positive("spins", spins)?;
    require_nonnegative("cavity_photons", cavity_photons)?;
    let single = C_LIGHT * faraday_rotation / (4.0 * (2.0 * relative_permittivity * spins).sqrt());
    Ok(single * cavity_photons.sqrt())
}

/// Inputs of the triply-resonant electro-optic single-photon coupling.
///
/// Index `e` is the microwave mode, `p` the optical pump, `o` the optical
/// signal. Permittivities are relative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectroOpticInputs {
    /// Electro-optic coefficient r [m/V].
    pub r_coefficient: f64,
    pub permittivity_e: f64,
    pub permittivity_p: f64,
    pub permittivity_o: f64,
    pub omega_e: f64,
    pub omega_p: f64,
    pub omega_o: f64,
    /// Effective mode volumes [m^3].
    pub volume_e: f64,
    pub volume_p: f64,
    pub volume_o: f64,
    /// Value of the triple-mode overlap integral `int d^3x psi_e psi_p psi_o^*`
    /// for dimensionless profiles, so it carries units of m^3.
    pub overlap: f64,
}

/// Single-photon electro-optic coupling
/// `r sqrt(eps_p eps_o / eps_e) sqrt(hbar w_e w_p w_o / (8 eps_0 V_e V_p V_o)) * overlap`.
pub fn electro_optic_single_photon(inputs: &ElectroOpticInputs) -> Result<f64> {
    let ElectroOpticInputs {
        r_coefficient,
        permittivity_e,
        permittivity_p,
        permittivity_o,
        omega_e,
        omega_p,
        omega_o,
        volume_e,
        volume_p,
        volume_o,
        overlap,
    } = *inputs;
    for (name, v) in [
        ("permittivity_e", permittivity_e),
        ("permittivity_p", permittivity_p),
        ("permittivity_o", permittivity_o),
        ("omega_e", omega_e),
        ("omega_p", omega_p),
        ("omega_o", omega_o),
        ("volume_e", volume_e),
        ("volume_p", volume_p),
        ("volume_o", volume_o),
    ] {
        require_positive(name, v)?;
    }
    if !r_coefficient.is_finite() || !overlap.is_finite() {
        return Err(Error::Domain("r coefficient and overlap must be finite".into()));
    }
    let permittivity = (permittivity_p * permittivity_o / permittivity_e).sqrt();
    let field = (HBAR * omega_e * omega_p * omega_o / (8.0 * EPSILON_0 * volume_e * volume_p * volume_o)).sqrt();
    Ok(r_coefficient * permittivity * field * overlap)
}

/// Homogeneous three-level ensemble driven in the large-detuning regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RareEarthInputs {
    pub ions: f64,
    /// Optical Rabi frequency of the control field.
    pub rabi: f64,
    /// Single-ion coupling to the microwave cavity.
    pub g_e: f64,
    /// Single-ion coupling to the optical cavity.
    pub g_o: f64,
    /// Microwave-transition detuning.
    pub detuning_2: f64,
    /// Optical-transition detuning.
    pub detuning_3: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveCoupling {
    pub value: f64,
    /// Violated large-detuning conditions (factor-10 margin). Empty when the
    /// adiabatic elimination is justified.
    pub warnings: Vec<String>,
}

const ADIABATIC_MARGIN: f64 = 10.0;

/// Effective microwave--optical coupling `N Omega g_e g_o / (delta_3 delta_2)`
/// after adiabatic elimination of the excited states.
///
/// Precondition violations are reported as warnings, not errors.
pub fn rei_collective_coupling(inputs: &RareEarthInputs) -> Result<CollectiveCoupling> {
    let RareEarthInputs {
        ions,
        rabi,
        g_e,
        g_o,
        detuning_2,
        detuning_3,
    } = *inputs;
    require_nonnegative("ions", ions)?;
    if detuning_2 == 0.0 || detuning_3 == 0.0 {
        return Err(Error::Domain("detunings must be nonzero".into()));
    }
    let mut warnings = Vec::new();
    if detuning_3.abs() < ADIABATIC_MARGIN * g_o.abs() {
        warnings.push(format!(
            "|delta_3| = {:.3e} is not >> |g_o| = {:.3e}",
            detuning_3.abs(),
            g_o.abs()
        ));
    }
    if detuning_2.abs() < ADIABATIC_MARGIN * g_e.abs() {
        warnings.push(format!(
            "|delta_2| = {:.3e} is not >> |g_e| = {:.3e}",
            detuning_2.abs(),
            g_e.abs()
        ));
    }
    if (detuning_2 * detuning_3).abs() < ADIABATIC_MARGIN * rabi * rabi {
        warnings.push(format!(
            "|delta_2 delta_3| = {:.3e} is not >> |Omega|^2 = {:.3e}",
            (detuning_2 * detuning_3).abs(),
            rabi * rabi
        ));
    }
    Ok(CollectiveCoupling {
        value: ions * rabi * g_e * g_o / (detuning_3 * detuning_2),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{LN_2, PI};

    // Reference values below come from 40-digit mpmath evaluations with the
    // same CODATA 2018 constants.

    #[test]
    fn bose_edge_cases() {
        assert_eq!(bose_occupation(1.0e9, 0.0).unwrap(), 0.0);
        let omega = 2.0 * PI * 5.0e9;
        let t = HBAR * omega / (K_B * LN_2);
        assert_relative_eq!(bose_occupation(omega, t).unwrap(), 1.0, max_relative = 1e-13);
        assert!(bose_occupation(0.0, 1.0).is_err());
        assert!(bose_occupation(-1.0, 1.0).is_err());
        assert!(bose_occupation(1.0, -1.0).is_err());
    }

    #[test]
    fn bose_reference_values() {
        let n = bose_occupation(2.0 * PI * 7.0e9, 1.0).unwrap();
        assert_relative_eq!(n, 2.504_602_942_389_662, max_relative = 1e-12);
        let n = bose_occupation(2.0 * PI * 5.0e9, 0.01).unwrap();
        assert_relative_eq!(n, 3.789_449_170_164_157_5e-11, max_relative = 1e-10);
        let n = bose_occupation(2.0 * PI * 200.0e12, 300.0).unwrap();
        assert_relative_eq!(n, 1.272_823_293_773_882_5e-14, max_relative = 1e-10);
        assert!(n < 1e-13);
    }

    #[test]
    fn bose_classical_limit_and_monotone() {
        let omega = 2.0 * PI * 1.0e9;
        let t = 100.0 * HBAR * omega / K_B;
        let n = bose_occupation(omega, t).unwrap();
        let classical = K_B * t / (HBAR * omega);
        assert!((n - classical).abs() / classical < 0.01);
        let mut last = 0.0;
        for k in 1..200 {
            let n = bose_occupation(omega, k as f64 * 0.01).unwrap();
            assert!(n > last);
            last = n;
        }
    }

    #[test]
    fn bose_tiny_exponent_has_no_cancellation() {
        // x = 1e-9: n = 1/x - 1/2 + x/12
        let omega = 1.0e3;
        let t = HBAR * omega / (K_B * 1e-9);
        let n = bose_occupation(omega, t).unwrap();
        assert_relative_eq!(n, 1e9 - 0.5, max_relative = 1e-12);
    }

    #[test]
    fn zero_point_amplitude_scaling() {
        let x = zero_point_amplitude(1e-15, 2.0 * PI * 5e9).unwrap();
        assert_relative_eq!(x, 1.295_532_004_702_900_7e-15, max_relative = 1e-12);
        assert_relative_eq!(
            zero_point_amplitude(4e-15, 2.0 * PI * 5e9).unwrap(),
            x / 2.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            zero_point_amplitude(1e-15, 8.0 * PI * 5e9).unwrap(),
            x / 2.0,
            max_relative = 1e-14
        );
        assert!(zero_point_amplitude(0.0, 1.0).is_err());
    }

    #[test]
    fn photon_number_and_linearized_coupling() {
        let kappa = 2.0 * PI * 1e6;
        assert_relative_eq!(
            intracavity_photon_number(kappa / 2.0, 0.0, kappa).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert_eq!(intracavity_photon_number(0.0, 3.0, kappa).unwrap(), 0.0);
        let n = intracavity_photon_number(2.0 * PI * 1e7, -2.0 * PI * 5e9, 2.0 * PI * 1e9).unwrap();
        assert_relative_eq!(n, 3.960_396_039_603_96e-6, max_relative = 1e-12);
        assert!(intracavity_photon_number(1.0, 0.0, 0.0).is_err());

        let g = 2.0 * PI * 1e5;
        assert_eq!(linearized_coupling(g, 0.0).unwrap(), 0.0);
        assert_relative_eq!(linearized_coupling(g, 4.0).unwrap(), 2.0 * g);
        assert_relative_eq!(
            linearized_coupling(g, 2.5e5).unwrap(),
            314_159_265.358_979_3,
            max_relative = 1e-13
        );
        assert!(linearized_coupling(g, -1.0).is_err());
    }

    #[test]
    fn magnon_couplings() {
        let gamma = 2.0 * PI * 28e9;
        let omega_e = 2.0 * PI * 8.3e9;
        let g = magnon_microwave_coupling(gamma, omega_e, 1e-6, 1e18).unwrap();
        assert_relative_eq!(g, 231_249_017.869_738_5, max_relative = 1e-12);
        assert_relative_eq!(magnon_microwave_coupling(-gamma, omega_e, 1e-6, 1e18).unwrap(), g);
        assert_relative_eq!(
            magnon_microwave_coupling(gamma, omega_e, 1e-6, 4e18).unwrap(),
            2.0 * g,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            magnon_microwave_coupling(gamma, omega_e, 4e-6, 1e18).unwrap(),
            g / 2.0,
            max_relative = 1e-14
        );

        let gmo = magnon_optical_coupling(380.0, 4.84, 1e18, 1e6).unwrap();
        assert_relative_eq!(gmo, 9_153.909_818_198_367, max_relative = 1e-12);
        assert_relative_eq!(
            magnon_optical_coupling(760.0, 4.84, 1e18, 1e6).unwrap(),
            2.0 * gmo,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            magnon_optical_coupling(380.0, 4.84, 4e18, 1e6).unwrap(),
            gmo / 2.0,
            max_relative = 1e-14
        );
        assert!(magnon_optical_coupling(0.0, 4.84, 1e18, 1e6).is_err());
    }

    fn eo_inputs() -> ElectroOpticInputs {
        ElectroOpticInputs {
            r_coefficient: 30e-12,
            permittivity_e: 25.0,
            permittivity_p: 4.6,
            permittivity_o: 4.6,
            omega_e: 2.0 * PI * 8e9,
            omega_p: 2.0 * PI * 193e12,
            omega_o: 2.0 * PI * 193.008e12,
            volume_e: 1e-12,
            volume_p: 1e-15,
            volume_o: 1e-15,
            overlap: 0.5e-15,
        }
    }

    #[test]
    fn electro_optic_coupling() {
        let base = eo_inputs();
        let g = electro_optic_single_photon(&base).unwrap();
        assert_relative_eq!(g, 4_578.032_949_955_726, max_relative = 1e-12);
        let zero = ElectroOpticInputs { overlap: 0.0, ..base };
        assert_eq!(electro_optic_single_photon(&zero).unwrap(), 0.0);
        let doubled = ElectroOpticInputs {
            r_coefficient: 60e-12,
            ..base
        };
        assert_relative_eq!(
            electro_optic_single_photon(&doubled).unwrap(),
            2.0 * g,
            max_relative = 1e-14
        );
        let bad = ElectroOpticInputs { volume_o: 0.0, ..base };
        assert!(electro_optic_single_photon(&bad).is_err());
    }

    #[test]
    fn rare_earth_coupling() {
        let base = RareEarthInputs {
            ions: 1e12,
            rabi: 2.0 * PI * 1e6,
            g_e: 2.0 * PI * 10.0,
            g_o: 2.0 * PI * 100.0,
            detuning_2: 2.0 * PI * 1e8,
            detuning_3: 2.0 * PI * 1e9,
        };
        let c = rei_collective_coupling(&base).unwrap();
        assert!(c.warnings.is_empty());
        assert_relative_eq!(c.value, 62_831.853_071_795_86, max_relative = 1e-12);
        let doubled = rei_collective_coupling(&RareEarthInputs { ions: 2e12, ..base }).unwrap();
        assert_relative_eq!(doubled.value, 2.0 * c.value, max_relative = 1e-14);
        let flipped = rei_collective_coupling(&RareEarthInputs {
            detuning_2: -base.detuning_2,
            ..base
        })
        .unwrap();
        assert_relative_eq!(flipped.value, -c.value, max_relative = 1e-14);
        let near = rei_collective_coupling(&RareEarthInputs {
            detuning_3: 2.0 * PI * 200.0,
            ..base
        })
        .unwrap();
        assert!(!near.warnings.is_empty());
    }
}
