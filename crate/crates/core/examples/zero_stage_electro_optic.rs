// Direct electro-optic conversion: single-photon coupling from material
// constants, enhanced by the optical pump, then the resulting efficiency.

use std::f64::consts::TAU;

use transducer_lab::metrics::{efficiency, efficiency_closed_form_zero_stage, susceptibilities};
use transducer_lab::physics::{
    electro_optic_single_photon, intracavity_photon_number, linearized_coupling, ElectroOpticInputs,
};
use transducer_lab::{build_zero_stage, ModeSpec, PumpSpec};

fn main() -> transducer_lab::Result<()> {
    let (f_e, f_o) = (8e9, 193e12);
    let g0 = electro_optic_single_photon(&ElectroOpticInputs {
        r_coefficient: 30e-12,
        permittivity_e: 25.0,
        permittivity_p: 4.6,
        permittivity_o: 4.6,
        omega_e: TAU * f_e,
        omega_p: TAU * (f_o - f_e),
        omega_o: TAU * f_o,
        volume_e: 1e-12,
        volume_p: 1e-15,
        volume_o: 1e-15,
        overlap: 0.5e-15,
    })?;
    let (kappa_e, kappa_o) = (TAU * 1e6, TAU * 100e6);
    let detuning = -TAU * f_e;
    let drive = TAU * 5e13;
    let photons = intracavity_photon_number(drive, detuning, kappa_o)?;
    let g = linearized_coupling(g0, photons)?;
    println!(
        "g0/2pi = {:.1} Hz, n_cav = {photons:.3e}, G/2pi = {:.3} kHz",
        g0 / TAU,
        g / TAU / 1e3
    );

    let model = build_zero_stage(
        ModeSpec::microwave(TAU * f_e, 0.2 * kappa_e, 0.8 * kappa_e, 0.01),
        ModeSpec::optical(TAU * f_o, 0.3 * kappa_o, 0.7 * kappa_o, 300.0),
        g,
        PumpSpec::from_detuning(detuning)?,
    )?;
    let r = susceptibilities(&model, TAU * f_e);
    let c_eo = r.c_eo().unwrap();
    println!("C_eo = {c_eo:.4e}");
    println!("eta (scattering)  = {:.6e}", efficiency(&model, TAU * f_e)?);
    println!(
        "eta (closed form) = {:.6e}",
        efficiency_closed_form_zero_stage(c_eo, r.eta_e, r.eta_o)
    );
    Ok(())
}
