// Conversion efficiency of a microwave -> mechanics -> optics chain, from the
// scattering matrix and from the closed form at resonance.

use std::f64::consts::TAU;

use transducer_lab::metrics::{
    coupling_for_cooperativity, efficiency, efficiency_closed_form_one_stage, susceptibilities,
};
use transducer_lab::{build_one_stage, ModeSpec, PumpSpec};

fn main() -> transducer_lab::Result<()> {
    let omega_m = TAU * 5e9;
    let (kappa_e, kappa_m, kappa_o) = (TAU * 2e6, TAU * 1e3, TAU * 5e6);
    let model = build_one_stage(
        ModeSpec::microwave(omega_m, 0.1 * kappa_e, 0.9 * kappa_e, 0.02),
        ModeSpec::intermediate(omega_m, kappa_m, 0.02),
        ModeSpec::optical(TAU * 194e12, 0.2 * kappa_o, 0.8 * kappa_o, 300.0),
        coupling_for_cooperativity(20.0, kappa_e, kappa_m),
        coupling_for_cooperativity(19.0, kappa_o, kappa_m),
        PumpSpec::resonant_with(omega_m)?,
    )?;

    let r = susceptibilities(&model, omega_m);
    let (c_em, c_om) = (r.c_em().unwrap(), r.c_om().unwrap());
    let numeric = efficiency(&model, omega_m)?;
    let closed = efficiency_closed_form_one_stage(c_em, c_om, r.eta_e, r.eta_o);
    println!(
        "C_em = {c_em:.3}, C_om = {c_om:.3}, eta_e = {:.2}, eta_o = {:.2}",
        r.eta_e, r.eta_o
    );
    println!("eta (scattering)  = {numeric:.15}");
    println!("eta (closed form) = {closed:.15}");

    println!("\n detuning [kHz]   eta");
    for k in -4..=4 {
        let dw = TAU * 5e3 * k as f64;
        println!("{:>14.1}   {:.6}", dw / TAU / 1e3, efficiency(&model, omega_m + dw)?);
    }
    Ok(())
}
