// Numerical half-maximum width of the conversion band next to the
// dynamically broadened linewidth kappa_m (1 + C_em + C_om).

use std::f64::consts::TAU;

use transducer_lab::metrics::{bandwidth_analytic, bandwidth_numeric, coupling_for_cooperativity};
use transducer_lab::{build_one_stage, ModeSpec, PumpSpec};

fn main() -> transducer_lab::Result<()> {
    let omega_m = TAU * 5e9;
    let (kappa_e, kappa_m, kappa_o) = (TAU * 5e6, TAU * 1e3, TAU * 10e6);
    println!("C_em   C_om   analytic [kHz]   numeric [kHz]");
    for (c_em, c_om) in [(0.5, 0.5), (1.0, 1.0), (5.0, 3.0), (10.0, 10.0)] {
        let model = build_one_stage(
            ModeSpec::microwave(omega_m, 0.0, kappa_e, 0.0),
            ModeSpec::intermediate(omega_m, kappa_m, 0.0),
            ModeSpec::optical(TAU * 194e12, 0.0, kappa_o, 0.0),
            coupling_for_cooperativity(c_em, kappa_e, kappa_m),
            coupling_for_cooperativity(c_om, kappa_o, kappa_m),
            PumpSpec::resonant_with(omega_m)?,
        )?;
        let analytic = bandwidth_analytic(&model) / TAU / 1e3;
        let numeric = bandwidth_numeric(&model)?.fwhm / TAU / 1e3;
        println!("{c_em:<6} {c_om:<6} {analytic:<16.4} {numeric:.4}");
    }
    Ok(())
}
