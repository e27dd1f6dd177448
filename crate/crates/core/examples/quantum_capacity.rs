// Per-mode capacity q1 of a pure-loss channel and the capacity integrated
// over the conversion band of a high-efficiency transducer.

use std::f64::consts::TAU;

use transducer_lab::metrics::{continuous_capacity, coupling_for_cooperativity, default_window, find_peak, q1};
use transducer_lab::{build_one_stage, ModeSpec, PumpSpec};

fn main() -> transducer_lab::Result<()> {
    println!("eta    q1");
    for eta in [0.3, 0.5, 2.0 / 3.0, 0.8, 0.9, 0.99] {
        println!("{eta:<6.3} {:.4}", q1(eta)?);
    }

    let omega_m = TAU * 5e9;
    let (kappa_e, kappa_m, kappa_o) = (TAU * 2e6, TAU * 2e3, TAU * 4e6);
    let model = build_one_stage(
        ModeSpec::microwave(omega_m, 0.02 * kappa_e, 0.98 * kappa_e, 0.0),
        ModeSpec::intermediate(omega_m, kappa_m, 0.0),
        ModeSpec::optical(TAU * 194e12, 0.02 * kappa_o, 0.98 * kappa_o, 0.0),
        coupling_for_cooperativity(60.0, kappa_e, kappa_m),
        coupling_for_cooperativity(59.0, kappa_o, kappa_m),
        PumpSpec::resonant_with(omega_m)?,
    )?;
    let peak = find_peak(&model)?;
    let capacity = continuous_capacity(&model, &default_window(&model)?)?;
    println!("\npeak eta = {:.5}, q1 = {:.4}", peak.eta, q1(peak.eta)?);
    println!(
        "Q1 = {:.4e} qubits/s (+/- {:.1e}, {} points)",
        capacity.value, capacity.error_estimate, capacity.points
    );
    Ok(())
}
