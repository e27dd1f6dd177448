// Efficiency against added noise over a grid of cooperativities. The best
// efficiency at fixed C_om sits at C_em = C_om + 1.

use std::f64::consts::TAU;

use transducer_lab::metrics::{sweep_tradeoff, CooperativityRange, Spacing};
use transducer_lab::{build_one_stage, ModeSpec, NoiseEnvironment, PumpSpec};

fn main() -> transducer_lab::Result<()> {
    let omega_m = TAU * 5e9;
    let template = build_one_stage(
        ModeSpec::microwave(omega_m, 0.0, TAU * 2e6, 0.05),
        ModeSpec::intermediate(omega_m, TAU * 1e3, 0.1),
        ModeSpec::optical(TAU * 194e12, 0.0, TAU * 5e6, 300.0),
        1.0,
        1.0,
        PumpSpec::resonant_with(omega_m)?,
    )?;
    let c_em = CooperativityRange::new(0.1, 100.0, 31, Spacing::Log)?;
    let c_om = CooperativityRange::new(4.0, 4.0, 1, Spacing::Log)?;
    let grid = sweep_tradeoff(&template, &c_em, &c_om, &NoiseEnvironment::new(0.05)?)?;
    let best = grid.points.iter().max_by(|a, b| a.eta.total_cmp(&b.eta)).unwrap();
    println!("C_em       eta        N_add,o");
    for p in grid.points.iter().step_by(5) {
        println!("{:<10.3} {:<10.5} {:.4e}", p.c_em, p.eta, p.n_add_o);
    }
    println!(
        "\nbest eta {:.5} at C_em = {:.3} (C_om + 1 = {})",
        best.eta,
        best.c_em,
        best.c_om + 1.0
    );
    Ok(())
}
