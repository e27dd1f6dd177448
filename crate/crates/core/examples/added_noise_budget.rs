// Input-referred added noise in both conversion directions as the
// intermediate-mode bath warms up.

use std::f64::consts::TAU;

use transducer_lab::metrics::{added_noise, added_noise_closed_form_one_stage, coupling_for_cooperativity};
use transducer_lab::physics::bose_occupation;
use transducer_lab::{build_one_stage, ModeSpec, NoiseEnvironment, PumpSpec};

fn main() -> transducer_lab::Result<()> {
    let omega_m = TAU * 5e9;
    let (kappa_e, kappa_m, kappa_o) = (TAU * 2e6, TAU * 1e3, TAU * 5e6);
    let (c_em, c_om, eta_e, eta_o) = (10.0, 10.0, 0.9, 0.8);
    let env = NoiseEnvironment::new(0.03)?;
    println!("T_m [K]   N_m,th      N_add,o     N_add,e     N_add,o (closed form)");
    for t_m in [0.01, 0.05, 0.1, 0.5, 1.0] {
        let model = build_one_stage(
            ModeSpec::microwave(omega_m, (1.0 - eta_e) * kappa_e, eta_e * kappa_e, 0.03),
            ModeSpec::intermediate(omega_m, kappa_m, t_m),
            ModeSpec::optical(TAU * 194e12, (1.0 - eta_o) * kappa_o, eta_o * kappa_o, 300.0),
            coupling_for_cooperativity(c_em, kappa_e, kappa_m),
            coupling_for_cooperativity(c_om, kappa_o, kappa_m),
            PumpSpec::resonant_with(omega_m)?,
        )?;
        let noise = added_noise(&model, omega_m, &env)?;
        let n_wg = bose_occupation(omega_m, 0.03)?;
        let n_m = bose_occupation(omega_m, t_m)?;
        let (closed, _) = added_noise_closed_form_one_stage(c_em, c_om, eta_e, eta_o, n_wg, n_wg, n_m);
        println!(
            "{t_m:<8}  {n_m:<10.4e}  {:<10.4e}  {:<10.4e}  {closed:.4e}",
            noise.n_add_o, noise.n_add_e
        );
    }
    Ok(())
}
