// Time-domain integration of the driven chain against the frequency-domain
// scattering matrix.

use transducer_lab::metrics::coupling_for_cooperativity;
use transducer_lab::oracle::{compare_with_scattering, DriveSpec};
use transducer_lab::{build_one_stage, ModeSpec, PumpSpec};

fn main() -> transducer_lab::Result<()> {
    // Dimensionless units: only rate ratios matter to the integrator.
    let w0 = 100.0;
    let model = build_one_stage(
        ModeSpec::microwave(w0, 0.1, 1.0, 0.0),
        ModeSpec::intermediate(w0, 0.2, 0.0),
        ModeSpec::optical(1e5, 0.2, 2.0, 0.0),
        coupling_for_cooperativity(2.0, 1.1, 0.2),
        coupling_for_cooperativity(3.0, 2.2, 0.2),
        PumpSpec::resonant_with(w0)?,
    )?;
    println!("omega     eta (oracle)     eta (S matrix)   max |dS|");
    for dw in [-0.6, -0.2, 0.0, 0.3] {
        let cmp = compare_with_scattering(&model, &DriveSpec::unit(0, w0 + dw))?;
        println!(
            "{:<9.2} {:<16.10} {:<16.10} {:.2e}",
            w0 + dw,
            cmp.eta_oracle,
            cmp.eta_scattering,
            cmp.max_abs_error
        );
    }
    Ok(())
}
