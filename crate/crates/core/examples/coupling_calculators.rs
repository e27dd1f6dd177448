// Microscopic coupling rates and thermal occupations from scalar inputs.

use std::f64::consts::TAU;

use transducer_lab::physics::{
    bose_occupation, magnon_microwave_coupling, magnon_optical_coupling, rei_collective_coupling, zero_point_amplitude,
    RareEarthInputs,
};

fn main() -> transducer_lab::Result<()> {
    println!("thermal occupation");
    for (label, f, t) in [
        ("5 GHz, 10 mK", 5e9, 0.01),
        ("7 GHz, 1 K", 7e9, 1.0),
        ("200 THz, 300 K", 200e12, 300.0),
    ] {
        println!("  {label:<16} {:.4e}", bose_occupation(TAU * f, t)?);
    }

    println!(
        "zero-point amplitude of a 1 fg, 5 GHz resonator: {:.4e} m",
        zero_point_amplitude(1e-15, TAU * 5e9)?
    );

    let g_em = magnon_microwave_coupling(TAU * 28e9, TAU * 8.3e9, 1e-6, 1e18)?;
    println!("magnon-microwave coupling: {:.2} MHz", g_em / TAU / 1e6);
    let g_mo = magnon_optical_coupling(380.0, 4.84, 1e18, 1e6)?;
    println!("magnon-optical coupling:   {:.2} Hz", g_mo / TAU);

    let rei = rei_collective_coupling(&RareEarthInputs {
        ions: 1e12,
        rabi: TAU * 1e6,
        g_e: TAU * 10.0,
        g_o: TAU * 100.0,
        detuning_2: TAU * 1e8,
        detuning_3: TAU * 1e9,
    })?;
    println!("rare-earth collective coupling: {:.3} kHz", rei.value / TAU / 1e3);
    for w in &rei.warnings {
        println!("  warning: {w}");
    }
    Ok(())
}
