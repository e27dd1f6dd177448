// Loads a JSON model description and prints its performance report.

use std::path::Path;

use transducer_lab::config::ModelConfig;
use transducer_lab::metrics::evaluate;

fn main() -> transducer_lab::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/lossy_one_stage.json");
    let (model, env) = ModelConfig::from_path(&path)?.build()?;
    let report = evaluate(&model, &env)?;
    let tau = std::f64::consts::TAU;
    println!("eta_peak          {:.6}", report.eta_peak);
    println!("eta_internal      {:.6}", report.eta_internal);
    println!(
        "C_em, C_om        {:.3}, {:.3}",
        report.response.link_cooperativities[0], report.response.link_cooperativities[1]
    );
    println!("N_add (e -> o)    {:.4e}", report.n_add_o);
    println!("N_add (o -> e)    {:.4e}", report.n_add_e);
    println!(
        "bandwidth         {:.3} kHz (analytic)",
        report.bandwidth_analytic / tau / 1e3
    );
    if let Some(b) = report.bandwidth_numeric {
        println!("                  {:.3} kHz (numeric)", b / tau / 1e3);
    }
    println!("Q1                {:.4e} qubits/s", report.capacity.value);
    Ok(())
}
