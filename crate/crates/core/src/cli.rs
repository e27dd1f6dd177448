//! Command-line front end.
//!
//! All frequencies on the command line and in output files are ordinary
//! frequencies in Hz; the library works in rad/s. Floating-point output uses
//! 17 significant digits so every printed number reads back to the exact
//! library value.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage or configuration error,
//! 3 numerical failure.

use std::f64::consts::TAU;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::catalog::{self, Assumptions, CheckStatus, DeviceRecord};
use crate::config::ModelConfig;
use crate::error::{Error, Result};
use crate::metrics::{
    self, continuous_capacity, continuous_capacity_profile, evaluate_with_window, q1, sweep_tradeoff, write_sweep_csv,
    CapacityEstimate, CooperativityRange, FrequencyGrid,
};
use crate::model::{ChainModel, NoiseEnvironment, Topology};
use crate::oracle::{compare_with_scattering, DriveSpec};
use crate::scattering::{scattering_matrix, write_complex_csv};

/// Largest oracle deviation `oracle-check` accepts.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// Environment variable that caps the worker thread count (0 = automatic).
pub const THREADS_ENV: &str = "TRANSDUCER_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "transducer-lab",
    version,
    about = "Microwave-to-optical transducer performance from input-output theory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Efficiency, added noise, bandwidth and capacity of one model.
    Report(ReportArgs),
    /// Efficiency and added noise over a grid of cooperativities.
    Sweep(SweepArgs),
    /// Quantum capacity integrated over a frequency window.
    Capacity(CapacityArgs),
    /// Consistency checks over a catalog of published devices.
    Catalog(CatalogArgs),
    /// Compares the scattering matrix with time-domain integration.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Lower edge of the frequency window [Hz].
    #[arg(long)]
    pub omega_min_hz: Option<f64>,
    /// Upper edge of the frequency window [Hz].
    #[arg(long)]
    pub omega_max_hz: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Write the efficiency samples as CSV (`omega_hz,eta`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the scattering matrix at the efficiency peak as CSV.
    #[arg(long)]
    pub dump_scattering: Option<PathBuf>,
    #[command(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// `start:end:points[:log|lin]`, logarithmic by default.
    #[arg(long)]
    pub cem_range: String,
    #[arg(long)]
    pub com_range: String,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long, required_unless_present = "eta_profile", conflicts_with = "eta_profile")]
    pub model: Option<PathBuf>,
    /// Efficiency profile CSV (`omega_hz,eta`) used instead of a model;
    /// interpolated linearly and zero outside its range.
    #[arg(long)]
    pub eta_profile: Option<PathBuf>,
    /// Output CSV (`omega_hz,eta,q1`) on the base grid.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Catalog CSV; the bundled tables when omitted.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Export the records with derived columns.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Signal frequencies [Hz]; five points across the analytic bandwidth
    /// when omitted.
    #[arg(long, value_delimiter = ',')]
    pub omega_hz: Vec<f64>,
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    CheckFailed,
}

pub fn exit_code(result: &Result<Outcome>) -> u8 {
    match result {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::CheckFailed) => 1,
        Err(e) if e.is_numerical() => 3,
        Err(_) => 2,
    }
}

/// Sizes the global worker pool from [`THREADS_ENV`].
pub fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a nonnegative integer, got `{value}`")))?;
    // A pool that is already initialised keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Report(args) => cmd_report(args, out),
        Command::Sweep(args) => cmd_sweep(args, out),
        Command::Capacity(args) => cmd_capacity(args, out),
        Command::Catalog(args) => cmd_catalog(args, out),
        Command::OracleCheck(args) => cmd_oracle_check(args, out),
    }
}

fn load_model(path: &Path) -> Result<(ChainModel, NoiseEnvironment)> {
    ModelConfig::from_path(path)?.build()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn io_err(path: &str) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::io(path, e)
}

fn hz(omega: f64) -> f64 {
    omega / TAU
}

fn window_grid(window: &WindowArgs) -> Result<Option<FrequencyGrid>> {
    match (window.omega_min_hz, window.omega_max_hz) {
        (Some(lo), Some(hi)) => Ok(Some(FrequencyGrid::new(TAU * lo, TAU * hi, window.points)?)),
        (None, None) => Ok(None),
        _ => Err(Error::Config(
            "--omega-min-hz and --omega-max-hz must be given together".into(),
        )),
    }
}

fn model_window(model: &ChainModel, window: &WindowArgs) -> Result<FrequencyGrid> {
    match window_grid(window)? {
        Some(grid) => Ok(grid),
        None => {
            let grid = metrics::default_window(model)?;
            FrequencyGrid::new(grid.omega_min, grid.omega_max, window.points)
        }
    }
}

fn line(out: &mut dyn Write, key: &str, value: f64) -> Result<()> {
    writeln!(out, "{key:<24} {value:.16e}").map_err(io_err("<stdout>"))
}

fn cmd_report(args: &ReportArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (model, env) = load_model(&args.model)?;
    let grid = model_window(&model, &args.window)?;
    let report = evaluate_with_window(&model, &env, Some(grid))?;
    let r = &report.response;
    line(out, "eta_peak", report.eta_peak)?;
    line(out, "peak_frequency_hz", hz(report.omega_peak))?;
    line(out, "eta_internal", report.eta_internal)?;
    match model.topology() {
        Topology::OneStage => {
            line(out, "c_em", r.link_cooperativities[0])?;
            line(out, "c_om", r.link_cooperativities[1])?;
        }
        Topology::ZeroStage => line(out, "c_eo", r.link_cooperativities[0])?,
        Topology::MultiStage(_) => {
            for (i, c) in r.link_cooperativities.iter().enumerate() {
                line(out, &format!("c_{}{}", i, i + 1), *c)?;
            }
        }
    }
    line(out, "eta_e", r.eta_e)?;
    line(out, "eta_o", r.eta_o)?;
    line(out, "n_add_o", report.n_add_o)?;
    line(out, "n_add_e", report.n_add_e)?;
    line(out, "bandwidth_analytic_hz", hz(report.bandwidth_analytic))?;
    match report.bandwidth_numeric {
        Some(b) => line(out, "bandwidth_numeric_hz", hz(b))?,
        None => writeln!(out, "{:<24} none", "bandwidth_numeric_hz").map_err(io_err("<stdout>"))?,
    }
    line(out, "q1_peak", report.q1_peak)?;
    write_capacity_summary(out, &report.capacity)?;

    if let Some(path) = &args.out {
        let mut file = create(path)?;
        let p = path.display().to_string();
        writeln!(file, "omega_hz,eta").map_err(io_err(&p))?;
        for (w, eta) in &report.eta_samples {
            writeln!(file, "{:.16e},{:.16e}", hz(*w), eta).map_err(io_err(&p))?;
        }
        file.flush().map_err(io_err(&p))?;
    }
    if let Some(path) = &args.dump_scattering {
        let s = scattering_matrix(&model, report.omega_peak)?;
        let mut file = create(path)?;
        write_complex_csv(&mut file, &s.s)
            .and_then(|_| file.flush())
            .map_err(|e| Error::io(path, e))?;
    }
    Ok(Outcome::Success)
}

fn write_capacity_summary(out: &mut dyn Write, capacity: &CapacityEstimate) -> Result<()> {
    line(out, "capacity_qubits_per_s", capacity.value)?;
    line(out, "capacity_error", capacity.error_estimate)?;
    writeln!(out, "{:<24} {}", "capacity_points", capacity.points).map_err(io_err("<stdout>"))?;
    if capacity.unity_excised {
        writeln!(
            out,
            "warning: samples with unit efficiency were excised from the capacity integral"
        )
        .map_err(io_err("<stdout>"))?;
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<Outcome> {
    let c_em: CooperativityRange = args.cem_range.parse()?;
    let c_om: CooperativityRange = args.com_range.parse()?;
    let (model, env) = load_model(&args.model)?;
    let grid = sweep_tradeoff(&model, &c_em, &c_om, &env)?;
    match &args.out {
        Some(path) => {
            let mut file = create(path)?;
            write_sweep_csv(&mut file, &grid)
                .and_then(|_| file.flush())
                .map_err(|e| Error::io(path, e))?;
            writeln!(out, "wrote {} rows to {}", grid.points.len(), path.display()).map_err(io_err("<stdout>"))?;
        }
        None => write_sweep_csv(out, &grid).map_err(io_err("<stdout>"))?,
    }
    Ok(Outcome::Success)
}

/// Linear interpolation through `(omega, eta)` samples sorted by frequency;
/// zero outside the sampled range.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaProfile {
    samples: Vec<(f64, f64)>,
}

impl EtaProfile {
    /// Reads `omega_hz,eta` rows.
    pub fn load(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: 0,
                message: e.to_string(),
            })?;
        let mut samples = Vec::new();
        for row in reader.records() {
            let row = row.map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            let line = row.position().map_or(0, |p| p.line());
            let field = |i: usize| -> Result<f64> {
                row.get(i)
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::Parse {
                        path: path.to_path_buf(),
                        line,
                        message: format!(
                            "expected two numbers `omega_hz,eta`, got `{}`",
                            row.iter().collect::<Vec<_>>().join(",")
                        ),
                    })
            };
            samples.push((TAU * field(0)?, field(1)?));
        }
        Self::new(samples)
    }

    pub fn new(mut samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Config("efficiency profile is empty".into()));
        }
        if let Some((_, eta)) = samples.iter().find(|(_, eta)| !(0.0..=1.0).contains(eta)) {
            return Err(Error::validation("eta_profile.eta", format!("{eta} outside [0, 1]")));
        }
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(EtaProfile { samples })
    }

    pub fn eta(&self, omega: f64) -> f64 {
        let s = &self.samples;
        let (first, last) = (s[0], s[s.len() - 1]);
        if omega < first.0 || omega > last.0 {
            return 0.0;
        }
        let k = s.partition_point(|p| p.0 <= omega);
        if k == 0 {
            return first.1;
        }
        if k == s.len() {
            return last.1;
        }
        let (a, b) = (s[k - 1], s[k]);
        if b.0 == a.0 {
            return b.1;
        }
        a.1 + (b.1 - a.1) * (omega - a.0) / (b.0 - a.0)
    }

    pub fn span(&self) -> (f64, f64) {
        (self.samples[0].0, self.samples[self.samples.len() - 1].0)
    }
}

type EtaFn = Box<dyn Fn(f64) -> Result<f64>>;

fn cmd_capacity(args: &CapacityArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (estimate, grid, eta): (CapacityEstimate, FrequencyGrid, EtaFn) = match (&args.model, &args.eta_profile) {
        (_, Some(path)) => {
            let profile = EtaProfile::load(path)?;
            let grid = match window_grid(&args.window)? {
                Some(g) => g,
                None => {
                    let (lo, hi) = profile.span();
                    FrequencyGrid::new(lo, hi, args.window.points)?
                }
            };
            let estimate = continuous_capacity_profile(|w| profile.eta(w), &grid)?;
            (estimate, grid, Box::new(move |w| Ok(profile.eta(w))))
        }
        (Some(path), None) => {
            let (model, _) = load_model(path)?;
            let grid = model_window(&model, &args.window)?;
            let estimate = continuous_capacity(&model, &grid)?;
            (
                estimate,
                grid,
                Box::new(move |w| {
                    scattering_matrix(&model, w).map(|s| s.power(model.output_port(), model.input_port()).min(1.0))
                }),
            )
        }
        (None, None) => return Err(Error::Config("capacity needs --model or --eta-profile".into())),
    };
    line(out, "omega_min_hz", hz(grid.omega_min))?;
    line(out, "omega_max_hz", hz(grid.omega_max))?;
    write_capacity_summary(out, &estimate)?;
    if let Some(path) = &args.out {
        let mut file = create(path)?;
        let p = path.display().to_string();
        writeln!(file, "omega_hz,eta,q1").map_err(io_err(&p))?;
        for w in grid.samples() {
            let e = eta(w)?;
            writeln!(file, "{:.16e},{:.16e},{:.16e}", hz(w), e, q1(e)?).map_err(io_err(&p))?;
        }
        file.flush().map_err(io_err(&p))?;
    }
    Ok(Outcome::Success)
}

fn cmd_catalog(args: &CatalogArgs, out: &mut dyn Write) -> Result<Outcome> {
    let records: Vec<DeviceRecord> = match &args.catalog {
        Some(path) => catalog::load_catalog(path)?,
        None => {
            let mut r = catalog::shipped_catalog();
            r.extend(catalog::shipped_rydberg());
            r
        }
    };
    let assumptions = Assumptions::default();
    let w = |out: &mut dyn Write, text: String| writeln!(out, "{text}").map_err(io_err("<stdout>"));
    w(
        out,
        format!(
            "{:<22} {:<23} {:<9} {:<9} {:<9} {:<9}",
            "ref", "method", "bound", "q1", "occupancy", "bandwidth"
        ),
    )?;
    let mut failures = 0;
    for record in &records {
        let checks = catalog::consistency_report(record, &assumptions);
        failures += checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        let statuses: Vec<String> = checks.iter().map(|c| format!("{:<9}", c.status.to_string())).collect();
        w(
            out,
            format!(
                "{:<22} {:<23} {}",
                record.reference,
                record.method.as_str(),
                statuses.join(" ")
            ),
        )?;
        for check in checks.iter().filter(|c| c.status == CheckStatus::Fail) {
            w(out, format!("  {}: {}", check.kind.as_str(), check.detail))?;
        }
    }
    w(out, format!("{} records, {} failed checks", records.len(), failures))?;
    if let Some(path) = &args.out {
        let mut file = create(path)?;
        catalog::export_csv(&mut file, &records, &assumptions)?;
        file.flush().map_err(|e| Error::io(path, e))?;
    }
    Ok(if failures == 0 {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}

fn cmd_oracle_check(args: &OracleArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (model, _) = load_model(&args.model)?;
    let omegas: Vec<f64> = if args.omega_hz.is_empty() {
        let center = model.center_frequency();
        let width = metrics::bandwidth_analytic(&model);
        [-1.0, -0.5, 0.0, 0.5, 1.0].iter().map(|k| center + k * width).collect()
    } else {
        args.omega_hz.iter().map(|f| TAU * f).collect()
    };
    writeln!(out, "omega_hz,max_abs_error,eta_oracle,eta_scattering").map_err(io_err("<stdout>"))?;
    let mut worst: f64 = 0.0;
    for omega in omegas {
        let cmp = compare_with_scattering(&model, &DriveSpec::unit(model.input_port(), omega))?;
        worst = worst.max(cmp.max_abs_error);
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            hz(omega),
            cmp.max_abs_error,
            cmp.eta_oracle,
            cmp.eta_scattering
        )
        .map_err(io_err("<stdout>"))?;
    }
    line(out, "max_deviation", worst)?;
    Ok(if worst <= ORACLE_TOLERANCE {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}
