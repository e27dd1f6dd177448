use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use transducer_lab::config::ModelConfig;
use transducer_lab::metrics::{evaluate, SWEEP_HEADER};

const BIN: &str = env!("CARGO_BIN_EXE_transducer-lab");

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_path(args: &[&str], path: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(key)).then(|| it.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

// Rates of a few kHz so the time-domain integration is quick.
const FAST_ORACLE_MODEL: &str = r#"{
  "modes": [
    {"label": "microwave", "frequency_hz": 1e5, "kappa_int_hz": 100, "kappa_ext_hz": 1000, "bath_temperature_k": 0},
    {"label": "intermediate", "frequency_hz": 1e5, "kappa_int_hz": 300, "kappa_ext_hz": 0, "bath_temperature_k": 0},
    {"label": "optical", "frequency_hz": 1e8, "kappa_int_hz": 200, "kappa_ext_hz": 2000, "bath_temperature_k": 0}
  ],
  "couplings": [
    {"a": 0, "b": 1, "strength_hz": 400},
    {"a": 1, "b": 2, "strength_hz": 500}
  ],
  "pump": {"detuning_hz": -1e5}
}"#;

#[test]
fn report_prints_library_values_exactly() {
    let out = run_path(&["report", "--model"], &config("lossy_one_stage.json"));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let (model, env) = ModelConfig::from_path(config("lossy_one_stage.json"))
        .unwrap()
        .build()
        .unwrap();
    let report = evaluate(&model, &env).unwrap();
    assert_eq!(value(&text, "eta_peak").to_bits(), report.eta_peak.to_bits());
    assert_eq!(value(&text, "n_add_o").to_bits(), report.n_add_o.to_bits());
    assert_eq!(value(&text, "n_add_e").to_bits(), report.n_add_e.to_bits());
    assert_eq!(value(&text, "eta_internal").to_bits(), report.eta_internal.to_bits());
    assert_eq!(
        value(&text, "capacity_qubits_per_s").to_bits(),
        report.capacity.value.to_bits()
    );
}

#[test]
fn report_of_unit_cooperativity_model() {
    let dir = TempDir::new().unwrap();
    let samples = dir.path().join("eta.csv");
    let smat = dir.path().join("s.csv");
    let out = run(&[
        "report",
        "--model",
        config("one_stage.json").to_str().unwrap(),
        "--out",
        samples.to_str().unwrap(),
        "--dump-scattering",
        smat.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!((value(&text, "eta_peak") - 4.0 / 9.0).abs() < 1e-12);
    assert!((value(&text, "c_em") - 1.0).abs() < 1e-12);
    assert!((value(&text, "bandwidth_analytic_hz") - 3e3).abs() < 1e-6);
    assert!((value(&text, "peak_frequency_hz") - 5e9).abs() < 1.0);
    let csv = fs::read_to_string(&samples).unwrap();
    assert_eq!(csv.lines().next(), Some("omega_hz,eta"));
    assert_eq!(csv.lines().count(), 102);
    assert_eq!(fs::read_to_string(&smat).unwrap().lines().count(), 1 + 5);
}

#[test]
fn decoupled_model_reports_zero_efficiency() {
    let out = run_path(&["report", "--model"], &config("decoupled.json"));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "eta_peak"), 0.0);
    assert!(text.contains("bandwidth_numeric_hz") && text.contains("none"));
}

#[test]
fn single_point_sweep_agrees_with_report() {
    let model = config("one_stage.json");
    let out = run(&[
        "sweep",
        "--model",
        model.to_str().unwrap(),
        "--cem-range",
        "1:1:1",
        "--com-range",
        "1:1:1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SWEEP_HEADER));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    let report = stdout(&run_path(&["report", "--model"], &model));
    assert!((row[2] - value(&report, "eta_peak")).abs() < 1e-12);
    assert!((row[3] - value(&report, "n_add_o")).abs() <= 1e-10 * row[3]);
}

#[test]
fn sweep_output_is_independent_of_thread_count() {
    let model = config("lossy_one_stage.json");
    let args = [
        "sweep",
        "--model",
        model.to_str().unwrap(),
        "--cem-range",
        "0.1:100:12",
        "--com-range",
        "0.1:100:9:lin",
    ];
    let one = Command::new(BIN)
        .args(args)
        .env("TRANSDUCER_LAB_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(BIN)
        .args(args)
        .env("TRANSDUCER_LAB_THREADS", "4")
        .output()
        .unwrap();
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(stdout(&one).lines().count(), 1 + 12 * 9);
}

#[test]
fn sweep_writes_file_when_asked() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sweep.csv");
    let model = config("one_stage.json");
    let out = run(&[
        "sweep",
        "--model",
        model.to_str().unwrap(),
        "--cem-range",
        "1:10:3",
        "--com-range",
        "1:10:2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(path).unwrap().lines().count(), 7);
}

#[test]
fn flat_profile_capacity() {
    let dir = TempDir::new().unwrap();
    let q = dir.path().join("q.csv");
    let out = run(&[
        "capacity",
        "--eta-profile",
        config("flat_profile.csv").to_str().unwrap(),
        "--out",
        q.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let c = value(&stdout(&out), "capacity_qubits_per_s");
    assert!((c - 2e6).abs() / 2e6 < 1e-4, "{c}");
    assert_eq!(fs::read_to_string(q).unwrap().lines().next(), Some("omega_hz,eta,q1"));
}

#[test]
fn capacity_of_model_in_explicit_window() {
    let out = run(&[
        "capacity",
        "--model",
        config("one_stage.json").to_str().unwrap(),
        "--omega-min-hz",
        "4.99997e9",
        "--omega-max-hz",
        "5.00003e9",
    ]);
    assert!(out.status.success());
    // eta <= 4/9 everywhere, so q1 vanishes.
    assert_eq!(value(&stdout(&out), "capacity_qubits_per_s"), 0.0);
}

#[test]
fn shipped_catalog_passes() {
    let dir = TempDir::new().unwrap();
    let export = dir.path().join("catalog.csv");
    let out = run_path(&["catalog", "--out"], &export);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 failed checks"));
    let header = fs::read_to_string(export).unwrap().lines().next().unwrap().to_string();
    assert!(header.starts_with("ref,year,method") && header.ends_with("q1,bound,occupancy"));
}

#[test]
fn fabricated_catalog_entry_fails_its_check() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(
        &path,
        "ref,year,method,platform,freq_hz,eta,c_em,c_om,c_eo,added_noise,bandwidth_hz,temperature_k,qubit_demo,approximate\n\
         fake2030,2030,electro-optomechanical,Si,5e9,0.9,1,1,--,NR,NR,NR,false,\n",
    )
    .unwrap();
    let out = run_path(&["catalog", "--catalog"], &path);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("1 failed checks"));
}

#[test]
fn oracle_check_agrees_on_fast_model() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("fast.json");
    fs::write(&path, FAST_ORACLE_MODEL).unwrap();
    let out = run_path(&["oracle-check", "--model"], &path);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 5 + 1);
    assert!(value(&text, "max_deviation") <= 1e-6);

    let out = run(&[
        "oracle-check",
        "--model",
        path.to_str().unwrap(),
        "--omega-hz",
        "99900,100000",
    ]);
    assert_eq!(stdout(&out).lines().count(), 1 + 2 + 1);
}

#[test]
fn stiff_model_is_a_numerical_error() {
    let out = run_path(&["oracle-check", "--model"], &config("stiff.json"));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stiff"));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let model = config("one_stage.json");
    let m = model.to_str().unwrap();
    assert_eq!(
        run(&["sweep", "--model", m, "--cem-range", "1:2:0", "--com-range", "1:1:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["sweep", "--model", m, "--cem-range", "1:2", "--com-range", "1:1:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["report", "--model", "/nonexistent/model.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["report"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"modes\": [").unwrap();
    assert_eq!(run_path(&["report", "--model"], &bad).status.code(), Some(2));
    fs::write(
        &bad,
        fs::read_to_string(&model)
            .unwrap()
            .replace("1e3, \"kappa_ext_hz\"", "-1e3, \"kappa_ext_hz\""),
    )
    .unwrap();
    let out = run_path(&["report", "--model"], &bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn zero_stage_sweep_is_rejected() {
    let out = run(&[
        "sweep",
        "--model",
        config("zero_stage.json").to_str().unwrap(),
        "--cem-range",
        "1:1:1",
        "--com-range",
        "1:1:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_is_deterministic() {
    let model = config("zero_stage.json");
    let a = run_path(&["report", "--model"], &model);
    let b = run_path(&["report", "--model"], &model);
    assert_eq!(a.stdout, b.stdout);
}
