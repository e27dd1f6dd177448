//! Published transducer figures and consistency checks against the
//! closed-form model.
//!
//! Catalog files are CSV with the header
//!
//! ```text
//! ref,year,method,platform,freq_hz,eta,c_em,c_om,c_eo,added_noise,bandwidth_hz,temperature_k,qubit_demo
//! ```
//!
//! An optional `approximate` column lists, separated by `;`, the fields that
//! were quoted as approximate or as bounds. Empty cells, `NR` and `--` all
//! mean the value is absent. Extra columns (such as the derived ones written
//! by [`export_csv`]) are ignored on load.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics::{efficiency_closed_form_one_stage, efficiency_closed_form_zero_stage, q1};
use crate::physics::bose_occupation;

pub const CATALOG_COLUMNS: [&str; 13] = [
    "ref",
    "year",
    "method",
    "platform",
    "freq_hz",
    "eta",
    "c_em",
    "c_om",
    "c_eo",
    "added_noise",
    "bandwidth_hz",
    "temperature_k",
    "qubit_demo",
];

pub const DERIVED_COLUMNS: [&str; 3] = ["q1", "bound", "occupancy"];

const SHIPPED_TABLES: &str = include_str!("../data/tables.csv");
const SHIPPED_RYDBERG: &str = include_str!("../data/rydberg.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    ElectroOptomechanical,
    PiezoOptomechanical,
    BulkAcoustic,
    ElectroOptic,
    MagnetoOptic,
    RareEarth,
    Rydberg,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::ElectroOptomechanical,
        Method::PiezoOptomechanical,
        Method::BulkAcoustic,
        Method::ElectroOptic,
        Method::MagnetoOptic,
        Method::RareEarth,
        Method::Rydberg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ElectroOptomechanical => "electro-optomechanical",
            Method::PiezoOptomechanical => "piezo-optomechanical",
            Method::BulkAcoustic => "bulk-acoustic",
            Method::ElectroOptic => "electro-optic",
            Method::MagnetoOptic => "magneto-optic",
            Method::RareEarth => "rare-earth",
            Method::Rydberg => "rydberg",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// One published device result. Optional figures are `None` when the source
/// does not report them or they do not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceRecord {
    pub reference: String,
    pub year: u16,
    pub method: Method,
    pub platform: String,
    /// Intermediate-mode or operating frequency [Hz].
    pub frequency_hz: Option<f64>,
    pub eta: Option<f64>,
    pub c_em: Option<f64>,
    pub c_om: Option<f64>,
    pub c_eo: Option<f64>,
    pub added_noise: Option<f64>,
    pub bandwidth_hz: Option<f64>,
    pub temperature_k: Option<f64>,
    /// Demonstrated with a superconducting qubit as the source.
    pub qubit_demo: bool,
    /// Fields quoted as approximate values or bounds.
    pub approximate: Vec<String>,
}

impl DeviceRecord {
    pub fn is_approximate(&self, field: &str) -> bool {
        self.approximate.iter().any(|f| f == field)
    }
}

fn parse_error(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<DeviceRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_catalog(&text, path)
}

/// Parses catalog text; `origin` is only used in error messages.
pub fn parse_catalog(text: &str, origin: impl AsRef<Path>) -> Result<Vec<DeviceRecord>> {
    let origin = origin.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| parse_error(origin, 1, format!("unreadable header: {e}")))?
        .clone();
    let mut index = BTreeMap::new();
    for column in CATALOG_COLUMNS {
        let i = headers
            .iter()
            .position(|h| h == column)
            .ok_or_else(|| parse_error(origin, 1, format!("missing column `{column}`")))?;
        index.insert(column, i);
    }
    let approximate_column = headers.iter().position(|h| h == "approximate");

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(origin, line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let cell = |column: &str| row.get(index[column]).unwrap_or("");
        let optional = |column: &str| -> Result<Option<f64>> {
            match cell(column) {
                "" | "NR" | "--" => Ok(None),
                v => v
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| parse_error(origin, line, format!("`{column}` is not a number: `{v}`"))),
            }
        };
        let reference = cell("ref").to_string();
        if reference.is_empty() {
            return Err(parse_error(origin, line, "empty `ref`"));
        }
        let year = cell("year")
            .parse::<u16>()
            .map_err(|_| parse_error(origin, line, format!("`year` is not a year: `{}`", cell("year"))))?;
        let method = cell("method")
            .parse::<Method>()
            .map_err(|e| parse_error(origin, line, e))?;
        let qubit_demo = match cell("qubit_demo") {
            "true" => true,
            "false" => false,
            other => {
                return Err(parse_error(
                    origin,
                    line,
                    format!("`qubit_demo` must be true or false, got `{other}`"),
                ))
            }
        };
        let eta = optional("eta")?;
        if let Some(eta) = eta {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::validation(
                    format!("{}:{line}: eta", origin.display()),
                    format!("reported efficiency {eta} outside [0, 1]"),
                ));
            }
        }
        let approximate = approximate_column
            .and_then(|i| row.get(i))
            .map(|s| {
                s.split(';')
                    .map(str::trim)
                    .filter(|f| !f.is_empty())
                    .map(String::from)
                    .collect()
            })
            .unwrap_or_default();
        records.push(DeviceRecord {
            reference,
            year,
            method,
            platform: cell("platform").to_string(),
            frequency_hz: optional("freq_hz")?,
            eta,
            c_em: optional("c_em")?,
            c_om: optional("c_om")?,
            c_eo: optional("c_eo")?,
            added_noise: optional("added_noise")?,
            bandwidth_hz: optional("bandwidth_hz")?,
            temperature_k: optional("temperature_k")?,
            qubit_demo,
            approximate,
        });
    }
    Ok(records)
}

/// The five comparison tables bundled with the crate.
pub fn shipped_catalog() -> Vec<DeviceRecord> {
    parse_catalog(SHIPPED_TABLES, "data/tables.csv").expect("bundled catalog parses")
}

/// Rydberg-atom results, kept apart because their efficiency is a photon
/// flux ratio rather than a scattering-matrix element.
pub fn shipped_rydberg() -> Vec<DeviceRecord> {
    parse_catalog(SHIPPED_RYDBERG, "data/rydberg.csv").expect("bundled catalog parses")
}

/// Model parameters the checks need but the tables do not give.
#[derive(Debug, Clone, PartialEq)]
pub struct Assumptions {
    pub eta_e: f64,
    pub eta_o: f64,
    /// Intrinsic intermediate-mode linewidth `kappa_m / 2 pi` [Hz] per
    /// reference.
    pub kappa_m_hz: BTreeMap<String, f64>,
    /// Accepted range of predicted over reported bandwidth.
    pub bandwidth_ratio: (f64, f64),
}

impl Default for Assumptions {
    fn default() -> Self {
        Assumptions {
            eta_e: 1.0,
            eta_o: 1.0,
            kappa_m_hz: BTreeMap::from([("zhu2020".to_string(), 3.25e6)]),
            bandwidth_ratio: (0.1, 10.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    /// Reported efficiency at most the closed-form value for the reported
    /// cooperativities.
    CooperativityBound,
    /// `q1` of the reported efficiency.
    Capacity,
    /// Bath occupation of the intermediate mode.
    ThermalOccupancy,
    /// Predicted bandwidth within an order of magnitude of the reported one.
    BandwidthScale,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::CooperativityBound => "bound",
            CheckKind::Capacity => "q1",
            CheckKind::ThermalOccupancy => "occupancy",
            CheckKind::BandwidthScale => "bandwidth",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub kind: CheckKind,
    pub status: CheckStatus,
    /// Computed value of the check, when it ran.
    pub value: Option<f64>,
    pub detail: String,
}

impl CheckResult {
    fn skipped(kind: CheckKind, why: &str) -> Self {
        CheckResult {
            kind,
            status: CheckStatus::Skipped,
            value: None,
            detail: why.to_string(),
        }
    }
}

pub fn consistency_report(record: &DeviceRecord, assumptions: &Assumptions) -> Vec<CheckResult> {
    vec![
        bound_check(record, assumptions),
        capacity_check(record),
        occupancy_check(record),
        bandwidth_check(record, assumptions),
    ]
}

fn bound_check(record: &DeviceRecord, a: &Assumptions) -> CheckResult {
    let kind = CheckKind::CooperativityBound;
    if record.method == Method::Rydberg {
        return CheckResult::skipped(kind, "flux-ratio efficiency");
    }
    let Some(eta) = record.eta else {
        return CheckResult::skipped(kind, "no efficiency");
    };
    let bound = match (record.c_em, record.c_om, record.c_eo) {
        (Some(c_em), Some(c_om), _) => efficiency_closed_form_one_stage(c_em, c_om, a.eta_e, a.eta_o),
        (_, _, Some(c_eo)) => efficiency_closed_form_zero_stage(c_eo, a.eta_e, a.eta_o),
        _ => return CheckResult::skipped(kind, "cooperativities not reported"),
    };
    CheckResult {
        kind,
        status: if eta <= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        value: Some(bound),
        detail: format!("eta {eta:e} <= bound {bound:.5e}"),
    }
}

fn capacity_check(record: &DeviceRecord) -> CheckResult {
    let kind = CheckKind::Capacity;
    if record.method == Method::Rydberg {
        return CheckResult::skipped(kind, "flux-ratio efficiency");
    }
    match record.eta.map(q1) {
        Some(Ok(q)) => CheckResult {
            kind,
            status: CheckStatus::Pass,
            value: Some(q),
            detail: format!("q1 = {q}"),
        },
        _ => CheckResult::skipped(kind, "no efficiency"),
    }
}

fn occupancy_check(record: &DeviceRecord) -> CheckResult {
    let kind = CheckKind::ThermalOccupancy;
    match (record.frequency_hz, record.temperature_k) {
        (Some(f), Some(t)) => match bose_occupation(TAU * f, t) {
            Ok(n) => CheckResult {
                kind,
                status: CheckStatus::Pass,
                value: Some(n),
                detail: format!("N_th = {n:.4e} at {f:e} Hz, {t} K"),
            },
            Err(e) => CheckResult::skipped(kind, &e.to_string()),
        },
        _ => CheckResult::skipped(kind, "frequency or temperature not reported"),
    }
}

fn bandwidth_check(record: &DeviceRecord, a: &Assumptions) -> CheckResult {
    let kind = CheckKind::BandwidthScale;
    let Some(&kappa_m) = a.kappa_m_hz.get(&record.reference) else {
        return CheckResult::skipped(kind, "intermediate linewidth unknown");
    };
    let Some(reported) = record.bandwidth_hz else {
        return CheckResult::skipped(kind, "bandwidth not reported");
    };
    if record.c_em.is_none() && record.c_om.is_none() {
        return CheckResult::skipped(kind, "cooperativities not reported");
    }
    let predicted = kappa_m * (1.0 + record.c_em.unwrap_or(0.0) + record.c_om.unwrap_or(0.0));
    let ratio = predicted / reported;
    let (lo, hi) = a.bandwidth_ratio;
    CheckResult {
        kind,
        status: if (lo..=hi).contains(&ratio) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        value: Some(predicted),
        detail: format!("predicted {predicted:.4e} Hz vs reported {reported:e} Hz (ratio {ratio:.3})"),
    }
}

fn cell(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes records with the derived `q1`, `bound` and `occupancy` columns.
/// Numbers use the shortest representation that reads back exactly.
pub fn export_csv<W: Write>(out: W, records: &[DeviceRecord], assumptions: &Assumptions) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let header: Vec<&str> = CATALOG_COLUMNS
        .iter()
        .copied()
        .chain(std::iter::once("approximate"))
        .chain(DERIVED_COLUMNS)
        .collect();
    let to_io = |e: csv::Error| Error::io(PathBuf::from("<catalog export>"), e.into());
    writer.write_record(&header).map_err(to_io)?;
    for r in records {
        let checks = consistency_report(r, assumptions);
        let value_of = |kind: CheckKind| cell(checks.iter().find(|c| c.kind == kind).and_then(|c| c.value));
        writer
            .write_record([
                r.reference.clone(),
                r.year.to_string(),
                r.method.to_string(),
                r.platform.clone(),
                cell(r.frequency_hz),
                cell(r.eta),
                cell(r.c_em),
                cell(r.c_om),
                cell(r.c_eo),
                cell(r.added_noise),
                cell(r.bandwidth_hz),
                cell(r.temperature_k),
                r.qubit_demo.to_string(),
                r.approximate.join(";"),
                value_of(CheckKind::Capacity),
                value_of(CheckKind::CooperativityBound),
                value_of(CheckKind::ThermalOccupancy),
            ])
            .map_err(to_io)?;
    }
    writer
        .flush()
        .map_err(|e| Error::io(PathBuf::from("<catalog export>"), e))?;
    Ok(())
}
