use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{added_noise, coupling_for_cooperativity};
use crate::model::{ChainModel, NoiseEnvironment, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `points` cooperativity values from `start` to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CooperativityRange {
    pub start: f64,
    pub end: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl CooperativityRange {
    pub fn new(start: f64, end: f64, points: usize, spacing: Spacing) -> Result<Self> {
        if points == 0 {
            return Err(Error::Domain("cooperativity range needs at least one point".into()));
        }
        if !(start.is_finite() && end.is_finite() && start >= 0.0 && end >= start) {
            return Err(Error::Domain(format!("invalid cooperativity range {start}..{end}")));
        }
        if spacing == Spacing::Log && start <= 0.0 {
            return Err(Error::Domain(
                "logarithmic cooperativity range must start above zero".into(),
            ));
        }
        Ok(CooperativityRange {
            start,
            end,
            points,
            spacing,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                let t = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.end - self.start) * t,
                    Spacing::Log => self.start * (self.end / self.start).powf(t),
                }
            })
            .collect()
    }
}

/// Parses `start:end:points[:log|:lin]`; logarithmic when the spacing is
/// omitted.
impl FromStr for CooperativityRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::Config(format!("expected start:end:points[:log|lin], got `{s}`")));
        }
        let number = |p: &str| -> Result<f64> {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("`{p}` is not a number in range `{s}`")))
        };
        let points = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("`{}` is not a point count in range `{s}`", parts[2])))?;
        let spacing = match parts.get(3).map(|p| p.trim()) {
            None | Some("log") => Spacing::Log,
            Some("lin") | Some("linear") => Spacing::Linear,
            Some(other) => return Err(Error::Config(format!("unknown spacing `{other}`"))),
        };
        CooperativityRange::new(number(parts[0])?, number(parts[1])?, points, spacing).map_err(|e| match e {
            Error::Domain(msg) => Error::Config(format!("{msg} in range `{s}`")),
            other => other,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub c_em: f64,
    pub c_om: f64,
    pub eta: f64,
    pub n_add_o: f64,
    pub n_add_e: f64,
}

/// Results in row-major order: one row per `C_em`, one column per `C_om`.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffGrid {
    pub c_em: Vec<f64>,
    pub c_om: Vec<f64>,
    pub points: Vec<SweepPoint>,
}

impl TradeoffGrid {
    pub fn at(&self, row: usize, col: usize) -> &SweepPoint {
        &self.points[row * self.c_om.len() + col]
    }
}

/// Evaluates efficiency and added noise of a one-stage template on a grid of
/// cooperativities, rescaling its two couplings for each point. Every point
/// is evaluated at the intermediate-mode frequency.
pub fn sweep_tradeoff(
    template: &ChainModel,
    c_em: &CooperativityRange,
    c_om: &CooperativityRange,
    env: &NoiseEnvironment,
) -> Result<TradeoffGrid> {
    if template.topology() != Topology::OneStage {
        return Err(Error::Config("trade-off sweeps need a one-stage model".into()));
    }
    let (ke, km, ko) = (
        template.mode(0).total_loss(),
        template.mode(1).total_loss(),
        template.mode(2).total_loss(),
    );
    let rows = c_em.values();
    let cols = c_om.values();
    let omega = template.center_frequency();
    let pairs: Vec<(f64, f64)> = rows.iter().flat_map(|&a| cols.iter().map(move |&b| (a, b))).collect();
    let points = pairs
        .par_iter()
        .map(|&(a, b)| {
            let model = template.with_links(&[
                coupling_for_cooperativity(a, ke, km),
                coupling_for_cooperativity(b, ko, km),
            ])?;
            let noise = added_noise(&model, omega, env)?;
            Ok(SweepPoint {
                c_em: a,
                c_om: b,
                eta: noise.eta,
                n_add_o: noise.n_add_o,
                n_add_e: noise.n_add_e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TradeoffGrid {
        c_em: rows,
        c_om: cols,
        points,
    })
}

pub const SWEEP_HEADER: &str = "c_em,c_om,eta,n_add_o,n_add_e";

pub fn write_sweep_csv<W: Write>(mut out: W, grid: &TradeoffGrid) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for p in &grid.points {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            p.c_em, p.c_om, p.eta, p.n_add_o, p.n_add_e
        )?;
    }
    Ok(())
}
