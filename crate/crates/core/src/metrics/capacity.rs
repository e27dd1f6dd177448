use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::model::ChainModel;
use crate::scattering::{assemble, scattering_from_matrices};

/// Relative change between successive refinements at which integration
/// stops.
pub const CAPACITY_TOLERANCE: f64 = 1e-4;
const MAX_POINTS: usize = (1 << 20) + 1;

/// Pure-loss channel capacity per mode, `max(log2(eta / (1 - eta)), 0)`.
///
/// Infinite at `eta = 1`.
pub fn q1(eta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Domain(format!("efficiency must lie in [0, 1], got {eta}")));
    }
    if eta == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok((eta / (1.0 - eta)).log2().max(0.0))
}

/// Uniform grid `[omega_min, omega_max]` in rad/s with `points` samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
}

impl FrequencyGrid {
    pub fn new(omega_min: f64, omega_max: f64, points: usize) -> Result<Self> {
        if !(omega_min.is_finite() && omega_max.is_finite() && omega_max > omega_min) {
            return Err(Error::Domain(format!(
                "frequency window [{omega_min}, {omega_max}] must be finite and nonempty"
            )));
        }
        if points < 2 {
            return Err(Error::Domain(format!("need at least 2 grid points, got {points}")));
        }
        Ok(FrequencyGrid {
            omega_min,
            omega_max,
            points,
        })
    }

    /// Grid abscissae; the last one is exactly `omega_max`.
    pub fn samples(&self) -> Vec<f64> {
        self.resampled(self.points)
    }

    pub fn resampled(&self, points: usize) -> Vec<f64> {
        let span = self.omega_max - self.omega_min;
        let last = points.saturating_sub(1).max(1);
        (0..points)
            .map(|k| {
                if k == last {
                    self.omega_max
                } else {
                    self.omega_min + span * k as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    /// `integral q1(eta(w)) dw / 2 pi` in qubits per second.
    pub value: f64,
    /// Difference between the last two refinements.
    pub error_estimate: f64,
    /// Grid size of the accepted estimate.
    pub points: usize,
    /// Some sample had `eta = 1` and was replaced by its neighbours.
    pub unity_excised: bool,
}

/// Quantum capacity of the chain over `grid`, integrating `q1(eta(w))` by the
/// trapezoid rule and halving the step until the estimate changes by less
/// than [`CAPACITY_TOLERANCE`] relative.
pub fn continuous_capacity(model: &ChainModel, grid: &FrequencyGrid) -> Result<CapacityEstimate> {
    let mats = assemble(model);
    let (inp, out) = (model.input_port(), model.output_port());
    integrate(grid, |w| {
        Ok(scattering_from_matrices(&mats, w)?.power(out, inp).min(1.0))
    })
}

/// Same as [`continuous_capacity`] for a given efficiency profile.
pub fn continuous_capacity_profile<F>(profile: F, grid: &FrequencyGrid) -> Result<CapacityEstimate>
where
    F: Fn(f64) -> f64,
{
    integrate(grid, |w| Ok(profile(w)))
}

fn integrate<F>(grid: &FrequencyGrid, eta: F) -> Result<CapacityEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut values = grid
        .samples()
        .into_iter()
        .map(|w| eta(w).and_then(q1))
        .collect::<Result<Vec<f64>>>()?;
    let (mut estimate, mut excised) = trapezoid(grid, &values);
    let mut points = values.len();
    loop {
        let refined_points = 2 * (points - 1) + 1;
        if refined_points > MAX_POINTS {
            return Err(Error::Convergence(format!(
                "capacity integral not converged at {points} points (last estimate {estimate:.6e})"
            )));
        }
        let abscissae = grid.resampled(refined_points);
        let mut refined = Vec::with_capacity(refined_points);
        for (k, w) in abscissae.into_iter().enumerate() {
            refined.push(if k % 2 == 0 { values[k / 2] } else { q1(eta(w)?)? });
        }
        let (next, next_excised) = trapezoid(grid, &refined);
        let change = (next - estimate).abs();
        values = refined;
        points = refined_points;
        excised |= next_excised;
        estimate = next;
        if change <= CAPACITY_TOLERANCE * next.abs() {
            return Ok(CapacityEstimate {
                value: next,
                error_estimate: change,
                points,
                unity_excised: excised,
            });
        }
    }
}

/// Trapezoid sum of `q1 / 2 pi`, replacing infinite samples by the mean of
/// their finite neighbours.
fn trapezoid(grid: &FrequencyGrid, q: &[f64]) -> (f64, bool) {
    let mut excised = false;
    let finite = |k: usize| -> f64 {
        if q[k].is_finite() {
            return q[k];
        }
        let left = q[..k].iter().rev().find(|v| v.is_finite());
        let right = q[k + 1..].iter().find(|v| v.is_finite());
        match (left, right) {
            (Some(a), Some(b)) => 0.5 * (a + b),
            (Some(a), None) | (None, Some(a)) => *a,
            (None, None) => 0.0,
        }
    };
    let h = (grid.omega_max - grid.omega_min) / (q.len() - 1) as f64;
    let mut sum = 0.0;
    for k in 0..q.len() {
        if !q[k].is_finite() {
            excised = true;
        }
        let weight = if k == 0 || k == q.len() - 1 { 0.5 } else { 1.0 };
        sum += weight * finite(k);
    }
    (sum * h / TAU, excised)
}
