use crate::error::{Error, Result};
use crate::metrics::cooperativity;
use crate::model::{ChainModel, Topology};
use crate::scattering::{assemble, scattering_from_matrices, DynamicalMatrices};

const ZOOM_POINTS: usize = 401;
const ZOOM_ROUNDS: usize = 40;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub omega: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericBandwidth {
    /// Full width at half maximum [rad/s].
    pub fwhm: f64,
    pub peak: Peak,
    /// Lower half-maximum crossing.
    pub lower: f64,
    /// Upper half-maximum crossing.
    pub upper: f64,
}

/// Dynamically broadened linewidth.
///
/// One stage: `kappa_m (1 + C_em + C_om)`. Zero stage:
/// `kappa_slow (1 + C_eo)` with `kappa_slow` the narrower of the two modes.
/// Longer chains: the narrowest interior mode after broadening by both of
/// its neighbours, a heuristic rather than an exact result.
pub fn bandwidth_analytic(model: &ChainModel) -> f64 {
    let kappa = |i: usize| model.mode(i).total_loss();
    let links = model.links();
    let link_c = |i: usize| cooperativity(links[i], kappa(i), kappa(i + 1));
    match model.topology() {
        Topology::ZeroStage => kappa(0).min(kappa(1)) * (1.0 + link_c(0)),
        _ => (1..model.mode_count() - 1)
            .map(|i| kappa(i) * (1.0 + link_c(i - 1) + link_c(i)))
            .fold(f64::INFINITY, f64::min),
    }
}

struct Scan {
    mats: DynamicalMatrices,
    input: usize,
    output: usize,
    center: f64,
    /// Half-width of the region the scan may explore [rad/s].
    reach: f64,
    /// Smallest nonzero mode linewidth.
    finest: f64,
}

impl Scan {
    fn new(model: &ChainModel) -> Scan {
        let center = model.center_frequency();
        let spread = (0..model.mode_count())
            .map(|i| {
                let f = if model.is_rotating_frame(i) {
                    -model.pump().detuning
                } else {
                    model.mode(i).frequency
                };
                (f - center).abs()
            })
            .fold(0.0, f64::max);
        let rates: f64 =
            model.modes().iter().map(|m| m.total_loss()).sum::<f64>() + 2.0 * model.links().iter().sum::<f64>();
        let finest = model
            .modes()
            .iter()
            .map(|m| m.total_loss())
            .filter(|&k| k > 0.0)
            .fold(f64::INFINITY, f64::min);
        Scan {
            mats: assemble(model),
            input: model.input_port(),
            output: model.output_port(),
            center,
            reach: 10.0 * (rates + spread),
            finest,
        }
    }

    fn eta(&self, omega: f64) -> Result<f64> {
        Ok(scattering_from_matrices(&self.mats, omega)?.power(self.output, self.input))
    }

    fn peak(&self) -> Result<Peak> {
        let (mut lo, mut hi) = (self.center - self.reach, self.center + self.reach);
        let mut best = Peak {
            omega: self.center,
            eta: self.eta(self.center)?,
        };
        for _ in 0..ZOOM_ROUNDS {
            let step = (hi - lo) / (ZOOM_POINTS - 1) as f64;
            for k in 0..ZOOM_POINTS {
                let w = lo + step * k as f64;
                let eta = self.eta(w)?;
                if eta > best.eta {
                    best = Peak { omega: w, eta };
                }
            }
            lo = best.omega - step;
            hi = best.omega + step;
            if step <= f64::EPSILON * best.omega.abs().max(self.reach) {
                break;
            }
        }
        Ok(best)
    }

    /// Offset from `peak` at which the efficiency first drops below half of
    /// the peak value, searching in direction `sign`.
    fn half_crossing(&self, peak: Peak, sign: f64) -> Result<f64> {
        let half = 0.5 * peak.eta;
        let at = |offset: f64| self.eta(peak.omega + sign * offset);
        let mut inside = 1e-3 * self.finest;
        let mut rounds = 0;
        while at(inside)? < half {
            inside *= 0.125;
            rounds += 1;
            if rounds > 60 {
                return Err(Error::Window(
                    "efficiency peak narrower than numerical resolution".into(),
                ));
            }
        }
        let mut outside = 2.0 * inside;
        while at(outside)? >= half {
            inside = outside;
            outside *= 2.0;
            if outside > 10.0 * self.reach {
                return Err(Error::Window(format!(
                    "efficiency stays above half maximum within {:.3e} rad/s of the peak",
                    10.0 * self.reach
                )));
            }
        }
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (inside + outside);
            if mid <= inside || mid >= outside || outside - inside <= 1e-12 * outside {
                break;
            }
            if at(mid)? >= half {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(0.5 * (inside + outside))
    }
}

/// Locates the efficiency maximum by repeated grid refinement around the
/// best sample, starting from a window that covers every mode and coupling.
pub fn find_peak(model: &ChainModel) -> Result<Peak> {
    Scan::new(model).peak()
}

/// Full width at half maximum of `eta(w)`, from the peak outward to the
/// half-maximum crossing on each side, refined by bisection.
pub fn bandwidth_numeric(model: &ChainModel) -> Result<NumericBandwidth> {
    let scan = Scan::new(model);
    let peak = scan.peak()?;
    if peak.eta.is_nan() || peak.eta <= 0.0 {
        return Err(Error::Window(
            "efficiency vanishes everywhere in the scan window".into(),
        ));
    }
    let up = scan.half_crossing(peak, 1.0)?;
    let down = scan.half_crossing(peak, -1.0)?;
    Ok(NumericBandwidth {
        fwhm: up + down,
        peak,
        lower: peak.omega - down,
        upper: peak.omega + up,
    })
}
