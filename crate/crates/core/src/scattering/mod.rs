//! Drift and input matrices of a chain and its frequency-domain scattering
//! matrix.
//!
//! The mode amplitudes obey `dc/dt = -A c - B c_in` and the outputs are
//! `c_out = c_in + B^T c`, so that
//!
//! ```text
//! S(w) = I - B^T (-i w I + A)^-1 B.
//! ```
//!
//! Microwave and intermediate modes sit at their laboratory frequencies on
//! the diagonal of `A` (`i w_mu + kappa_mu / 2`); the optical mode sits at
//! `-i delta + kappa_o / 2` in the pump frame. The single signal frequency
//! `w` passed to [`scattering_matrix`] is therefore the laboratory microwave
//! frequency, and the optical output is at `w_p + w`.

mod solve;

use std::io::Write;

use ndarray::{Array2, Axis};
use num_complex::Complex64;

pub use solve::{solve_complex, Solution, PIVOT_FLOOR, RESIDUAL_TOLERANCE};

use crate::error::{Error, Result};
use crate::model::ChainModel;

/// `A` (n x n) and `B` (n x m) of one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalMatrices {
    pub a: Array2<Complex64>,
    pub b: Array2<f64>,
}

impl DynamicalMatrices {
    pub fn mode_count(&self) -> usize {
        self.a.nrows()
    }

    pub fn port_count(&self) -> usize {
        self.b.ncols()
    }

    pub fn b_complex(&self) -> Array2<Complex64> {
        self.b.mapv(|x| Complex64::new(x, 0.0))
    }
}

/// Builds `A` and `B` for a chain.
pub fn assemble(model: &ChainModel) -> DynamicalMatrices {
    let n = model.mode_count();
    let mut a = Array2::<Complex64>::zeros((n, n));
    for (i, mode) in model.modes().iter().enumerate() {
        let frequency = if model.is_rotating_frame(i) {
            -model.pump().detuning
        } else {
            mode.frequency
        };
        a[[i, i]] = Complex64::new(0.5 * mode.total_loss(), frequency);
    }
    for (i, &g) in model.links().iter().enumerate() {
        a[[i, i + 1]] = Complex64::new(0.0, g);
        a[[i + 1, i]] = Complex64::new(0.0, g);
    }
    let mut b = Array2::<f64>::zeros((n, model.port_count()));
    for (j, port) in model.ports().iter().enumerate() {
        b[[port.mode, j]] = port.rate.sqrt();
    }
    DynamicalMatrices { a, b }
}

/// `S(w)` at one signal frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub omega: f64,
    pub s: Array2<Complex64>,
}

impl ScatteringMatrix {
    pub fn element(&self, out: usize, input: usize) -> Complex64 {
        self.s[[out, input]]
    }

    /// `|S_ij|^2`.
    pub fn power(&self, out: usize, input: usize) -> f64 {
        self.s[[out, input]].norm_sqr()
    }

    pub fn size(&self) -> usize {
        self.s.nrows()
    }

    /// `max_ij |(S^dagger S - I)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let sh = self.s.t().mapv(|z| z.conj());
        let mut p = sh.dot(&self.s);
        for i in 0..p.nrows() {
            p[[i, i]] -= Complex64::new(1.0, 0.0);
        }
        p.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `sum_j |S_ij|^2` for each output row.
    pub fn row_power_sums(&self) -> Vec<f64> {
        self.s
            .axis_iter(Axis(0))
            .map(|row| row.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }
}

/// Evaluates `S(w) = I - B^T (-i w I + A)^-1 B`.
pub fn scattering_matrix(model: &ChainModel, omega: f64) -> Result<ScatteringMatrix> {
    scattering_from_matrices(&assemble(model), omega)
}

/// Same as [`scattering_matrix`] for pre-assembled matrices, for callers that
/// sweep many frequencies.
pub fn scattering_from_matrices(mats: &DynamicalMatrices, omega: f64) -> Result<ScatteringMatrix> {
    if !omega.is_finite() {
        return Err(Error::Domain(format!("frequency must be finite, got {omega}")));
    }
    let mut m = mats.a.clone();
    for i in 0..m.nrows() {
        m[[i, i]].im -= omega;
    }
    let b = mats.b_complex();
    let sol = solve_complex(m.view(), b.view())?;
    if sol.residual > RESIDUAL_TOLERANCE {
        return Err(Error::Singular {
            pivot: f64::NAN,
            condition: sol.condition,
        });
    }
    let mut s = -b.t().dot(&sol.x);
    for j in 0..s.nrows() {
        s[[j, j]] += Complex64::new(1.0, 0.0);
    }
    Ok(ScatteringMatrix { omega, s })
}

/// Writes a complex matrix as CSV, one row per matrix row, each entry as a
/// `re,im` pair of columns.
pub fn write_complex_csv<W: Write>(mut out: W, matrix: &Array2<Complex64>) -> std::io::Result<()> {
    let header: Vec<String> = (0..matrix.ncols())
        .flat_map(|j| [format!("re_{j}"), format!("im_{j}")])
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for row in matrix.axis_iter(Axis(0)) {
        let cells: Vec<String> = row
            .iter()
            .flat_map(|z| [format!("{:.16e}", z.re), format!("{:.16e}", z.im)])
            .collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}
