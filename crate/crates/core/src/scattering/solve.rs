//! Dense complex linear solve for the small systems that appear in the
//! scattering computation (n of a few modes).

use ndarray::{Array2, ArrayView2, Axis};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivots smaller than this are treated as exact zeros.
pub const PIVOT_FLOOR: f64 = 1e-30;

/// Relative residual guaranteed by [`solve_complex`].
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

const MAX_REFINEMENTS: usize = 3;

#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Array2<Complex64>,
    /// 1-norm condition number `||M||_1 ||M^-1||_1`.
    pub condition: f64,
    /// `max|M X - RHS| / max|RHS|` (absolute residual when RHS is zero).
    pub residual: f64,
}

/// Row-permuted LU factors of a square matrix, stored in place.
struct Lu {
    lu: Array2<Complex64>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(m: ArrayView2<Complex64>) -> Result<Self> {
        let n = m.nrows();
        let mut lu = m.to_owned();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) =
                (k..n)
                    .map(|i| (i, lu[[i, k]].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot < PIVOT_FLOOR {
                let norm = one_norm(m);
                return Err(Error::Singular {
                    pivot,
                    condition: if pivot > 0.0 { norm / pivot } else { f64::INFINITY },
                });
            }
            if p != k {
                for j in 0..n {
                    lu.swap([k, j], [p, j]);
                }
                perm.swap(k, p);
            }
            let d = lu[[k, k]];
            for i in k + 1..n {
                let f = lu[[i, k]] / d;
                lu[[i, k]] = f;
                for j in k + 1..n {
                    let u = lu[[k, j]];
                    lu[[i, j]] -= f * u;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    fn solve_in_place(&self, rhs: &mut Array2<Complex64>) {
        let n = self.lu.nrows();
        let permuted = rhs.select(Axis(0), &self.perm);
        rhs.assign(&permuted);
        for c in 0..rhs.ncols() {
            for i in 0..n {
                let mut s = rhs[[i, c]];
                for j in 0..i {
                    s -= self.lu[[i, j]] * rhs[[j, c]];
                }
                rhs[[i, c]] = s;
            }
            for i in (0..n).rev() {
                let mut s = rhs[[i, c]];
                for j in i + 1..n {
                    s -= self.lu[[i, j]] * rhs[[j, c]];
                }
                rhs[[i, c]] = s / self.lu[[i, i]];
            }
        }
    }
}

fn one_norm(m: ArrayView2<Complex64>) -> f64 {
    m.columns()
        .into_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn max_abs(m: ArrayView2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn relative_residual(
    m: ArrayView2<Complex64>,
    x: &Array2<Complex64>,
    rhs: ArrayView2<Complex64>,
) -> (Array2<Complex64>, f64) {
    let r = &rhs - &m.dot(x);
    let scale = max_abs(rhs);
    let res = max_abs(r.view());
    (r, if scale > 0.0 { res / scale } else { res })
}

/// Solves `M X = RHS` by Gaussian elimination with partial pivoting followed
/// by up to three steps of iterative refinement.
pub fn solve_complex(m: ArrayView2<Complex64>, rhs: ArrayView2<Complex64>) -> Result<Solution> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Domain(format!("matrix must be square, got {}x{}", n, m.ncols())));
    }
    if rhs.nrows() != n {
        return Err(Error::Domain(format!(
            "right-hand side has {} rows, expected {n}",
            rhs.nrows()
        )));
    }
    let lu = Lu::factor(m)?;
    let mut x = rhs.to_owned();
    lu.solve_in_place(&mut x);

    let (mut r, mut residual) = relative_residual(m, &x, rhs);
    for _ in 0..MAX_REFINEMENTS {
        if residual <= 0.1 * RESIDUAL_TOLERANCE {
            break;
        }
        lu.solve_in_place(&mut r);
        x += &r;
        (r, residual) = relative_residual(m, &x, rhs);
    }

    let mut inverse = Array2::<Complex64>::eye(n);
    lu.solve_in_place(&mut inverse);
    let condition = one_norm(m) * one_norm(inverse.view());

    Ok(Solution { x, condition, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_returns_rhs() {
        let m = Array2::<Complex64>::eye(3);
        let rhs = array![[c(1.0, 2.0)], [c(-3.0, 0.5)], [c(0.0, 7.0)]];
        let sol = solve_complex(m.view(), rhs.view()).unwrap();
        assert_eq!(sol.x, rhs);
        assert_eq!(sol.residual, 0.0);
        assert!((sol.condition - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_system() {
        let m = array![[c(2.0, 0.0)]];
        let rhs = array![[c(4.0, 0.0)]];
        let sol = solve_complex(m.view(), rhs.view()).unwrap();
        assert_eq!(sol.x[[0, 0]], c(2.0, 0.0));
    }

    #[test]
    fn random_well_conditioned_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut m = Array2::from_shape_fn((5, 5), |_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            for i in 0..5 {
                m[[i, i]] += c(5.0, 0.0);
            }
            let rhs = Array2::from_shape_fn((5, 3), |_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let sol = solve_complex(m.view(), rhs.view()).unwrap();
            let r = &m.dot(&sol.x) - &rhs;
            let rel = max_abs(r.view()) / max_abs(rhs.view());
            assert!(rel < 1e-12, "residual {rel}");
            assert!(sol.residual < 1e-12);
            assert!(sol.condition >= 1.0 && sol.condition < 100.0);
        }
    }

    #[test]
    fn needs_pivoting() {
        let m = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let rhs = array![[c(3.0, 0.0)], [c(5.0, 0.0)]];
        let sol = solve_complex(m.view(), rhs.view()).unwrap();
        assert_eq!(sol.x, array![[c(5.0, 0.0)], [c(3.0, 0.0)]]);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = array![[c(1.0, 1.0), c(2.0, 2.0)], [c(0.5, 0.5), c(1.0, 1.0)]];
        let rhs = array![[c(1.0, 0.0)], [c(1.0, 0.0)]];
        match solve_complex(m.view(), rhs.view()) {
            Err(Error::Singular { pivot, .. }) => assert!(pivot < PIVOT_FLOOR),
            other => panic!("expected singular error, got {other:?}"),
        }
        let zero = Array2::<Complex64>::zeros((2, 2));
        assert!(matches!(
            solve_complex(zero.view(), rhs.view()),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn shape_errors() {
        let m = Array2::<Complex64>::zeros((2, 3));
        let rhs = Array2::<Complex64>::zeros((2, 1));
        assert!(matches!(solve_complex(m.view(), rhs.view()), Err(Error::Domain(_))));
        let m = Array2::<Complex64>::eye(2);
        let rhs = Array2::<Complex64>::zeros((3, 1));
        assert!(matches!(solve_complex(m.view(), rhs.view()), Err(Error::Domain(_))));
    }
}
