//! Low-order coefficients of the potential near the complete structure,
//! fitted from solves with small prescribed meridian holonomy.

use rayon::prelude::*;

use super::gluing::C64;
use super::solver::{solve_for_u, SolveOptions};
use crate::error::{Error, Result};

/// Step sizes of the stencil.
pub const STENCIL: [f64; 3] = [0.01, 0.02, 0.04];
/// Largest accepted disagreement between the three-point and two-point
/// extrapolations.
pub const FIT_TOLERANCE: f64 = 1e-5;

/// Fitted `c_1`, `c_2`, `c_3` in
/// `v_1 = c_1 u_1 + 2 c_2 u_1^3 + c_3 u_1 u_2^2 + ...`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialCoeffs {
    pub c1: C64,
    pub c2: C64,
    pub c3: C64,
    pub residual: f64,
}

/// Value at `h = 0` of `A + B h^2 + C h^4` through three samples, and the
/// gap to the two-point value from the two smallest steps.
fn richardson(h: [f64; 3], f: [C64; 3]) -> (C64, f64) {
    let x = h.map(|h| h * h);
    // Lagrange weights at 0.
    let w = |i: usize, j: usize, k: usize| x[j] * x[k] / ((x[i] - x[j]) * (x[i] - x[k]));
    let three = f[0] * w(0, 1, 2) + f[1] * w(1, 0, 2) + f[2] * w(2, 0, 1);
    let two = (f[0] * x[1] - f[1] * x[0]) / (x[1] - x[0]);
    (three, (three - two).norm())
}

pub fn fit_potential_coeffs(opts: &SolveOptions) -> Result<PotentialCoeffs> {
    let v1 = |u1: f64, u2: f64| -> Result<C64> {
        let sol = solve_for_u([C64::new(u1, 0.0), C64::new(u2, 0.0)], opts)?;
        Ok(sol.shapes.holonomy().v[0])
    };
    let samples: Vec<(C64, C64)> =
        STENCIL.par_iter().map(|&h| Ok((v1(h, 0.0)?, v1(h, h)?))).collect::<Result<_>>()?;
    let axis: [C64; 3] = std::array::from_fn(|i| samples[i].0);
    let diag: [C64; 3] = std::array::from_fn(|i| samples[i].1);

    let (c1, r1) = richardson(STENCIL, std::array::from_fn(|i| axis[i] / STENCIL[i]));
    let cubic = |v: &[C64; 3]| richardson(STENCIL, std::array::from_fn(|i| (v[i] - c1 * STENCIL[i]) / STENCIL[i].powi(3)));
    let (k3, r3) = cubic(&axis);
    let (m, rm) = cubic(&diag);
    let residual = r1.max(r3).max(rm);
    if residual > FIT_TOLERANCE {
        return Err(Error::FitResidual(residual));
    }
    Ok(PotentialCoeffs { c1, c2: k3 / 2.0, c3: m - k3, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_removes_even_terms() {
        let f = |h: f64| C64::new(2.0 + 3.0 * h * h - 5.0 * h.powi(4), -1.0 + h * h);
        let (v, gap) = richardson(STENCIL, STENCIL.map(f));
        assert!((v - C64::new(2.0, -1.0)).norm() < 1e-12);
        assert!(gap > 0.0);
    }
}
