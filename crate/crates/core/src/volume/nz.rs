//! Neumann-Zagier volume estimates for fillings of W.

use std::f64::consts::PI;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use super::solver::{solve_filled, SolveOptions};
use crate::error::Result;
use crate::filling::{CohomologyClass, EpsilonTriple};

/// Volume of W, four times Catalan's constant.
pub const V8: f64 = 3.66386237670887606;

/// `5(a^2 + b^2) / (1 + 25^eps)`.
pub fn n_phi(phi: &CohomologyClass) -> Ratio<i64> {
    let (a, b) = (phi.a(), phi.b());
    let eps = EpsilonTriple::of(a, b).eps;
    Ratio::new(5 * (a * a + b * b), 1 + 25i64.pow(eps as u32))
}

/// Cusp-shape quadratic form evaluated on the two filling curves,
/// `5^(1 - 2 eps_k) (a^2 + b^2)`.
pub fn q_forms(phi: &CohomologyClass) -> [Ratio<i64>; 2] {
    let (a, b) = (phi.a(), phi.b());
    let e = EpsilonTriple::of(a, b);
    let s = a * a + b * b;
    [e.eps1, e.eps2].map(|ek| if ek == 0 { Ratio::from_integer(5 * s) } else { Ratio::new(s, 5) })
}

pub fn nz_order2(phi: &CohomologyClass) -> f64 {
    V8 - PI * PI / n_phi(phi).to_f64().unwrap()
}

pub fn nz_order4(phi: &CohomologyClass) -> f64 {
    let (a, b) = (phi.a() as f64, phi.b() as f64);
    let e = EpsilonTriple::of(phi.a(), phi.b());
    let s = a * a + b * b;
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    if e.eps == 0 {
        order4_eps0(a, b)
    } else {
        let sign = if e.eps1 == 0 { 1.0 } else { -1.0 };
        let quartic = 901.0 * (a.powi(4) + b.powi(4)) + sign * 2808.0 * (a * b.powi(3) - a.powi(3) * b)
            - 6336.0 * a * a * b * b;
        V8 - 26.0 * pi2 / (5.0 * s) + pi4 * quartic / (375.0 * s.powi(4))
    }
}

fn order4_eps0(a: f64, b: f64) -> f64 {
    let s = a * a + b * b;
    let pi2 = PI * PI;
    V8 - 2.0 * pi2 / (5.0 * s) - pi2 * pi2 * (7.0 * a.powi(4) + 144.0 * a * a * b * b + 7.0 * b.powi(4)) / (1875.0 * s.powi(4))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeEstimates {
    /// Volume of the solved structure, when a solve was requested.
    pub exact: Option<f64>,
    pub n_phi: Ratio<i64>,
    pub order2: f64,
    pub order4: f64,
}

impl VolumeEstimates {
    pub fn formulas(phi: &CohomologyClass) -> Self {
        VolumeEstimates { exact: None, n_phi: n_phi(phi), order2: nz_order2(phi), order4: nz_order4(phi) }
    }
}

/// Formula values together with the solved volume.
pub fn volume_estimates(phi: &CohomologyClass, opts: &SolveOptions) -> Result<VolumeEstimates> {
    let sol = solve_filled(phi, opts)?;
    Ok(VolumeEstimates { exact: Some(sol.volume()), ..VolumeEstimates::formulas(phi) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(a: i64, b: i64) -> CohomologyClass {
        CohomologyClass::new(a, b).unwrap()
    }

    #[test]
    fn n_phi_values() {
        assert_eq!(n_phi(&class(9, 2)), Ratio::new(425, 26));
        assert_eq!(n_phi(&class(7, 2)), Ratio::new(5 * 53, 2));
        assert_eq!(n_phi(&class(13, 2)), Ratio::new(5 * 173, 2));
    }

    #[test]
    fn q_forms_sum_to_n_phi() {
        for a in 1..60 {
            for b in 0..a {
                let Ok(phi) = CohomologyClass::new(a, b) else { continue };
                let [q1, q2] = q_forms(&phi);
                assert_eq!(q1.recip() + q2.recip(), n_phi(&phi).recip(), "({a},{b})");
            }
        }
    }

    #[test]
    fn order_two_and_four_at_9_2() {
        let phi = class(9, 2);
        assert!((nz_order2(&phi) - (V8 - PI * PI * 26.0 / 425.0)).abs() < 1e-15);
        assert!((nz_order2(&phi) - 3.06007).abs() < 1e-5);
        // eps = eps_1 = 1 at (9, 2): 2a + b = 20.
        let quartic = PI.powi(4) * (901.0 * (6561.0 + 16.0) - 2808.0 * (72.0 - 1458.0) - 6336.0 * 324.0)
            / (375.0 * 85f64.powi(4));
        assert!((nz_order4(&phi) - nz_order2(&phi) - quartic).abs() < 1e-14);
    }

    #[test]
    fn eps_zero_axis_correction() {
        let a = 7.0f64;
        let expected = V8 - 2.0 * PI * PI / (5.0 * a * a) - 7.0 * PI.powi(4) / (1875.0 * a.powi(4));
        assert!((order4_eps0(a, 0.0) - expected).abs() < 1e-14);
        assert_eq!(nz_order4(&class(7, 2)), order4_eps0(7.0, 2.0));
    }
}
