//! Lobachevsky function and Bloch-Wigner dilogarithm.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

const BERNOULLI_TERMS: usize = 40;

/// `B_0..B_{2N}` as `f64`, from the exact recurrence
/// `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
fn bernoulli() -> &'static [f64] {
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| {
        let n = 2 * BERNOULLI_TERMS + 2;
        let mut b: Vec<BigRational> = Vec::with_capacity(n);
        b.push(BigRational::from_integer(1.into()));
        for m in 1..n {
            let mut binom = num_bigint::BigInt::from(1);
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += bk * &binom;
                // C(m+1, k+1) from C(m+1, k).
                binom = binom * (m + 1 - k) / (k + 1);
            }
            b.push(-acc / BigRational::from_integer((m + 1).into()));
        }
        b.iter().map(|x| x.to_f64().unwrap()).collect()
    })
}

/// Lobachevsky function `L(theta) = -int_0^theta log|2 sin u| du`.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    // pi-periodic and odd: reduce to [-pi/2, pi/2].
    let mut x = theta - PI * (theta / PI).round();
    if x > FRAC_PI_2 {
        x -= PI;
    }
    if x == 0.0 {
        return 0.0;
    }
    let b = bernoulli();
    let mut sum = x * (1.0 - (2.0 * x.abs()).ln());
    let x2 = x * x;
    let mut pow = x; // x^(2n+1)
    let mut four_n = 1.0; // 2^(2n)
    let mut fact = 1.0; // (2n+1)!
    for n in 1..=BERNOULLI_TERMS {
        pow *= x2;
        four_n *= 4.0;
        fact *= ((2 * n) * (2 * n + 1)) as f64;
        let term = four_n * b[2 * n].abs() / (2 * n) as f64 / fact * pow;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// `Li_2(w)` from the Bernoulli series in `-log(1 - w)`; accurate for
/// `|w| <= 1`, `Re w <= 1/2`.
fn li2_reduced(w: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - w).ln();
    let b = bernoulli();
    // sum_{n>=0} B_n u^(n+1) / (n+1)!
    let mut sum = u - u * u / 4.0;
    let u2 = u * u;
    let mut pow = u; // u^(2k+1)
    let mut fact = 1.0; // (2k+1)!
    for k in 1..=BERNOULLI_TERMS {
        pow *= u2;
        fact *= ((2 * k) * (2 * k + 1)) as f64;
        let term = pow * (b[2 * k] / fact);
        sum += term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    sum
}

/// Bloch-Wigner dilogarithm `D(z) = Im Li_2(z) + arg(1 - z) log|z|`.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 || z.is_nan() {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    // D(z) = D(1 - 1/z) = D(1/(1 - z)) = -D(1/z) = -D(1 - z) = -D(z/(z - 1)).
    let images = [
        (z, 1.0),
        (one - one / z, 1.0),
        (one / (one - z), 1.0),
        (one / z, -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, sign) = images
        .into_iter()
        .filter(|(w, _)| w.norm() <= 1.0 + 1e-12 && w.re <= 0.5 + 1e-12)
        .min_by(|x, y| x.0.norm().total_cmp(&y.0.norm()))
        .unwrap_or((z, 1.0));
    let d = li2_reduced(w).im + (one - w).arg() * w.norm().ln();
    sign * d
}

/// Volume of the ideal tetrahedron with shape `z`.
pub fn tet_volume(z: Complex64) -> Result<f64> {
    if z.norm() < 1e-300 || (z - 1.0).norm() < 1e-300 {
        return Err(Error::DegenerateShape(format!("{z}")));
    }
    Ok(bloch_wigner(z))
}

/// Same volume from the dihedral angles `arg z`, `arg 1/(1-z)`, `arg (1-1/z)`.
pub fn tet_volume_from_angles(z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    lobachevsky(z.arg()) + lobachevsky((one / (one - z)).arg()) + lobachevsky((one - one / z).arg())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `-int_0^theta log(2 sin u) du` by composite Simpson on the smooth part
    /// `log(2 sin u / u)`; the `log u` part is integrated in closed form.
    fn lobachevsky_quadrature(theta: f64) -> f64 {
        let n = 4000;
        let h = theta / n as f64;
        let g = |u: f64| if u == 0.0 { 2f64.ln() } else { (2.0 * u.sin() / u).ln() };
        let mut s = g(0.0) + g(theta);
        for k in 1..n {
            s += g(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        let smooth = s * h / 3.0;
        -(smooth + theta * theta.ln() - theta)
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli();
        assert_eq!(b[1], -0.5);
        assert!((b[2] - 1.0 / 6.0).abs() < 1e-16);
        assert!((b[12] + 691.0 / 2730.0).abs() < 1e-14);
        assert_eq!(b[3], 0.0);
    }

    #[test]
    fn lobachevsky_special_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(FRAC_PI_2).abs() < 1e-15);
        assert!((8.0 * lobachevsky(PI / 4.0) - 3.6638623767088).abs() < 1e-9);
        for theta in [0.1, 0.7, 1.2, 1.5] {
            assert!((lobachevsky(theta) - lobachevsky_quadrature(theta)).abs() < 1e-10);
            assert!((lobachevsky(-theta) + lobachevsky(theta)).abs() < 1e-15);
            assert!((lobachevsky(theta + PI) - lobachevsky(theta)).abs() < 1e-13);
        }
    }

    #[test]
    fn regular_tetrahedron() {
        let z = Complex64::new(0.5, 3f64.sqrt() / 2.0);
        let oracle = 3.0 * lobachevsky_quadrature(PI / 3.0);
        assert!((oracle - 1.0149416064).abs() < 1e-9);
        assert!((bloch_wigner(z) - oracle).abs() < 1e-10);
    }

    #[test]
    fn conjugation_and_angle_formula() {
        for &(x, y) in &[(0.3, 0.2), (-1.5, 0.7), (2.0, 3.0), (0.5, 0.01), (0.99, 0.5), (1e-3, 1e-3), (40.0, 2.0)] {
            let z = Complex64::new(x, y);
            assert!((bloch_wigner(z.conj()) + bloch_wigner(z)).abs() < 1e-14);
            assert!((bloch_wigner(z) - tet_volume_from_angles(z)).abs() < 1e-12, "{z}");
        }
    }

    #[test]
    fn degenerate_shapes() {
        assert!(tet_volume(Complex64::new(0.0, 0.0)).is_err());
        assert!(tet_volume(Complex64::new(1.0, 0.0)).is_err());
        assert!(tet_volume(Complex64::new(0.5, 0.5)).unwrap() > 0.0);
    }
}
