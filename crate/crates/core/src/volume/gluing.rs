//! Gluing equations of the four-tetrahedron triangulation of W and the
//! holonomies of its cusps.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dilog::bloch_wigner;

pub type C64 = Complex64;

const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Shape parameters of the four ideal tetrahedra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TetShapes {
    pub z: [C64; 4],
}

/// Logarithmic holonomies of the meridian `u_k` and longitude `v_k` of cusp `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Holonomy {
    pub u: [C64; 2],
    pub v: [C64; 2],
}

/// What the last two equations of the system pin down.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    /// `u_k = s * u_k*`.
    Cusp([C64; 2]),
    /// `p_k u_k - q_k v_k = s * 2 pi i` with primitive `(p_k, q_k)`.
    Filling([(i64, i64); 2]),
}

impl TetShapes {
    pub fn new(z: [C64; 4]) -> Self {
        TetShapes { z }
    }

    /// The complete structure in closed form.
    pub fn complete_exact() -> Self {
        let w = C64::new(1.0, 1.0);
        TetShapes { z: [w / 2.0, w, w, w] }
    }

    pub fn min_imag(&self) -> f64 {
        self.z.iter().map(|z| z.im).fold(f64::INFINITY, f64::min)
    }

    pub fn is_geometric(&self) -> bool {
        self.min_imag() > 0.0
    }

    /// Sum of Bloch-Wigner dilogarithms.
    pub fn volume(&self) -> f64 {
        self.z.iter().map(|&z| bloch_wigner(z)).sum()
    }

    /// Sums of principal logarithms of the individual factors.
    pub fn holonomy(&self) -> Holonomy {
        let [z1, z2, z3, z4] = self.z;
        let l = |x: C64| x.ln();
        let (a1, b1) = (l(z1), l(ONE - z1));
        let a2 = l(z2);
        let (a3, b3) = (l(z3), l(ONE - z3));
        let (a4, b4) = (l(z4), l(ONE - z4));
        let ipi = I * PI;
        Holonomy {
            u: [-(a1 + b1 + a2 + a4 + b4), -ipi + b1 + a3 - b3 - b4],
            v: [ipi + a2 + b3 + b4 - a4, a1 + a2 + b4 - b1 - a4],
        }
    }

    /// Edge equations `F_1`, `F_2`.
    pub fn edge_residuals(&self) -> [C64; 2] {
        let [z1, z2, z3, z4] = self.z;
        [z1 * (ONE - z2) * (ONE - z3) * (ONE - z4) + (ONE - z1), (ONE - z1) * z2 * z4 - z3]
    }

    /// Full system at continuation parameter `s`.
    pub fn residuals(&self, target: &Target, s: f64) -> [C64; 4] {
        let [f1, f2] = self.edge_residuals();
        let h = self.holonomy();
        match target {
            Target::Cusp(u) => [f1, f2, h.u[0] - u[0] * s, h.u[1] - u[1] * s],
            Target::Filling(pq) => {
                let rhs = I * (2.0 * PI * s);
                let cond = |k: usize| h.u[k] * pq[k].0 as f64 - h.v[k] * pq[k].1 as f64 - rhs;
                [f1, f2, cond(0), cond(1)]
            }
        }
    }

    /// Analytic Jacobian of [`residuals`](Self::residuals), row-major.
    pub fn jacobian(&self, target: &Target) -> [[C64; 4]; 4] {
        let [z1, z2, z3, z4] = self.z;
        let zero = C64::new(0.0, 0.0);
        let (w1, w3, w4) = (ONE - z1, ONE - z3, ONE - z4);
        let (r1, r2, r3, r4) = (ONE / z1, ONE / z2, ONE / z3, ONE / z4);
        let (s1, s3, s4) = (ONE / w1, ONE / w3, ONE / w4);
        let z2c = ONE - z2;
        let df1 = [z2c * w3 * w4 - ONE, -z1 * w3 * w4, -z1 * z2c * w4, -z1 * z2c * w3];
        let df2 = [-z2 * z4, w1 * z4, -ONE, w1 * z2];
        let du1 = [-(r1 - s1), -r2, zero, -(r4 - s4)];
        let dv1 = [zero, r2, -s3, -s4 - r4];
        let du2 = [-s1, zero, r3 + s3, s4];
        let dv2 = [r1 + s1, r2, zero, -s4 - r4];
        match target {
            Target::Cusp(_) => [df1, df2, du1, du2],
            Target::Filling(pq) => {
                let row = |du: [C64; 4], dv: [C64; 4], (p, q): (i64, i64)| {
                    let mut r = [zero; 4];
                    for j in 0..4 {
                        r[j] = du[j] * p as f64 - dv[j] * q as f64;
                    }
                    r
                };
                [df1, df2, row(du1, dv1, pq[0]), row(du2, dv2, pq[1])]
            }
        }
    }

    /// Products `U_1, V_1, U_2` of the holonomy factors.
    pub fn holonomy_products(&self) -> (C64, C64, C64) {
        let [z1, z2, z3, z4] = self.z;
        let u1 = ONE / (z1 * (ONE - z1) * z2 * z4 * (ONE - z4));
        let v1 = -z2 * (ONE - z3) * (ONE - z4) / z4;
        let u2 = -(ONE - z1) * z3 / ((ONE - z3) * (ONE - z4));
        (u1, v1, u2)
    }

    /// Value of the polynomial relation between `U_1`, `V_1` and `U_2` that
    /// holds on the deformation variety.
    pub fn horror_residual(&self) -> C64 {
        let (u1, v1, u2) = self.holonomy_products();
        horror_polynomial(u1, v1, u2)
    }
}

/// Relation between `U_1`, `V_1`, `U_2` cut out by the gluing equations.
pub fn horror_polynomial(u1: C64, v1: C64, u2: C64) -> C64 {
    let p = |x: C64, n: i32| x.powi(n);
    let m1 = v1 - ONE;
    let m1_4 = p(m1, 4);
    u2 * p(v1, 2) + p(u1, 6) * u2 * p(v1, 4)
        - u1 * u2 * p(v1, 2) * (3.0 - v1 + p(v1, 2)) * 2.0
        - p(u1, 5) * u2 * p(v1, 2) * (ONE - v1 + p(v1, 2) * 3.0) * 2.0
        - p(u1, 4)
            * (m1_4 * v1 + p(u2, 2) * m1_4 * v1
                + u2 * (-ONE + v1 * 4.0 - p(v1, 2) * 15.0 + p(v1, 3) * 12.0 - p(v1, 4) * 15.0))
        + p(u1, 2)
            * v1
            * (-m1_4 - p(u2, 2) * m1_4 + u2 * v1 * (15.0 - v1 * 12.0 + p(v1, 2) * 15.0 - p(v1, 3) * 4.0 + p(v1, 4)))
        + p(u1, 3) * v1 * (m1_4 + p(u2, 2) * m1_4 - u2 * (ONE + v1 * 4.0 + p(v1, 3) * 4.0 + p(v1, 4))) * 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_complete_structure() {
        let z = TetShapes::complete_exact();
        for f in z.edge_residuals() {
            assert!(f.norm() < 1e-15);
        }
        let h = z.holonomy();
        assert!(h.u[0].norm() < 1e-15 && h.u[1].norm() < 1e-15);
        assert!(h.v[0].norm() < 1e-15 && h.v[1].norm() < 1e-15);
        assert!((z.volume() - 3.66386237670887606).abs() < 1e-13);
        assert!(z.horror_residual().norm() < 1e-12);
    }

    #[test]
    fn all_i_is_not_a_solution() {
        let z = TetShapes::new([I; 4]);
        let [_, f2] = z.edge_residuals();
        assert!((f2 - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(z.horror_residual().norm() > 1.0);
    }
}
