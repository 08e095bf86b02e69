//! Dilatations and invariant foliations of the monodromies of filled W.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{
    descartes_certificate, isolate_real_roots, refine_root, roots::cauchy_bound, DensePoly, LaurentPoly1,
    RefinedRoot, RootInterval,
};
use crate::error::{Error, Result};
use crate::filling::{select_mg, CohomologyClass, MgSelection};
use crate::traintrack::{lambda_polynomial, specialize};

/// Polynomials of at most this degree are isolated with a Sturm sequence;
/// larger ones go through the Descartes certificate first.
pub const STURM_DEGREE_LIMIT: usize = 100;

/// Width to which isolating intervals are bisected.
pub const REFINE_TOL: f64 = 1e-13;

/// Exact method that isolated the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMethod {
    Sturm,
    Descartes,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DilatationResult {
    /// `None` for polynomials that do not come from a valid class.
    pub phi: Option<CohomologyClass>,
    pub a: i64,
    pub b: i64,
    pub poly: LaurentPoly1,
    pub lambda: f64,
    pub log_lambda: f64,
    /// Exact isolating interval of `lambda`.
    pub interval: RootInterval,
    pub residual: f64,
    pub method: RootMethod,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Isolating interval of the largest real root of `p` above 1.
pub fn largest_root_above_one(p: &LaurentPoly1) -> Result<(RootInterval, RootMethod)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = p.span();
    if degree > STURM_DEGREE_LIMIT {
        if let Some(mut cert) = descartes_certificate(p, &[rat(1)], Some(&rat(3))) {
            if let Some(last) = cert.pop().filter(|iv| iv.lo >= rat(1)) {
                return Ok((last, RootMethod::Descartes));
            }
        }
    }
    let hi = cauchy_bound(&DensePoly::from_laurent(p)).max(rat(3));
    let roots = isolate_real_roots(p, &rat(1), &hi)?;
    let last = roots
        .into_iter()
        .next_back()
        .ok_or_else(|| Error::Consistency(format!("{p} has no real root above 1")))?;
    Ok((last, RootMethod::Sturm))
}

/// Largest real root of `p` above 1, refined.
pub fn polynomial_dilatation(p: &LaurentPoly1) -> Result<(RootInterval, RefinedRoot, RootMethod)> {
    let (interval, method) = largest_root_above_one(p)?;
    let refined = refine_root(p, &interval, REFINE_TOL);
    Ok((interval, refined, method))
}

fn result_from(phi: Option<CohomologyClass>, a: i64, b: i64, poly: LaurentPoly1) -> Result<DilatationResult> {
    let (interval, refined, method) = polynomial_dilatation(&poly)?;
    Ok(DilatationResult {
        phi,
        a,
        b,
        poly,
        lambda: refined.value,
        log_lambda: refined.value.ln(),
        interval,
        residual: refined.residual,
        method,
    })
}

/// Dilatation of the monodromy of the filling of `phi`.
pub fn dilatation(phi: &CohomologyClass) -> Result<DilatationResult> {
    phi.require_hyperbolic()?;
    result_from(Some(*phi), phi.a(), phi.b(), specialize(phi))
}

/// Largest root of `t^(2a) - t^(a+b) - t^a - t^(a-b) + 1` for any `a > b >= 0`,
/// whether or not `(a, b)` is a valid class.
pub fn lambda_shape_root(a: i64, b: i64) -> Result<DilatationResult> {
    if !(0 <= b && b < a) {
        return Err(Error::InvalidClass { a, b, reason: "polynomial shape needs a > b >= 0" });
    }
    result_from(None, a, b, lambda_polynomial(a, b))
}

/// Singularities of the invariant foliation on one cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CuspSingularities {
    pub count: i64,
    pub prongs: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoliationData {
    pub cusps: [CuspSingularities; 2],
    pub orientable: bool,
    pub hyperbolic: bool,
}

impl FoliationData {
    /// Sum of `2 - prongs` over all singularities.
    pub fn index_sum(&self) -> i64 {
        self.cusps.iter().map(|c| c.count * (2 - c.prongs)).sum()
    }
}

/// `5^eps_k` singularities with `(2a +- b) / 5^eps_k` prongs on cusp `k`.
pub fn foliation(phi: &CohomologyClass) -> FoliationData {
    let eps = phi.epsilons();
    let cusp = |k: usize, numer: i64| {
        let count = 5i64.pow(u32::from(eps.cusp(k)));
        CuspSingularities { count, prongs: numer / count }
    };
    FoliationData {
        cusps: [cusp(1, 2 * phi.a() + phi.b()), cusp(2, 2 * phi.a() - phi.b())],
        orientable: phi.is_orientable(),
        hyperbolic: phi.is_hyperbolic(),
    }
}

/// `sum (2 - prongs) == 4 - 4 genus`.
pub fn euler_poincare_check(phi: &CohomologyClass) -> bool {
    foliation(phi).index_sum() == 4 - 4 * phi.genus()
}

/// Polynomial whose largest root is `lambda_g`, by residue of `g`.
pub fn mg_polynomial_table(g: i64) -> Result<LaurentPoly1> {
    if g < 3 {
        return Err(Error::GenusOutOfRange(g));
    }
    if g == 4 {
        return Ok(lambda_polynomial(4, 1));
    }
    let p = match g.rem_euclid(5) {
        0 | 1 => LaurentPoly1::from_terms([(2 * g + 4, 1), (g + 3, -1), (g + 2, -1), (g + 1, -1), (0, 1)]),
        3 => {
            let b = match g.rem_euclid(30) {
                3 | 13 | 23 => 2,
                8 | 28 => 3,
                _ => 5,
            };
            LaurentPoly1::from_terms([(2 * g, 1), (g + b, -1), (g, -1), (g - b, -1), (0, 1)])
        }
        _ => {
            let a = g + 2;
            let b = (2..a)
                .find(|&b| matches!(b % 5, 2 | 3) && num_integer::Integer::gcd(&a, &b) == 1)
                .ok_or_else(|| Error::Consistency(format!("no admissible b for g = {g}")))?;
            LaurentPoly1::from_terms([(2 * g + 4, 1), (g + b + 2, -1), (g + 2, -1), (g - b + 2, -1), (0, 1)])
        }
    };
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MgDilatation {
    pub selection: MgSelection,
    pub result: DilatationResult,
}

/// Dilatation of `M_g`; the specialized polynomial is checked against
/// [`mg_polynomial_table`].
pub fn mg_dilatation(g: i64) -> Result<MgDilatation> {
    let selection = select_mg(g)?;
    let result = dilatation(&selection.phi)?;
    let table = mg_polynomial_table(g)?;
    if result.poly != table {
        return Err(Error::Consistency(format!("M_{g}: polynomial {} differs from table entry {table}", result.poly)));
    }
    Ok(MgDilatation { selection, result })
}

/// Largest roots of the Lanneau-Thiffeault polynomials `LT_{g+1,1}` and
/// `LT_{g+1,3}`.
pub fn hironaka_candidates(g: i64) -> Result<[DilatationResult; 2]> {
    if g < 3 {
        return Err(Error::GenusOutOfRange(g));
    }
    Ok([lambda_shape_root(g + 1, 1)?, lambda_shape_root(g + 1, 3)?])
}

/// `z(s) = 1 / log t*` where `t* > 1` solves `t + 1/t - 1 - t^s - t^-s = 0`.
///
/// In `L = log t` the equation reads `2 cosh L - 2 cosh(sL) - 1 = 0`, whose
/// left side is increasing in `L > 0` for `|s| < 1`.
pub fn entropy_direction(s: f64) -> Result<f64> {
    if !(s.abs() < 1.0) {
        return Err(Error::OutsideCone(s));
    }
    let f = |l: f64| 2.0 * l.cosh() - 2.0 * (s * l).cosh() - 1.0;
    let mut lo = 0.0;
    let mut hi = 3f64.ln();
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Consistency(format!("no entropy root for s = {s}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    Ok(1.0 / (0.5 * (lo + hi)))
}

/// `lambda_g^g`, computed as `exp(g log lambda_g)`.
pub fn asymptotic_check(g: i64) -> Result<f64> {
    let m = mg_dilatation(g)?;
    Ok((g as f64 * m.result.log_lambda).exp())
}

/// Exact factorization of the polynomial of the class `(9, 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Delta7Certificate {
    pub lambda_poly: LaurentPoly1,
    pub cyclotomic: LaurentPoly1,
    pub quotient: LaurentPoly1,
    pub remainder: LaurentPoly1,
    pub interval: RootInterval,
    pub root: f64,
    /// `|q(root)|` for the degree-14 factor `q`.
    pub factor_residual: f64,
}

/// `Lambda_{9,2} = (t^4 - t^3 + t^2 - t + 1) q(t)` with `lambda_7` a root of `q`.
pub fn delta7_certificate() -> Result<Delta7Certificate> {
    let lambda_poly = lambda_polynomial(9, 2);
    let cyclotomic = LaurentPoly1::from_terms([(4, 1), (3, -1), (2, 1), (1, -1), (0, 1)]);
    let (quotient, remainder) = lambda_poly.div_rem(&cyclotomic)?;
    if !remainder.is_zero() {
        return Err(Error::NonExactDivision(format!("remainder {remainder}")));
    }
    if &quotient * &cyclotomic != lambda_poly {
        return Err(Error::Consistency("product of factors differs from the original".into()));
    }
    let (interval, refined, _) = polynomial_dilatation(&quotient)?;
    Ok(Delta7Certificate {
        factor_residual: quotient.eval_f64(refined.value).abs(),
        root: refined.value,
        lambda_poly,
        cyclotomic,
        quotient,
        remainder,
        interval,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64, b: i64) -> CohomologyClass {
        CohomologyClass::new(a, b).unwrap()
    }

    #[test]
    fn dilatation_examples() {
        assert!((dilatation(&c(3, 2)).unwrap().lambda - 1.5061357).abs() < 5e-8);
        assert!((dilatation(&c(9, 2)).unwrap().lambda - 1.1154811).abs() < 5e-8);
        assert_eq!(dilatation(&c(2, 1)), Err(Error::NonHyperbolic { a: 2, b: 1 }));
    }

    #[test]
    fn foliation_examples() {
        let f = foliation(&c(9, 2));
        assert_eq!(f.cusps, [CuspSingularities { count: 5, prongs: 4 }, CuspSingularities { count: 1, prongs: 16 }]);
        assert!(f.orientable);
        assert_eq!(f.index_sum(), 4 - 4 * 7);
        let f = foliation(&c(2, 1));
        assert_eq!(f.cusps, [CuspSingularities { count: 5, prongs: 1 }, CuspSingularities { count: 1, prongs: 3 }]);
        assert!(!f.hyperbolic);
        assert!(!foliation(&c(4, 1)).orientable);
    }

    #[test]
    fn mg_examples() {
        let m = mg_dilatation(6).unwrap();
        assert_eq!(m.result.poly.to_string(), "t^16 - t^9 - t^8 - t^7 + 1");
        assert!((m.result.lambda - 1.1287609).abs() < 5e-8);
        let m = mg_dilatation(18).unwrap();
        assert_eq!(m.result.poly.to_string(), "t^36 - t^23 - t^18 - t^13 + 1");
        assert!((mg_dilatation(38).unwrap().result.lambda - 1.0257204).abs() < 5e-8);
    }

    #[test]
    fn hironaka_examples() {
        for (g, want) in [(8, 1.1135007), (13, 1.0726646), (3, 1.4012684)] {
            let [x, y] = hironaka_candidates(g).unwrap();
            assert!((x.lambda - want).abs() < 5e-8 || (y.lambda - want).abs() < 5e-8, "g = {g}");
        }
    }

    #[test]
    fn entropy_examples() {
        let golden = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((entropy_direction(0.0).unwrap() - 1.0 / golden.ln()).abs() < 1e-12);
        let tau = lambda_shape_root(2, 1).unwrap().lambda;
        assert!((entropy_direction(0.5).unwrap() - 1.0 / (2.0 * tau.ln())).abs() < 1e-10);
        assert!(matches!(entropy_direction(1.0), Err(Error::OutsideCone(_))));
        assert!(entropy_direction(0.999).unwrap() > 0.0);
    }

    #[test]
    fn asymptotic_small_genus() {
        assert!((asymptotic_check(3).unwrap() - 1.5061357f64.powi(3)).abs() < 1e-6);
    }

    #[test]
    fn delta7() {
        let cert = delta7_certificate().unwrap();
        assert!(cert.remainder.is_zero());
        assert_eq!(cert.quotient.to_string(), "t^14 + t^13 - t^9 - t^8 - t^7 - t^6 - t^5 + t + 1");
        assert!((cert.root - 1.11548110945659).abs() < 1e-11);
        assert!(cert.factor_residual < 1e-10);
    }

    #[test]
    fn descartes_and_sturm_agree() {
        for (a, b) in [(85, 2), (90, 7), (120, 1)] {
            let p = lambda_polynomial(a, b);
            let d = descartes_certificate(&p, &[rat(1)], Some(&rat(3))).unwrap().pop().unwrap();
            let s = isolate_real_roots(&p, &rat(1), &rat(3)).unwrap();
            assert_eq!(s.len(), 1);
            let x = refine_root(&p, &d, REFINE_TOL).value;
            let y = refine_root(&p, &s[0], REFINE_TOL).value;
            assert!((x - y).abs() < 1e-13);
        }
    }
}
