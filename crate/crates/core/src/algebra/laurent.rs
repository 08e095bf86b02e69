//! Sparse Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! One type, [`LaurentPoly`], is generic over its exponent lattice: `i64` for
//! one variable and `(i64, i64)` for two. Exponents of the two-variable ring
//! are ordered lexicographically, which is a translation-invariant total order
//! and therefore a valid monomial order for leading-term division.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent lattice of a Laurent ring (`Z` or `Z^2`).
pub trait Exponent: Copy + Ord + fmt::Debug + Send + Sync {
    fn origin() -> Self;
    fn plus(self, other: Self) -> Self;
    fn minus(self, other: Self) -> Self;
    fn comp_min(self, other: Self) -> Self;
    fn comp_max(self, other: Self) -> Self;
    /// Componentwise `self <= other`.
    fn comp_le(self, other: Self) -> bool;
}

impl Exponent for i64 {
    fn origin() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self, other: Self) -> Self {
        self - other
    }
    fn comp_min(self, other: Self) -> Self {
        self.min(other)
    }
    fn comp_max(self, other: Self) -> Self {
        self.max(other)
    }
    fn comp_le(self, other: Self) -> bool {
        self <= other
    }
}

impl Exponent for (i64, i64) {
    fn origin() -> Self {
        (0, 0)
    }
    fn plus(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
    fn minus(self, other: Self) -> Self {
        (self.0 - other.0, self.1 - other.1)
    }
    fn comp_min(self, other: Self) -> Self {
        (self.0.min(other.0), self.1.min(other.1))
    }
    fn comp_max(self, other: Self) -> Self {
        (self.0.max(other.0), self.1.max(other.1))
    }
    fn comp_le(self, other: Self) -> bool {
        self.0 <= other.0 && self.1 <= other.1
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

/// Laurent polynomial in one variable `t`.
pub type LaurentPoly1 = LaurentPoly<i64>;
/// Laurent polynomial in two variables.
pub type LaurentPoly2 = LaurentPoly<(i64, i64)>;

impl<E: Exponent> LaurentPoly<E> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, E::origin())
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: E) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (E, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: E, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (E, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: E) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Largest term in the exponent order.
    pub fn leading(&self) -> Option<(E, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Smallest term in the exponent order.
    pub fn trailing(&self) -> Option<(E, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Componentwise exponent bounding box.
    pub fn exponent_box(&self) -> Option<(E, E)> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), &e| (lo.comp_min(e), hi.comp_max(e))))
    }

    /// Multiply by the monomial with exponent `shift`.
    pub fn shift(&self, shift: E) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e.plus(shift), c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Image under an arbitrary map on exponents, collecting like terms.
    pub fn map_exponents<F: Exponent>(&self, f: impl Fn(E) -> F) -> LaurentPoly<F> {
        let mut out = LaurentPoly::<F>::zero();
        for (e, c) in &self.terms {
            out.add_term(f(*e), c.clone());
        }
        out
    }

    /// Number of sign changes in the coefficient sequence (exponent order).
    pub fn sign_variations(&self) -> usize {
        let signs: Vec<bool> = self.terms.values().map(|c| c.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Exact quotient in the Laurent ring, or `None` when `divisor` does not
    /// divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_exp, lead_coeff) = divisor.leading()?;
        let lead_coeff = lead_coeff.clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        // For an exact quotient, its exponent box is box(self) - box(divisor).
        let (num_lo, num_hi) = self.exponent_box()?;
        let (den_lo, den_hi) = divisor.exponent_box()?;
        let q_lo = num_lo.minus(den_lo);
        let q_hi = num_hi.minus(den_hi);
        if !q_lo.comp_le(q_hi) {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading() {
            let qe = e.minus(lead_exp);
            if !(q_lo.comp_le(qe) && qe.comp_le(q_hi)) {
                return None;
            }
            let (qc, r) = c.div_rem(&lead_coeff);
            if !r.is_zero() {
                return None;
            }
            let step = Self::monomial(qc, qe);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Representative of the class of `self` modulo units `±monomial`:
    /// the lexicographically least term is moved to the origin and the sign
    /// is fixed so that the leading coefficient is positive.
    pub fn unit_normalized(&self) -> Self {
        let Some((low, _)) = self.trailing() else {
            return Self::zero();
        };
        let shifted = self.shift(E::origin().minus(low));
        match shifted.leading() {
            Some((_, c)) if c.is_negative() => -&shifted,
            _ => shifted,
        }
    }

    /// Equality up to multiplication by `±monomial`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.unit_normalized() == other.unit_normalized()
    }
}

impl LaurentPoly1 {
    pub fn min_exp(&self) -> Option<i64> {
        self.trailing().map(|(e, _)| e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.leading().map(|(e, _)| e)
    }

    /// `max_exp - min_exp`, the degree after clearing negative powers.
    pub fn span(&self) -> usize {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as usize,
            _ => 0,
        }
    }

    /// Shift so that the lowest exponent is zero.
    pub fn to_polynomial(&self) -> Self {
        match self.min_exp() {
            Some(lo) => self.shift(-lo),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e - 1, c * BigInt::from(e))))
    }

    /// `p(t^k)`.
    pub fn compose_power(&self, k: i64) -> Self {
        self.map_exponents(|e| e * k)
    }

    /// `p(1/t)`.
    pub fn reciprocal(&self) -> Self {
        self.compose_power(-1)
    }

    /// `p(-t)`.
    pub fn negate_variable(&self) -> Self {
        LaurentPoly::from_terms(
            self.terms().map(|(e, c)| (e, if e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() })),
        )
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms().map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * t.powi(e as i32)).sum()
    }

    /// `p(t) / |t|^k` and `p'(t) / |t|^k` with `k` chosen so that no term
    /// overflows; the sign of `p(t)` is preserved for `t != 0`.
    pub fn eval_scaled_f64(&self, t: f64) -> (f64, f64) {
        if self.is_zero() {
            return (0.0, 0.0);
        }
        let k = if t.abs() >= 1.0 { self.max_exp().unwrap() } else { self.min_exp().unwrap() };
        let mut value = 0.0;
        let mut slope = 0.0;
        for (e, c) in self.terms() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let sign = if t < 0.0 && e.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
            let mag = t.abs().powi((e - k) as i32);
            value += c * sign * mag;
            // p'(t)/|t|^k term: e c t^(e-1) / |t|^k
            slope += c * e as f64 * sign * mag / t;
        }
        (value, slope)
    }

    /// Exact sign of `p(x)` at a rational point (`x != 0` when `p` has
    /// negative exponents).
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let Some(lo) = self.min_exp() else {
            return 0;
        };
        // p(n/d) * d^hi * (n/d)^(-lo) = sum c_e n^(e-lo) d^(hi-e); d > 0.
        let hi = self.max_exp().unwrap();
        let n = x.numer();
        let d = x.denom();
        if lo != 0 && n.is_zero() {
            return 0;
        }
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            acc += c * num_traits::pow(n.clone(), (e - lo) as usize)
                * num_traits::pow(d.clone(), (hi - e) as usize);
        }
        let mut s = sign_of(&acc);
        // p(x) = x^lo * acc / d^(hi - lo), and x^lo has the sign of n^lo.
        if n.is_negative() && lo.rem_euclid(2) == 1 {
            s = -s;
        }
        s
    }

    /// Polynomial long division `self = q * divisor + r` with `deg r < deg
    /// divisor`, after clearing negative powers. Requires the quotient to be
    /// integral.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let (Some(d_lo), Some(d_hi)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::NonExactDivision("division by zero polynomial".into()));
        };
        let Some(n_lo) = self.min_exp() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let num = self.shift(-n_lo);
        let den = divisor.shift(-d_lo);
        let den_deg = d_hi - d_lo;
        let lead = den.coeff(den_deg);
        let mut rem = num;
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading() {
            if e < den_deg {
                break;
            }
            let (qc, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision(format!(
                    "leading coefficient {lead} does not divide {c}"
                )));
            }
            let step = Self::monomial(qc, e - den_deg);
            rem = &rem - &(&step * &den);
            quot = &quot + &step;
        }
        Ok((quot.shift(n_lo - d_lo), rem.shift(n_lo)))
    }

    pub fn content(&self) -> BigInt {
        self.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }
}

impl LaurentPoly2 {
    /// Replace each variable by a monomial in the new variables: the first
    /// variable by `images[0]`, the second by `images[1]`.
    pub fn substitute_monomials(&self, images: [(i64, i64); 2]) -> Self {
        let [(a0, a1), (b0, b1)] = images;
        self.map_exponents(|(i, j)| (i * a0 + j * b0, i * a1 + j * b1))
    }

    /// Specialize both variables to powers of a single variable `t`.
    pub fn specialize(&self, powers: [i64; 2]) -> LaurentPoly1 {
        self.map_exponents(|(i, j)| i * powers[0] + j * powers[1])
    }

    /// `p(sx * x, sy * y)` for signs `sx, sy` in `{1, -1}`.
    pub fn flip_signs(&self, sx: i64, sy: i64) -> Self {
        LaurentPoly::from_terms(self.terms().map(|((i, j), c)| {
            let mut s = 1;
            if sx < 0 && i.rem_euclid(2) == 1 {
                s = -s;
            }
            if sy < 0 && j.rem_euclid(2) == 1 {
                s = -s;
            }
            ((i, j), c * BigInt::from(s))
        }))
    }

    /// Unit representative whose Newton polygon is centred at the origin
    /// when both exponent spans are even, with positive leading coefficient.
    pub fn balanced(&self) -> Self {
        let Some((lo, hi)) = self.exponent_box() else {
            return Self::zero();
        };
        let shift = (-Integer::div_floor(&(lo.0 + hi.0), &2), -Integer::div_floor(&(lo.1 + hi.1), &2));
        let p = self.shift(shift);
        match p.leading() {
            Some((_, c)) if c.is_negative() => -&p,
            _ => p,
        }
    }

    /// Render with the given variable names.
    pub fn display_with<'a>(&'a self, vars: [&'a str; 2]) -> impl fmt::Display + 'a {
        Display2 { poly: self, vars }
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &BigInt,
    monomial: &str,
) -> fmt::Result {
    let neg = coeff.is_negative();
    let mag = coeff.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    if monomial.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        f.write_str(monomial)
    } else {
        write!(f, "{mag}*{monomial}")
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().rev().enumerate() {
            write_term(f, k == 0, c, &power("t", e))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly1({self})")
    }
}

struct Display2<'a> {
    poly: &'a LaurentPoly2,
    vars: [&'a str; 2],
}

impl fmt::Display for Display2<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.poly.terms().rev().enumerate() {
            let mono = [power(self.vars[0], i), power(self.vars[1], j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            write_term(f, k == 0, c, &mono)?;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(["x", "y"]).fmt(f)
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

impl<E: Exponent> Add for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn add(self, rhs: &LaurentPoly<E>) -> LaurentPoly<E> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<E: Exponent> Sub for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn sub(self, rhs: &LaurentPoly<E>) -> LaurentPoly<E> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<E: Exponent> Mul for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn mul(self, rhs: &LaurentPoly<E>) -> LaurentPoly<E> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.plus(*e2), c1 * c2);
            }
        }
        out
    }
}

impl<E: Exponent> Neg for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn neg(self) -> LaurentPoly<E> {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<E: Exponent> $tr for LaurentPoly<E> {
            type Output = LaurentPoly<E>;
            fn $m(self, rhs: LaurentPoly<E>) -> LaurentPoly<E> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<E: Exponent> Neg for LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn neg(self) -> LaurentPoly<E> {
        -&self
    }
}
