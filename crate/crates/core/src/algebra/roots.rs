//! Real-root isolation for integer polynomials.
//!
//! Two exact routes are provided. [`isolate_real_roots`] runs a Sturm
//! sequence on the square-free part of a dense polynomial and bisects with
//! rational midpoints. [`descartes_certificate`] handles very sparse, very
//! high degree inputs: Descartes' rule bounds the number of positive roots by
//! the number of coefficient sign variations, so exhibiting that many sign
//! changes at exact rational points isolates every positive root at once.
//! [`refine_root`] then narrows an isolating interval in double precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::laurent::{sign_of, LaurentPoly1};
use crate::error::{Error, Result};

/// Half-open interval `(lo, hi]` with rational endpoints containing exactly
/// one real root. When `lo == hi` the root is that rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

/// Dense integer polynomial, coefficients from degree 0 upward, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePoly(Vec<BigInt>);

impl DensePoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly(coeffs)
    }

    /// Dense form of `t^k p(t)` with `k = max(0, -min_exp)`.
    pub fn from_laurent(p: &LaurentPoly1) -> Self {
        let Some(lo) = p.min_exp() else {
            return DensePoly(Vec::new());
        };
        let shift = (-lo).max(0);
        let hi = p.max_exp().unwrap() + shift;
        let mut coeffs = vec![BigInt::zero(); hi as usize + 1];
        for (e, c) in p.terms() {
            coeffs[(e + shift) as usize] = c.clone();
        }
        DensePoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> Self {
        DensePoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the (positive) content.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        DensePoly(self.0.iter().map(|x| x / &c).collect())
    }

    fn neg(&self) -> Self {
        DensePoly(self.0.iter().map(|c| -c).collect())
    }

    /// Sign-preserving pseudo-remainder: `|lc(d)|^(deg - deg d + 1) * self mod d`.
    fn positive_prem(&self, d: &Self) -> Self {
        let dd = d.degree();
        let lc = d.leading().clone();
        let lc_abs = lc.abs();
        let lc_sign = if lc.is_negative() { -BigInt::one() } else { BigInt::one() };
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let coef = r[top].clone();
            // r <- |lc| r - sign(lc) coef x^(top-dd) d, which kills the top term.
            for x in r.iter_mut() {
                *x *= &lc_abs;
            }
            let factor = &coef * &lc_sign;
            for (i, c) in d.0.iter().enumerate() {
                r[top - dd + i] -= &factor * c;
            }
            debug_assert!(r[top].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        DensePoly::new(r)
    }

    /// Exact quotient when `d` divides `self` in `Z[t]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let dd = d.degree();
        let lc = d.leading();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = k + dd;
            let (qc, rem) = r[top].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &qc * c;
            }
            q[k] = qc;
        }
        r.iter().all(Zero::is_zero).then(|| DensePoly::new(q))
    }

    /// Exact sign at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let n = x.numer();
        let d = x.denom();
        // Horner on the homogenized form sum c_i n^i d^(deg - i), with d > 0.
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        sign_of(&acc)
    }

    /// Sign as `t -> +infinity`.
    pub fn sign_at_infinity(&self) -> i8 {
        if self.is_zero() {
            0
        } else {
            sign_of(self.leading())
        }
    }

    /// Sign as `t -> -infinity`.
    pub fn sign_at_neg_infinity(&self) -> i8 {
        let s = self.sign_at_infinity();
        if self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_prem(&b).primitive();
            a = b;
            b = r;
        }
        if !a.is_zero() && a.leading().is_negative() {
            a = a.neg();
        }
        a
    }

    /// `self / gcd(self, self')`, primitive.
    pub fn square_free(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().div_exact(&g).expect("gcd divides its argument")
    }

    pub fn to_laurent(&self) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.0.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    /// Remove the linear factor `(d t - n)` for a rational root `n/d`.
    fn deflate(&self, root: &BigRational) -> Self {
        let lin = DensePoly::new(vec![-root.numer().clone(), root.denom().clone()]);
        self.div_exact(&lin).expect("rational root yields an exact linear factor")
    }
}

/// Sturm sequence of a square-free polynomial.
pub struct SturmSequence {
    seq: Vec<DensePoly>,
}

impl SturmSequence {
    pub fn new(p: &DensePoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            if seq[n - 1].degree() == 0 {
                break;
            }
            let r = seq[n - 2].positive_prem(&seq[n - 1]).neg().primitive();
            seq.push(r);
        }
        SturmSequence { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Cauchy bound: every real root satisfies `|x| < bound`.
pub fn cauchy_bound(p: &DensePoly) -> BigRational {
    let lc = p.leading().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::new(max, lc) + rat(1)
}

/// Isolate every real root of `p` in `(lo, hi]`; intervals are returned in
/// increasing order.
pub fn isolate_real_roots(p: &LaurentPoly1, lo: &BigRational, hi: &BigRational) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo > hi {
        return Err(Error::BadInterval);
    }
    if lo == hi {
        return Ok(Vec::new());
    }
    let mut q = DensePoly::from_laurent(p).square_free();
    let mut exact = Vec::new();
    if q.sign_at(lo) == 0 {
        q = q.deflate(lo);
    }
    if q.sign_at(hi) == 0 {
        exact.push(RootInterval { lo: hi.clone(), hi: hi.clone() });
        q = q.deflate(hi);
    }
    let sturm = SturmSequence::new(&q);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo: a, hi: b });
            continue;
        }
        let mut mid = (&a + &b) / rat(2);
        let mut k = 3;
        while q.sign_at(&mid) == 0 {
            // Step off an exact rational root.
            mid = (&a * rat(k - 1) + &b) / rat(k);
            k += 1;
        }
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.extend(exact);
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// All real roots of `p`.
pub fn isolate_all_real_roots(p: &LaurentPoly1) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dense = DensePoly::from_laurent(p);
    if dense.degree() == 0 {
        return Ok(Vec::new());
    }
    let b = cauchy_bound(&dense);
    isolate_real_roots(p, &-b.clone(), &b)
}

/// Positive-root isolation from Descartes' rule of signs.
///
/// Signs of `p` are evaluated exactly at `0+`, at each point of `probes`
/// and at `+infinity`. When the number of observed sign changes equals the
/// number of coefficient sign variations, every positive root is simple and
/// lies alone in one of the bracketing intervals, which are returned. An
/// infinite right end is replaced by `cap` when `p(cap)` already carries the
/// sign at infinity. Returns `None` when the certificate does not close.
pub fn descartes_certificate(
    p: &LaurentPoly1,
    probes: &[BigRational],
    cap: Option<&BigRational>,
) -> Option<Vec<RootInterval>> {
    let (_, lead) = p.leading()?;
    let variations = p.sign_variations();
    let mut points: Vec<(Option<BigRational>, i8)> = vec![(Some(rat(0)), sign_of(p.trailing()?.1))];
    let mut sorted: Vec<&BigRational> = probes.iter().filter(|x| x.is_positive()).collect();
    sorted.sort();
    for x in sorted {
        let s = p.sign_at(x);
        if s == 0 {
            return None;
        }
        points.push((Some(x.clone()), s));
    }
    let inf_sign = sign_of(lead);
    let right_end = match cap {
        Some(c) if c.is_positive() && p.sign_at(c) == inf_sign && points.last().unwrap().0.as_ref() < Some(c) => {
            Some(c.clone())
        }
        _ => None,
    };
    points.push((right_end, inf_sign));
    let mut out = Vec::new();
    for w in points.windows(2) {
        if w[0].1 != w[1].1 {
            let lo = w[0].0.clone()?;
            let hi = w[1].0.clone()?;
            out.push(RootInterval { lo, hi });
        }
    }
    (out.len() == variations).then_some(out)
}

/// Double-precision root inside an isolating interval.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinedRoot {
    pub value: f64,
    /// `|p(value)| / max(1, |value|)^deg`, the residual relative to the
    /// largest monomial.
    pub residual: f64,
    pub bisection_steps: usize,
    pub newton_steps: usize,
}

/// Bisection to width `tol` followed by at most five Newton steps that are
/// kept only while they stay in the bracket and reduce the residual.
pub fn refine_root(p: &LaurentPoly1, interval: &RootInterval, tol: f64) -> RefinedRoot {
    if interval.is_exact() {
        return RefinedRoot { value: interval.lo_f64(), residual: 0.0, bisection_steps: 0, newton_steps: 0 };
    }
    let mut lo = interval.lo_f64();
    let mut hi = interval.hi_f64();
    let sign_f = |q: &LaurentPoly1, x: f64| -> i8 {
        let (v, _) = q.eval_scaled_f64(x);
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };
    // Even-multiplicity roots show no sign change; use the square-free part.
    let reduced;
    let target = if sign_f(p, lo) == sign_f(p, hi) {
        reduced = DensePoly::from_laurent(p).square_free().to_laurent();
        &reduced
    } else {
        p
    };
    let sign_of_f = |x: f64| sign_f(target, x);
    let mut s_lo = sign_of_f(lo);
    let s_hi = sign_of_f(hi);
    let mut steps = 0;
    if s_lo != 0 && s_hi != 0 && s_lo != s_hi {
        while hi - lo > tol && steps < 200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let s = sign_of_f(mid);
            if s == 0 {
                lo = mid;
                hi = mid;
                break;
            }
            if s == s_lo {
                lo = mid;
                s_lo = s;
            } else {
                hi = mid;
            }
            steps += 1;
        }
    }
    let mut x = 0.5 * (lo + hi);
    let mut best = target.eval_scaled_f64(x).0.abs();
    let mut newton = 0;
    for _ in 0..5 {
        let (v, dv) = target.eval_scaled_f64(x);
        if v == 0.0 || dv == 0.0 || !dv.is_finite() {
            break;
        }
        let next = x - v / dv;
        if !(next >= lo && next <= hi) {
            break;
        }
        let r = target.eval_scaled_f64(next).0.abs();
        if r >= best {
            break;
        }
        x = next;
        best = r;
        newton += 1;
    }
    RefinedRoot { value: x, residual: best, bisection_steps: steps, newton_steps: newton }
}

/// Exact check that `p` changes sign across `[x - radius, x + radius]`.
pub fn certify_sign_change(p: &LaurentPoly1, x: f64, radius: f64) -> Option<RootInterval> {
    let lo = BigRational::from_f64(x - radius)?;
    let hi = BigRational::from_f64(x + radius)?;
    let (a, b) = (p.sign_at(&lo), p.sign_at(&hi));
    (a != 0 && b != 0 && a != b).then_some(RootInterval { lo, hi })
}
