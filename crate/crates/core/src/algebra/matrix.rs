//! Dense square matrices over a commutative ring and their determinants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::{Exponent, LaurentPoly};
use crate::error::{Error, Result};

/// Commutative integral domain with exact division.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / other` when the quotient exists in the ring.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

impl<E: Exponent> Ring for LaurentPoly<E> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, other)
    }
}

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    n: usize,
    entries: Vec<R>,
}

/// Matrix over one-variable Laurent polynomials.
pub type LaurentMatrix = Matrix<LaurentPoly<i64>>;

/// Above this size the cofactor route is replaced by Bareiss elimination.
pub const COFACTOR_LIMIT: usize = 9;

impl<R: Ring> Matrix<R> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, entries: vec![R::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.n + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, R::minus)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, R::plus)
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{} vs {}", self.n, other.n)));
        }
        Ok(Matrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{} vs {}", self.n, other.n)));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = R::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.plus(&a.times(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Exact determinant: cofactor expansion up to [`COFACTOR_LIMIT`],
    /// fraction-free elimination beyond.
    pub fn det(&self) -> R {
        if self.n <= COFACTOR_LIMIT {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along rows, memoized over the set of used columns.
    pub fn det_cofactor(&self) -> R {
        let n = self.n;
        let full: usize = (1 << n) - 1;
        let mut memo: HashMap<usize, R> = HashMap::new();
        memo.insert(0, R::one());
        // Process masks by population count so every sub-mask is ready.
        let mut masks: Vec<usize> = (1..=full).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let row = mask.count_ones() as usize - 1;
            let mut acc = R::zero();
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = self.get(row, col);
                // Cofactor sign is the parity of mask columns right of `col`.
                let right = (mask >> (col + 1)).count_ones() as usize;
                if !entry.is_zero() {
                    if let Some(minor) = memo.get(&(mask & !(1 << col))) {
                        if !minor.is_zero() {
                            let term = entry.times(minor);
                            acc = if right % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
                        }
                    }
                }
            }
            memo.insert(mask, acc);
        }
        memo.remove(&full).unwrap_or_else(R::zero)
    }

    /// Bareiss fraction-free elimination with row pivoting.
    pub fn det_bareiss(&self) -> R {
        let n = self.n;
        let mut a: Vec<Vec<R>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = R::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return R::zero();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].times(&a[k][k]).minus(&a[i][k].times(&a[k][j]));
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss quotient is exact over an integral domain");
                }
                a[i][k] = R::zero();
            }
            prev = a[k][k].clone();
        }
        if negate {
            prev.negated()
        } else {
            prev
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::LaurentPoly1;

    fn t(e: i64) -> LaurentPoly1 {
        LaurentPoly1::monomial(1, e)
    }

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn trivial_determinants() {
        let m = LaurentMatrix::from_rows(vec![vec![t(-1)]]).unwrap();
        assert_eq!(m.det(), t(-1));
        let m = LaurentMatrix::from_rows(vec![vec![t(1), LaurentPoly1::zero()], vec![LaurentPoly1::zero(), t(-1)]])
            .unwrap();
        assert_eq!(m.det(), t(0));
    }

    #[test]
    fn rejects_ragged_rows() {
        let rows = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(3)]];
        assert!(matches!(Matrix::from_rows(rows), Err(Error::Dimension(_))));
    }

    #[test]
    fn integer_determinants_agree_between_routes() {
        let m = int_matrix(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 5, 1, -1], &[7, 0, 2, 2]]);
        // Reference value from a floating-point LU factorization.
        assert_eq!(m.det_cofactor(), BigInt::from(-234));
        assert_eq!(m.det_bareiss(), BigInt::from(-234));
        let singular = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(singular.det_cofactor(), BigInt::from(0));
        assert_eq!(singular.det_bareiss(), BigInt::from(0));
        let needs_pivot = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(needs_pivot.det_bareiss(), BigInt::from(-1));
        assert_eq!(needs_pivot.det_cofactor(), BigInt::from(-1));
    }

    #[test]
    fn graded_five_cycle() {
        // v1->v3, v2->t^2 v1, v3->t^3 v5, v4->t v2, v5->t^2 v4 in (u, t).
        type P2 = crate::algebra::laurent::LaurentPoly2;
        let mut m = Matrix::<P2>::zeros(5);
        for (src, dst, k) in [(0, 2, 0), (1, 0, 2), (2, 4, 3), (3, 1, 1), (4, 3, 2)] {
            m.set(dst, src, P2::monomial(1, (0, k)));
        }
        let u_id = Matrix::<P2>::identity(5).map(|x| x * &P2::monomial(1, (1, 0)));
        let char_mat = u_id.sub(&m).unwrap();
        let expected = P2::from_terms([((5, 0), 1), ((0, 8), -1)]);
        assert_eq!(char_mat.det_cofactor(), expected);
        assert_eq!(char_mat.det_bareiss(), expected);
    }

    #[test]
    fn ten_by_ten_uses_bareiss() {
        let n = 10;
        let mut m = Matrix::<LaurentPoly1>::zeros(n);
        for i in 0..n {
            m.set(i, i, &t(1) + &t(0));
            if i + 1 < n {
                m.set(i, i + 1, t(-1));
                m.set(i + 1, i, t(2));
            }
        }
        assert_eq!(m.det(), m.det_cofactor());
    }
}
