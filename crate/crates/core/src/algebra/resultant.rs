use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{AlgebraError, BigFloat};

/// Coefficient field for the Sylvester determinant: exact rationals or
/// fixed-precision big floats.
pub trait ResultantScalar: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_gt(&self, other: &Self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl ResultantScalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_gt(&self, other: &Self) -> bool {
        self.abs() > other.abs()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl ResultantScalar for BigFloat {
    fn zero() -> Self {
        BigFloat::from_i64(0, super::bigfloat::DEFAULT_DIGITS)
    }
    fn one() -> Self {
        BigFloat::from_i64(1, super::bigfloat::DEFAULT_DIGITS)
    }
    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
    fn abs_gt(&self, other: &Self) -> bool {
        self.abs() > other.abs()
    }
    fn mul(&self, other: &Self) -> Self {
        BigFloat::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        BigFloat::div(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        BigFloat::sub(self, other)
    }
    fn neg(&self) -> Self {
        BigFloat::neg(self)
    }
}

/// Resultant of two univariate polynomials given as coefficient lists in
/// descending degree order (`p[0]` is the leading coefficient), computed
/// as the determinant of their Sylvester matrix by Gaussian elimination
/// with partial pivoting.
pub fn sylvester_resultant<S: ResultantScalar>(p: &[S], q: &[S]) -> Result<S, AlgebraError> {
    if p.is_empty() || q.is_empty() || p[0].is_zero() || q[0].is_zero() {
        return Err(AlgebraError::ZeroLeadingCoefficient);
    }
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    if dp == 0 {
        // res(c, q) = c^{deg q}
        let mut r = S::one();
        for _ in 0..dq {
            r = r.mul(&p[0]);
        }
        return Ok(r);
    }
    if dq == 0 {
        let mut r = S::one();
        for _ in 0..dp {
            r = r.mul(&q[0]);
        }
        return Ok(r);
    }
    let n = dp + dq;
    let mut m = vec![vec![S::zero(); n]; n];
    for row in 0..dq {
        for (j, c) in p.iter().enumerate() {
            m[row][row + j] = c.clone();
        }
    }
    for row in 0..dp {
        for (j, c) in q.iter().enumerate() {
            m[dq + row][row + j] = c.clone();
        }
    }
    // LU elimination; determinant = sign * product of pivots.
    let mut det = S::one();
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[r][col].abs_gt(&m[pivot][col]) {
                pivot = r;
            }
        }
        if m[pivot][col].is_zero() {
            return Ok(S::zero());
        }
        if pivot != col {
            m.swap(pivot, col);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].div(&m[col][col]);
            for c in col..n {
                let delta = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
    }
    Ok(det)
}
