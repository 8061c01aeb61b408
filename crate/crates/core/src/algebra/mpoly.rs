use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::BigFloat;

/// The four formal markers carried by an [`MPoly`]: `z` marks size (arcs or
/// vertices), `t` marks genus, `e` marks 1-arcs and `x` is the witness
/// variable of the algebraic equation for the matching series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Z,
    T,
    E,
    X,
}

impl Marker {
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Marker::Z => 0,
            Marker::T => 1,
            Marker::E => 2,
            Marker::X => 3,
        }
    }

    fn symbol(self) -> char {
        match self {
            Marker::Z => 'z',
            Marker::T => 't',
            Marker::E => 'e',
            Marker::X => 'X',
        }
    }
}

/// Exponent vector in marker order (z, t, e, X).
pub type Expo = [u16; 4];

/// Exact big-integer polynomial in the markers z, t, e, X.
///
/// Canonical form: no stored zero coefficients, one entry per exponent
/// vector. All arithmetic is exact.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Expo, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0, 0, 0, 0], c);
        }
        MPoly { terms }
    }

    pub fn constant_i64(c: i64) -> Self {
        MPoly::constant(BigInt::from(c))
    }

    /// Single term `c * marker^deg`.
    pub fn monomial(c: i64, marker: Marker, deg: u16) -> Self {
        let mut expo = [0u16; 4];
        expo[marker.index()] = deg;
        MPoly::term(BigInt::from(c), expo)
    }

    pub fn term(c: BigInt, expo: Expo) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(expo, c);
        }
        MPoly { terms }
    }

    /// The marker itself as a degree-1 monomial.
    pub fn var(marker: Marker) -> Self {
        MPoly::monomial(1, marker, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0, 0, 0, 0])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of the exact exponent vector (zero if absent).
    pub fn coeff(&self, expo: Expo) -> BigInt {
        self.terms.get(&expo).cloned().unwrap_or_else(BigInt::zero)
    }

    /// If the polynomial is a constant, return it.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&[0, 0, 0, 0]) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn degree(&self, marker: Marker) -> u16 {
        let i = marker.index();
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Coefficient of `marker^k` as a polynomial in the remaining markers.
    pub fn coefficient_of(&self, marker: Marker, k: u16) -> MPoly {
        let i = marker.index();
        let mut terms = BTreeMap::new();
        for (expo, c) in &self.terms {
            if expo[i] == k {
                let mut stripped = *expo;
                stripped[i] = 0;
                terms.insert(stripped, c.clone());
            }
        }
        MPoly { terms }
    }

    fn insert_add(terms: &mut BTreeMap<Expo, BigInt>, expo: Expo, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(expo) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (expo, c) in &other.terms {
            Self::insert_add(&mut terms, *expo, c.clone());
        }
        MPoly { terms }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (expo, c) in &other.terms {
            Self::insert_add(&mut terms, *expo, -c.clone());
        }
        MPoly { terms }
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        MPoly { terms }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                Self::insert_add(&mut terms, expo, ca * cb);
            }
        }
        MPoly { terms }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(e, a)| (*e, a * c)).collect();
        MPoly { terms }
    }

    pub fn pow(&self, exp: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiply by `marker^k`.
    pub fn shift(&self, marker: Marker, k: u16) -> MPoly {
        let i = marker.index();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut expo = *e;
                expo[i] += k;
                (expo, c.clone())
            })
            .collect();
        MPoly { terms }
    }

    /// Partial derivative with respect to one marker.
    pub fn derivative(&self, marker: Marker) -> MPoly {
        let i = marker.index();
        let mut terms = BTreeMap::new();
        for (expo, c) in &self.terms {
            if expo[i] == 0 {
                continue;
            }
            let mut e = *expo;
            let d = BigInt::from(e[i]);
            e[i] -= 1;
            Self::insert_add(&mut terms, e, c * d);
        }
        MPoly { terms }
    }

    /// Substitute `marker := 1` (exponents collapse, coefficients merge).
    pub fn subst_one(&self, marker: Marker) -> MPoly {
        let i = marker.index();
        let mut terms = BTreeMap::new();
        for (expo, c) in &self.terms {
            let mut e = *expo;
            e[i] = 0;
            Self::insert_add(&mut terms, e, c.clone());
        }
        MPoly { terms }
    }

    /// Exact evaluation at rational points, markers in (z, t, e, X) order.
    pub fn eval_rational(&self, vals: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (expo, c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            for (i, v) in vals.iter().enumerate() {
                for _ in 0..expo[i] {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluation at big-float points, markers in (z, t, e, X) order.
    pub fn eval_float(&self, vals: &[BigFloat; 4]) -> BigFloat {
        let mut acc = BigFloat::zero_like(&vals[0]);
        for (expo, c) in &self.terms {
            let mut term = BigFloat::from_bigint(c, vals[0].digits());
            for (i, v) in vals.iter().enumerate() {
                if expo[i] > 0 {
                    term = term.mul(&v.powi(expo[i] as i64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Largest coefficient magnitude, for scale normalization.
    pub fn max_coeff_abs(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (expo, c) in &self.terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let is_const = expo.iter().all(|&d| d == 0);
            if !mag.is_one() || is_const {
                write!(f, "{}", mag)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut need_star = false;
            for m in [Marker::Z, Marker::T, Marker::E, Marker::X] {
                let d = expo[m.index()];
                if d == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                need_star = true;
                if d == 1 {
                    write!(f, "{}", m.symbol())?;
                } else {
                    write!(f, "{}^{}", m.symbol(), d)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> MPoly {
        MPoly::var(Marker::Z)
    }

    fn t() -> MPoly {
        MPoly::var(Marker::T)
    }

    #[test]
    fn binomial_square() {
        // (1+z)^2 = 1 + 2z + z^2
        let p = MPoly::one().add(&z()).pow(2);
        let expected = MPoly::one()
            .add(&MPoly::monomial(2, Marker::Z, 1))
            .add(&MPoly::monomial(1, Marker::Z, 2));
        assert_eq!(p, expected);
    }

    #[test]
    fn is1_term_list() {
        // (1+z)^2 * z^2 * t = z^2 t + 2 z^3 t + z^4 t
        let p = MPoly::one()
            .add(&z())
            .pow(2)
            .mul(&MPoly::monomial(1, Marker::Z, 2))
            .mul(&t());
        let expected = MPoly::term(1.into(), [2, 1, 0, 0])
            .add(&MPoly::term(2.into(), [3, 1, 0, 0]))
            .add(&MPoly::term(1.into(), [4, 1, 0, 0]));
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn mul_by_zero_annihilates() {
        let p = MPoly::one().add(&z()).pow(3);
        assert!(p.mul(&MPoly::zero()).is_zero());
    }

    #[test]
    fn no_zero_terms_after_cancellation() {
        let p = z().sub(&z());
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn derivative_and_subst() {
        // d/dz (z^3 t) = 3 z^2 t; at t=1 collapses to 3 z^2
        let p = MPoly::term(1.into(), [3, 1, 0, 0]);
        let d = p.derivative(Marker::Z);
        assert_eq!(d, MPoly::term(3.into(), [2, 1, 0, 0]));
        assert_eq!(d.subst_one(Marker::T), MPoly::monomial(3, Marker::Z, 2));
    }

    #[test]
    fn eval_rational_point() {
        // p = z^2 + t at z=1/2, t=3 -> 13/4
        let p = MPoly::monomial(1, Marker::Z, 2).add(&t());
        let half = BigRational::new(1.into(), 2.into());
        let v = p.eval_rational(&[
            half,
            BigRational::from(BigInt::from(3)),
            BigRational::zero(),
            BigRational::zero(),
        ]);
        assert_eq!(v, BigRational::new(13.into(), 4.into()));
    }
}
