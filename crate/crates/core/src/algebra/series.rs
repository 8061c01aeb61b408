use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::mpoly::{MPoly, Marker};
use super::AlgebraError;

/// Truncated power series in the marker z, exact modulo `z^{order+1}`.
///
/// Coefficients are polynomials in the remaining markers (t, e); the series
/// variable never appears inside a coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct GenSeries {
    coeffs: Vec<MPoly>,
}

/// Parallelize coefficient convolutions only past this order.
const PAR_THRESHOLD: usize = 48;

impl GenSeries {
    pub fn zero(order: usize) -> Self {
        GenSeries {
            coeffs: vec![MPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = GenSeries::zero(order);
        s.coeffs[0] = MPoly::one();
        s
    }

    /// Constant series from a z-free polynomial.
    pub fn constant(p: MPoly, order: usize) -> Self {
        debug_assert_eq!(p.degree(Marker::Z), 0);
        let mut s = GenSeries::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// Split a polynomial by z-degree; degrees above `order` are truncated.
    pub fn from_mpoly(p: &MPoly, order: usize) -> Self {
        let mut s = GenSeries::zero(order);
        for k in 0..=p.degree(Marker::Z).min(order as u16) {
            s.coeffs[k as usize] = p.coefficient_of(Marker::Z, k);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MPoly {
        &self.coeffs[k]
    }

    /// Integer coefficient `[z^n t^g e^m]`.
    pub fn coeff_int(&self, n: usize, g: u16, m: u16) -> BigInt {
        self.coeffs[n].coeff([0, g, m, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> GenSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, MPoly::zero());
        GenSeries { coeffs }
    }

    /// Lowest z-degree with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &GenSeries) -> GenSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].add(&other.coeffs[k]))
            .collect();
        GenSeries { coeffs }
    }

    pub fn sub(&self, other: &GenSeries) -> GenSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].sub(&other.coeffs[k]))
            .collect();
        GenSeries { coeffs }
    }

    pub fn neg(&self) -> GenSeries {
        GenSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &GenSeries) -> GenSeries {
        let order = self.order().min(other.order());
        let conv = |k: usize| {
            let mut acc = MPoly::zero();
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        };
        let coeffs = if order >= PAR_THRESHOLD {
            (0..=order).into_par_iter().map(conv).collect()
        } else {
            (0..=order).map(conv).collect()
        };
        GenSeries { coeffs }
    }

    pub fn mul_poly(&self, p: &MPoly) -> GenSeries {
        debug_assert_eq!(p.degree(Marker::Z), 0);
        GenSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Multiply by `z^k`, truncating at the order.
    pub fn shift_z(&self, k: usize) -> GenSeries {
        let order = self.order();
        let mut coeffs = vec![MPoly::zero(); order + 1];
        for i in k..=order {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        GenSeries { coeffs }
    }

    /// Multiplicative inverse modulo `z^{order+1}`; the constant
    /// coefficient must be exactly 1.
    pub fn invert(&self) -> Result<GenSeries, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::InversionOfNonUnit(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let mut inv = vec![MPoly::zero(); order + 1];
        inv[0] = MPoly::one();
        for n in 1..=order {
            let mut acc = MPoly::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() && !inv[n - j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&inv[n - j]));
                }
            }
            inv[n] = acc.neg();
        }
        Ok(GenSeries { coeffs: inv })
    }

    /// Substitute this series into `outer` (Horner): requires positive
    /// valuation, i.e. zero constant coefficient. The result carries the
    /// inner order; when `outer` is a truncated series rather than an
    /// exact polynomial the caller must supply enough outer terms, i.e.
    /// `(outer.order() + 1) * valuation > order`.
    pub fn compose_into(&self, outer: &GenSeries) -> Result<GenSeries, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::CompositionDivergence(
                self.coeffs[0].to_string(),
            ));
        }
        let order = self.order();
        let mut acc = GenSeries::constant(outer.coeffs[outer.order()].clone(), order);
        for k in (0..outer.order()).rev() {
            acc = acc.mul(self);
            acc.coeffs[0] = acc.coeffs[0].add(&outer.coeffs[k]);
        }
        Ok(acc)
    }

    /// Substitute `inner` for the z marker of the polynomial `outer`;
    /// the remaining markers of `outer` pass through into coefficients.
    pub fn compose_poly(outer: &MPoly, inner: &GenSeries) -> Result<GenSeries, AlgebraError> {
        let as_series = GenSeries::from_mpoly(outer, outer.degree(Marker::Z) as usize);
        inner.compose_into(&as_series)
    }

    /// Expand `num/den` to the given order. The denominator must have
    /// z-valuation 0 with constant coefficient ±1.
    pub fn rational_expand(
        num: &MPoly,
        den: &MPoly,
        order: usize,
    ) -> Result<GenSeries, AlgebraError> {
        let d0 = den.coefficient_of(Marker::Z, 0);
        let unit = match d0.as_constant() {
            Some(c) if c == BigInt::from(1) => BigInt::from(1),
            Some(c) if c == BigInt::from(-1) => BigInt::from(-1),
            _ => return Err(AlgebraError::NonUnitDenominator(d0.to_string())),
        };
        let (num, den) = if unit == BigInt::from(-1) {
            (num.neg(), den.neg())
        } else {
            (num.clone(), den.clone())
        };
        let n_ser = GenSeries::from_mpoly(&num, order);
        let d_deg = (den.degree(Marker::Z) as usize).min(order);
        let d: Vec<MPoly> = (0..=d_deg)
            .map(|k| den.coefficient_of(Marker::Z, k as u16))
            .collect();
        let mut q = vec![MPoly::zero(); order + 1];
        for n in 0..=order {
            let mut acc = n_ser.coeffs[n].clone();
            for j in 1..=d_deg.min(n) {
                if !d[j].is_zero() && !q[n - j].is_zero() {
                    acc = acc.sub(&d[j].mul(&q[n - j]));
                }
            }
            q[n] = acc;
        }
        Ok(GenSeries { coeffs: q })
    }

    /// Set one marker to 1 in every coefficient.
    pub fn subst_one(&self, marker: Marker) -> GenSeries {
        GenSeries {
            coeffs: self.coeffs.iter().map(|c| c.subst_one(marker)).collect(),
        }
    }

    /// Exact evaluation of the truncated series at rational (z, t, e).
    pub fn eval_rational(&self, z: &BigRational, t: &BigRational, e: &BigRational) -> BigRational {
        let point = [BigRational::zero(), t.clone(), e.clone(), BigRational::zero()];
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.eval_rational(&point);
        }
        acc
    }
}

impl std::fmt::Debug for GenSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GenSeries[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "z^{}: {}", k, c)?;
        }
        write!(f, "]")
    }
}

/// Render an exact rational in decimal at `sig` significant digits,
/// rounding half away from zero. Pure integer arithmetic, deterministic.
pub fn format_rational_sig(r: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.numer().abs();
    let b = r.denom().abs();
    // Decimal exponent k with 10^k <= a/b < 10^{k+1}.
    let pad = 2 * sig + 40;
    let scaled = &a * BigInt::from(10).pow(pad as u32) / &b;
    let digits_len = scaled.to_string().len() as i64;
    let mut k = digits_len - 1 - pad as i64;
    // d = round(a/b * 10^{sig-1-k}) has exactly sig digits, unless the
    // rounding carries into one more digit.
    let mut d = rounded_scale(&a, &b, sig as i64 - 1 - k);
    let ten_sig = BigInt::from(10).pow(sig as u32);
    if d >= ten_sig {
        k += 1;
        d = rounded_scale(&a, &b, sig as i64 - 1 - k);
    }
    let ds = d.to_string();
    debug_assert_eq!(ds.len(), sig);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if k >= 0 && (k as usize) < sig {
        let point = k as usize + 1;
        out.push_str(&ds[..point]);
        if point < sig {
            out.push('.');
            out.push_str(&ds[point..]);
        }
    } else if k < 0 && k >= -40 {
        out.push_str("0.");
        for _ in 0..(-k - 1) {
            out.push('0');
        }
        out.push_str(&ds);
    } else {
        // Extreme magnitudes: scientific notation.
        out.push_str(&ds[..1]);
        out.push('.');
        out.push_str(&ds[1..]);
        out.push('e');
        out.push_str(&k.to_string());
    }
    out
}

/// round(a/b * 10^p) for p possibly negative, half away from zero.
fn rounded_scale(a: &BigInt, b: &BigInt, p: i64) -> BigInt {
    let (num, den) = if p >= 0 {
        (a * BigInt::from(10).pow(p as u32), b.clone())
    } else {
        (a.clone(), b * BigInt::from(10).pow((-p) as u32))
    };
    let q = &num / &den;
    let rem = &num - &q * &den;
    if &rem * 2 >= den {
        q + 1
    } else {
        q
    }
}
