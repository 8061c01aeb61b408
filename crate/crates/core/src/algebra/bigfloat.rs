use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use dashu_float::DBig;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Default working precision in decimal digits. Two numeric
/// differentiations of the moving singularity need six correct decimals
/// in the output, which 60 digits covers with a wide margin.
pub const DEFAULT_DIGITS: usize = 60;

/// Arbitrary-precision decimal float with a fixed per-value precision.
///
/// Every binary operation rounds the result back to the larger operand
/// precision, so chains of operations behave like fixed-precision
/// arithmetic at `digits` decimal digits.
#[derive(Clone, PartialEq)]
pub struct BigFloat {
    value: DBig,
    digits: usize,
}

impl BigFloat {
    pub fn from_i64(v: i64, digits: usize) -> Self {
        BigFloat {
            value: DBig::from(v).with_precision(digits).value(),
            digits,
        }
    }

    pub fn from_f64(v: f64, digits: usize) -> Self {
        use dashu_float::round::mode::HalfAway;
        let b = dashu_float::FBig::<HalfAway, 2>::try_from(v).expect("finite f64");
        BigFloat {
            value: b.to_decimal().value().with_precision(digits).value(),
            digits,
        }
    }

    pub fn from_bigint(v: &BigInt, digits: usize) -> Self {
        let value = DBig::from_str(&v.to_string())
            .expect("integer literal")
            .with_precision(digits)
            .value();
        BigFloat { value, digits }
    }

    pub fn from_rational(v: &BigRational, digits: usize) -> Self {
        let n = Self::from_bigint(v.numer(), digits);
        let d = Self::from_bigint(v.denom(), digits);
        n.div(&d)
    }

    pub fn parse(s: &str, digits: usize) -> Option<Self> {
        DBig::from_str(s).ok().map(|v| BigFloat {
            value: v.with_precision(digits).value(),
            digits,
        })
    }

    pub fn zero_like(other: &BigFloat) -> Self {
        BigFloat::from_i64(0, other.digits)
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    fn wrap(&self, value: DBig, other: &BigFloat) -> BigFloat {
        let digits = self.digits.max(other.digits);
        BigFloat {
            value: value.with_precision(digits).value(),
            digits,
        }
    }

    pub fn add(&self, other: &BigFloat) -> BigFloat {
        self.wrap(&self.value + &other.value, other)
    }

    pub fn sub(&self, other: &BigFloat) -> BigFloat {
        self.wrap(&self.value - &other.value, other)
    }

    pub fn mul(&self, other: &BigFloat) -> BigFloat {
        self.wrap(&self.value * &other.value, other)
    }

    pub fn div(&self, other: &BigFloat) -> BigFloat {
        self.wrap(&self.value / &other.value, other)
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat {
            value: -self.value.clone(),
            digits: self.digits,
        }
    }

    pub fn abs(&self) -> BigFloat {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn powi(&self, exp: i64) -> BigFloat {
        if exp < 0 {
            return BigFloat::from_i64(1, self.digits).div(&self.powi(-exp));
        }
        let mut result = BigFloat::from_i64(1, self.digits);
        let mut base = self.clone();
        let mut e = exp as u64;
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

    pub fn exp(&self) -> BigFloat {
        BigFloat {
            value: self.value.clone().exp().with_precision(self.digits).value(),
            digits: self.digits,
        }
    }

    pub fn sqrt(&self) -> BigFloat {
        // Newton iteration; dashu-float has no direct sqrt for DBig.
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let half = BigFloat::parse("0.5", self.digits).unwrap();
        let mut x = BigFloat::from_f64(self.to_f64().sqrt().max(f64::MIN_POSITIVE), self.digits);
        for _ in 0..self.digits.ilog2() + 10 {
            let next = half.mul(&x.add(&self.div(&x)));
            if next == x {
                break;
            }
            x = next;
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.value == DBig::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.value < DBig::ZERO
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().value()
    }

    /// Decimal rendering at `sig` significant digits (deterministic).
    pub fn to_sig_string(&self, sig: usize) -> String {
        let rounded = self.value.clone().with_precision(sig).value();
        format!("{}", rounded)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({})", self.value)
    }
}
