//! Exact rational scalars.
//!
//! Every coefficient in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. There is no
//! floating point anywhere in the symbolic layer; the only place `f64`
//! appears is the numeric radius probe in [`crate::gwcounts`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
///
/// Serializes as the decimal string `"p/q"`, or `"p"` when `q == 1`, so
/// round-trips are bit-exact and JSON consumers never see precision loss.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `p/q` from machine integers. Panics on `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(p, q)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Input("division by zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// Integer power with negative exponents allowed (errors on `0^-n`).
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.recip().map(|r| Rational(r.0.pow((-e) as u32 as i32)));
        }
        Ok(Rational(self.0.pow(e as i32)))
    }

    /// Exact `e`-th root when one exists in the rationals.
    pub fn nth_root_exact(&self, e: u32) -> Option<Self> {
        if e == 0 {
            return None;
        }
        if self.is_negative() && e.is_multiple_of(2) {
            return None;
        }
        let root = |n: &BigInt| -> Option<BigInt> {
            let candidate = n.nth_root(e);
            if candidate.pow(e) == *n {
                Some(candidate)
            } else {
                None
            }
        };
        let p = root(self.numer())?;
        let q = root(self.denom())?;
        Some(Rational(BigRational::new(p, q)))
    }

    /// Rational power `self^(p/q)`; exact or `None`.
    pub fn pow_rational(&self, e: &Rational) -> Option<Self> {
        let q = e.denom().to_u32()?;
        let p = e.numer().to_i64()?;
        if self.is_zero() {
            return if e.is_positive() { Some(Rational::zero()) } else { None };
        }
        let base = self.nth_root_exact(q)?;
        base.pow_int(p).ok()
    }

    /// As an `i64` when the value is a small integer.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        self.numer().to_i64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // fall back through a common scaling when numerator/denominator
            // individually overflow f64
            let bits = self.numer().bits().max(self.denom().bits());
            let shift = bits.saturating_sub(900);
            let n = self.numer() >> shift;
            let d = self.denom() >> shift;
            n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p = BigInt::from_str(p)
            .map_err(|_| Error::Input(format!("bad rational literal `{s}`")))?;
        let q = BigInt::from_str(q)
            .map_err(|_| Error::Input(format!("bad rational literal `{s}`")))?;
        if q.is_zero() {
            return Err(Error::Input(format!("zero denominator in `{s}`")));
        }
        Ok(Rational(BigRational::new(p, q)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rational::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && self.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

/// Exact factorial as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient with the convention `C(n,k) = 0` when `k < 0`,
/// `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::ratio(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert!(r.denom().is_positive());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "5", "-5/27", "3/2", "1456089241205248"] {
            let r = Rational::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
    }

    #[test]
    fn serde_string_form() {
        let r = Rational::ratio(-5, 27);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, "\"-5/27\"");
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn rational_powers() {
        let r = Rational::ratio(9, 4);
        assert_eq!(r.nth_root_exact(2).unwrap(), Rational::ratio(3, 2));
        assert!(Rational::from_int(2).nth_root_exact(2).is_none());
        let e = Rational::ratio(3, 2);
        assert_eq!(
            Rational::from_int(4).pow_rational(&e).unwrap(),
            Rational::from_int(8)
        );
        assert!(Rational::from_int(3).pow_rational(&e).is_none());
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
