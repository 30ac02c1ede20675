//! Arbitrary-precision rational numbers.
//!
//! [`Rational`] is the only number type used by the math core. Values are
//! always stored in lowest terms with a positive denominator, arithmetic is
//! exact, and division by zero is an error, never a value. The text form is
//! `"p/q"` (or just `"p"` for integers); floats are rejected everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Error produced when parsing or constructing a [`Rational`] fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("invalid rational literal {0:?} (expected \"p\" or \"p/q\")")]
    Malformed(String),
    #[error("division by zero")]
    DivisionByZero,
}

impl Rational {
    /// Builds `numerator / denominator`, reducing to lowest terms.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(
        numerator: N,
        denominator: D,
    ) -> Result<Self, RationalError> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer<N: Into<BigInt>>(n: N) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact division; `Err` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Approximate `f64` value. Only for display purposes; never used in
    /// decisions.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0
            .numer()
            .to_f64()
            .map(|n| n / self.0.denom().to_f64().unwrap_or(f64::NAN))
            .unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let malformed = || RationalError::Malformed(s.to_string());
        let mut parts = text.splitn(2, '/');
        let numer_text = parts.next().ok_or_else(malformed)?.trim();
        let numer = BigInt::from_str(numer_text).map_err(|_| malformed())?;
        match parts.next() {
            None => Ok(Rational::from_integer(numer)),
            Some(denom_text) => {
                let denom = BigInt::from_str(denom_text.trim()).map_err(|_| malformed())?;
                Rational::new(numer, denom)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
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
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
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

/// Panics when `rhs` is zero; use [`Rational::checked_div`] where a zero
/// divisor is reachable from input data.
impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        let mut acc = Rational::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        let mut acc = Rational::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

/// Compares without allocating intermediate differences.
pub fn min_max<'a, I: Iterator<Item = &'a Rational>>(iter: I) -> Option<(Rational, Rational)> {
    let mut out: Option<(Rational, Rational)> = None;
    for x in iter {
        match &mut out {
            None => out = Some((x.clone(), x.clone())),
            Some((lo, hi)) => {
                if x < lo {
                    *lo = x.clone();
                }
                if x > hi {
                    *hi = x.clone();
                }
            }
        }
    }
    out
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.partial_cmp(&Rational::from_integer(*other))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self == &Rational::from_integer(*other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_reduces_to_lowest_terms() {
        assert_eq!(r("2/4"), r("1/2"));
        assert_eq!(r("-3/-6"), r("1/2"));
        assert_eq!(r("3/-6").to_string(), "-1/2");
        assert_eq!(r("7").to_string(), "7");
        assert_eq!(r("0/5"), Rational::zero());
    }

    #[test]
    fn rejects_zero_denominator_and_garbage() {
        assert_eq!(
            "1/0".parse::<Rational>(),
            Err(RationalError::DivisionByZero)
        );
        assert!("0.5".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_sums() {
        let third = r("1/3");
        let sum: Rational = [&third, &third, &third].into_iter().sum();
        assert_eq!(sum, Rational::one());
    }

    #[test]
    fn checked_div_rejects_zero() {
        assert_eq!(
            r("1/2").checked_div(&Rational::zero()),
            Err(RationalError::DivisionByZero)
        );
        assert_eq!(r("1/2").checked_div(&r("1/4")).unwrap(), r("2"));
    }

    #[test]
    fn serde_round_trips_as_strings() {
        let x = r("-22/7");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"-22/7\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(n in -1000i64..1000, d in 1i64..200) {
            let x = Rational::new(n, d).unwrap();
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn field_identities(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let x = Rational::new(a, b).unwrap();
            let y = Rational::new(c, d).unwrap();
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!((&x / &y) * &y, x);
            }
        }
    }
}
