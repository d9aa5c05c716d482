//! Arbitrary-precision rational numbers.
//!
//! `Rat` wraps [`num_rational::BigRational`] and is the coefficient type of
//! every exact computation in this crate. Values are always reduced to lowest
//! terms with a positive denominator; zero is canonically `0/1`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// Construct `n / d`. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "Rat::new: zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Construct from big-integer parts. Panics if `d == 0`.
    pub fn from_bigints(n: BigInt, d: BigInt) -> Self {
        assert!(!d.is_zero(), "Rat::from_bigints: zero denominator");
        Rat(BigRational::new(n, d))
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "Rat::recip: division by zero");
        Rat(self.0.recip())
    }

    /// Integer power; negative exponents invert (panics on zero base).
    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "Rat::pow: zero base with negative exponent");
        }
        Rat(self.0.pow(exp))
    }

    /// Nearest-rounding conversion to `f64`; values outside the f64 range
    /// become signed infinity.
    pub fn to_f64(&self) -> f64 {
        // num-rational implements a correctly rounded big-ratio conversion.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Canonical `"p/q"` form, denominator always present.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Error parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: expected p, p/q, or a finite decimal")]
pub struct ParseRatError {
    pub input: String,
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `"p"`, `"p/q"`, and finite decimals like `"-1.25"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRatError { input: s.to_owned() };
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rat(BigRational::new(n, d)));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (sign, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
                return Err(err());
            }
            if !int_digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let digits = format!("{int_digits}{frac_part}");
            let n = BigInt::from_str(&digits).map_err(|_| err())? * BigInt::from(sign);
            let d = BigInt::from(10u32).pow(frac_part.len() as u32);
            return Ok(Rat(BigRational::new(n, d)));
        }
        let n = BigInt::from_str(s).map_err(|_| err())?;
        Ok(Rat(BigRational::from_integer(n)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<(i64, i64)> for Rat {
    fn from((n, d): (i64, i64)) -> Self {
        Rat::new(n, d)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign_normalization() {
        let r = Rat::new(4, -6);
        assert_eq!(r, Rat::new(-2, 3));
        assert_eq!(r.to_fraction_string(), "-2/3");
        assert!(r.denom().is_positive());
    }

    #[test]
    fn zero_is_canonical() {
        let z = Rat::new(0, 7);
        assert!(z.is_zero());
        assert_eq!(z.to_fraction_string(), "0/1");
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        assert_eq!(&a + &b, Rat::new(5, 6));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 6));
        assert_eq!(&a / &b, Rat::new(3, 2));
        assert_eq!(-&a, Rat::new(-1, 2));
        assert_eq!(a.pow(3), Rat::new(1, 8));
        assert_eq!(Rat::new(2, 3).pow(-2), Rat::new(9, 4));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::from_int(3));
        assert_eq!("-7/2".parse::<Rat>().unwrap(), Rat::new(-7, 2));
        assert_eq!("1.25".parse::<Rat>().unwrap(), Rat::new(5, 4));
        assert_eq!("-0.5".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
        assert!("1e3".parse::<Rat>().is_err());
    }

    #[test]
    fn to_f64_large_values() {
        // 20-digit numerator over 20-digit denominator still converts cleanly.
        let r: Rat = "80630168/150869313".parse().unwrap();
        let expect = 80630168.0 / 150869313.0;
        assert!((r.to_f64() - expect).abs() < 1e-15);

        let big: Rat = "36717316190417644205775436800/1".parse().unwrap();
        assert!((big.to_f64() - 3.671731619041764e28).abs() < 1e14);
    }

    #[test]
    fn serde_round_trip() {
        let r = Rat::new(-94677997, 258633108);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"-94677997/258633108\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn display_drops_unit_denominator() {
        assert_eq!(Rat::from_int(5).to_string(), "5");
        assert_eq!(Rat::new(5, 2).to_string(), "5/2");
    }
}
