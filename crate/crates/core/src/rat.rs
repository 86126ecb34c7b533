//! Arbitrary-precision rationals.
//!
//! `Rat` wraps [`BigRational`] so the rest of the crate gets a `Display`
//! and `FromStr` in the `p/q` literal form used by problem files and
//! reports, and serializes as that string.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rat {
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `2^e` for any integer exponent.
    pub fn pow2(e: i64) -> Rat {
        Rat::int(2).powi(e)
    }

    pub fn from_big(r: BigRational) -> Rat {
        Rat(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn powi(&self, e: i64) -> Rat {
        match e.cmp(&0) {
            Ordering::Equal => Rat::one(),
            Ordering::Greater => Rat(num_traits::pow(self.0.clone(), e as usize)),
            Ordering::Less => {
                Rat(num_traits::pow(self.0.clone(), e.unsigned_abs() as usize).recip())
            }
        }
    }

    pub fn min(self, other: Rat) -> Rat {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Rat) -> Rat {
        std::cmp::max(self, other)
    }

    /// Midpoint of `self` and `other`.
    pub fn mid(&self, other: &Rat) -> Rat {
        (self + other) / Rat::int(2)
    }

    /// `self mod m` in `[0, m)` for positive `m`.
    pub fn rem_euclid(&self, m: &Rat) -> Rat {
        let q = (self / m).floor();
        self - &(m * &Rat::int(q))
    }

    /// Largest multiple of `2^-bits` not exceeding `self`.
    pub fn round_down(&self, bits: u32) -> Rat {
        let scale = BigInt::one() << bits;
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        Rat(BigRational::new(scaled.floor().to_integer(), scale))
    }

    /// Smallest multiple of `2^-bits` not below `self`.
    pub fn round_up(&self, bits: u32) -> Rat {
        let scale = BigInt::one() << bits;
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        Rat(BigRational::new(scaled.ceil().to_integer(), scale))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(x: f64) -> Option<Rat> {
        BigRational::from_float(x).map(Rat)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
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

impl FromStr for Rat {
    type Err = ParseError;

    /// Accepts `n`, `-n`, `p/q` and finite decimals such as `0.125`.
    fn from_str(s: &str) -> Result<Rat, ParseError> {
        let t = s.trim();
        let bad = || ParseError::new(format!("invalid rational literal `{t}`"), 0);
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseError::new("zero denominator", 0));
            }
            return Ok(Rat::new(n, d));
        }
        if let Some((ip, fp)) = t.split_once('.') {
            if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = ip.starts_with('-');
            let ip_digits = ip.trim_start_matches(['-', '+']);
            let whole: BigInt = if ip_digits.is_empty() {
                BigInt::zero()
            } else {
                ip_digits.parse().map_err(|_| bad())?
            };
            let frac: BigInt = fp.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), fp.len());
            let mag = Rat::new(whole * &scale + frac, scale);
            return Ok(if neg { -mag } else { mag });
        }
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Rat::int(n))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
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

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

/// Shorthand for `Rat::new(n, d)` with machine integers.
pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}
