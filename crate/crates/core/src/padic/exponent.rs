use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PadicError;

/// An element of (1/2)Z, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_halves(halves: i64) -> Self {
        HalfInt(halves)
    }

    pub const fn halves(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Integer value, if this is an integer.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        -(-self.0).div_euclid(2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = PadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PadicError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t.as_str(), "1"),
        };
        let num: i64 = num.parse().map_err(|_| err("bad numerator"))?;
        let den: i64 = den.parse().map_err(|_| err("bad denominator"))?;
        if den <= 0 {
            return Err(err("denominator must be positive"));
        }
        let twice = 2 * num;
        if twice % den != 0 {
            return Err(err("not a half-integer"));
        }
        Ok(HalfInt(twice / den))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A p-adic valuation: a half-integer, or +infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(HalfInt),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<HalfInt> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl From<HalfInt> for Valuation {
    fn from(v: HalfInt) -> Self {
        Valuation::Finite(v)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// An exact value of the p-adic absolute value: zero, or `p^exponent` with a
/// half-integer exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Norm {
    p: u64,
    exponent: Option<HalfInt>,
}

impl Norm {
    pub fn zero(p: u64) -> Self {
        Norm { p, exponent: None }
    }

    pub fn one(p: u64) -> Self {
        Norm::pow(p, HalfInt::ZERO)
    }

    /// `p^exponent`.
    pub fn pow(p: u64, exponent: HalfInt) -> Self {
        Norm {
            p,
            exponent: Some(exponent),
        }
    }

    /// The norm `p^(-v)` belonging to a valuation `v`.
    pub fn from_valuation(p: u64, v: Valuation) -> Self {
        Norm {
            p,
            exponent: v.finite().map(|v| -v),
        }
    }

    /// Radius `p^(-k)`.
    pub fn radius(p: u64, k: HalfInt) -> Self {
        Norm::pow(p, -k)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> Option<HalfInt> {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.exponent.is_none()
    }

    /// The `k` with `self = p^(-k)`; `None` for zero.
    pub fn radius_exp(&self) -> Option<HalfInt> {
        self.exponent.map(|e| -e)
    }

    pub fn valuation(&self) -> Valuation {
        match self.exponent {
            Some(e) => Valuation::Finite(-e),
            None => Valuation::Infinite,
        }
    }

    /// `self / rhs`; `None` when `rhs` is zero.
    pub fn checked_div(self, rhs: Norm) -> Option<Norm> {
        let d = rhs.exponent?;
        Some(Norm {
            p: self.p,
            exponent: self.exponent.map(|a| a - d),
        })
    }

    /// Decimal-free rendering as an exact rational when the exponent is an
    /// integer, e.g. `1/25`; `None` for odd half-integer exponents.
    pub fn as_rational_string(&self) -> Option<String> {
        match self.exponent {
            None => Some("0".into()),
            Some(e) => {
                let e = e.as_integer()?;
                let base = num_bigint::BigInt::from(self.p).pow(e.unsigned_abs() as u32);
                Some(if e >= 0 { base.to_string() } else { format!("1/{base}") })
            }
        }
    }
}

impl Norm {
    /// Rational rendering when available, `p^(e)` otherwise.
    pub fn exact_string(&self) -> String {
        self.as_rational_string().unwrap_or_else(|| self.to_string())
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exponent.cmp(&other.exponent)
    }
}

impl Mul for Norm {
    type Output = Norm;

    // norms multiply by adding exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Norm) -> Norm {
        let exponent = match (self.exponent, rhs.exponent) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Norm { p: self.p, exponent }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            None => write!(f, "0"),
            Some(e) => write!(f, "{}^({})", self.p, e),
        }
    }
}
