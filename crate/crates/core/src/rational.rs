//! Exact non-floating weights and distances.
//!
//! Every weight, distance and ratio in the crate is a [`Rational`]. Arithmetic
//! is checked: an overflow of the underlying `i128` aborts loudly instead of
//! wrapping, so no comparison is ever decided on a corrupted value.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const fn zero() -> Self {
        Rational(Ratio::new_raw(0, 1))
    }

    pub const fn one() -> Self {
        Rational(Ratio::new_raw(1, 1))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    /// `numer / denom`, reduced. Panics on a zero denominator.
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "rational with zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
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

    pub fn to_f64(&self) -> f64 {
        let (q, r) = self.numer().div_rem(&self.denom());
        q as f64 + r as f64 / self.denom() as f64
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_add(&rhs.0).map(Rational)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_mul(&rhs.0).map(Rational)
    }

    /// Nearest multiple of `2^-bits` to `x`, ties away from zero.
    pub fn dyadic_from_f64(x: f64, bits: u32) -> Self {
        assert!(x.is_finite(), "non-finite value cannot be made exact");
        assert!(bits <= 100);
        let scale = (1u128 << bits) as f64;
        let numer = (x * scale).round() as i128;
        Rational::new(numer, 1i128 << bits)
    }

    /// A dyadic rational within `tolerance` of `log2(n)`; exact when `n` is a
    /// power of two.
    pub fn log2_approx(n: u64, tolerance: Rational) -> Self {
        assert!(n >= 1);
        assert!(tolerance.is_positive());
        if n.is_power_of_two() {
            return Rational::integer(n.trailing_zeros() as i128);
        }
        // f64 log2 is accurate to ~1e-15; rounding to a grid of half the
        // tolerance keeps the total error strictly below it.
        let mut bits = 1u32;
        while Rational::new(1, 1i128 << bits) > tolerance {
            bits += 1;
        }
        Rational::dyadic_from_f64((n as f64).log2(), bits + 1)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Always renders as `p/q`, including integers (`3/1`).
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {0:?}: expected `p/q` or an integer with q >= 1")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| err())?;
                let q: i128 = q.trim().parse().map_err(|_| err())?;
                if q < 1 {
                    return Err(err());
                }
                Ok(Rational::new(p, q))
            }
            None => s.parse::<i128>().map(Rational::integer).map_err(|_| err()),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! checked_op {
    ($trait:ident, $method:ident, $checked:ident, $name:literal) => {
        impl $trait for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                Rational(
                    self.0
                        .$checked(&rhs.0)
                        .unwrap_or_else(|| panic!("rational overflow in {} ({self} {} {rhs})", $name, $name)),
                )
            }
        }

        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &'a Rational) -> Rational {
                (*self).$method(*rhs)
            }
        }
    };
}

checked_op!(Add, add, checked_add, "+");
checked_op!(Sub, sub, checked_sub, "-");
checked_op!(Mul, mul, checked_mul, "*");

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(
            self.0
                .checked_div(&rhs.0)
                .unwrap_or_else(|| panic!("rational overflow in / ({self} / {rhs})")),
        )
    }
}

impl AddAssign for Rational {
    #[inline]
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + *b)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n as i128)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::integer(n as i128)
    }
}

/// A shortest-path length: finite and exact, or unreachable.
///
/// `Finite(_) < Infinite` for every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(Rational),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Distance::Finite(r) => Some(r),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// `self <= bound`, treating `Infinite` as larger than everything.
    pub fn at_most(&self, bound: Rational) -> bool {
        match self {
            Distance::Finite(d) => *d <= bound,
            Distance::Infinite => false,
        }
    }

    pub fn exceeds(&self, bound: Rational) -> bool {
        !self.at_most(bound)
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        match self {
            Distance::Finite(d) => d.cmp(r),
            Distance::Infinite => Ordering::Greater,
        }
    }
}

impl From<Rational> for Distance {
    fn from(r: Rational) -> Self {
        Distance::Finite(r)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(r) => r.fmt(f),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Least common multiple of the denominators, used to move a whole weight
/// set onto a common integer scale.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, r| acc.lcm(&r.denom()))
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}
