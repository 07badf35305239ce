//! Exact rational arithmetic and evaluation of `f(x) = αx + β mod 1`.
//!
//! Every quantity in this crate (slopes, intercepts, f-values, gaps, vertex
//! coordinates and areas) is a [`Rational`]. There is no floating point on
//! any path that decides a comparison; `f64` only appears when an SVG
//! coordinate is finally printed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {input:?} as a rational number")]
    Parse { input: String },
    #[error("{0} is not in [0, 1)")]
    OutOfUnitRange(Rational),
}

/// An exact fraction, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den` in canonical form.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ExactError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        let (_, r) = self.numer().div_mod_floor(self.denom());
        Rational(BigRational::new(r, self.denom().clone()))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Nearest `f64`; only for rendering.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `(numerator, denominator)` as `i128`, if both fit.
    pub fn to_i128_pair(&self) -> Option<(i128, i128)> {
        Some((self.numer().to_i128()?, self.denom().to_i128()?))
    }

    /// Parses `"p/q"`, `"p"`, or a decimal literal such as `"0.44"` / `".44"`,
    /// each with an optional sign. Decimals are read exactly as `p / 10^k`.
    pub fn parse(s: &str) -> Result<Self, ExactError> {
        let err = || ExactError::Parse { input: s.to_string() };
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let num = parse_signed_integer(p).ok_or_else(err)?;
            let den = parse_signed_integer(q).ok_or_else(err)?;
            return Rational::new(num, den);
        }
        parse_decimal(t).ok_or_else(err)
    }
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let (neg, digits) = split_sign(s.trim());
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if neg { -v } else { v })
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = split_sign(s);
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().ok()?;
    if neg {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Rational::new(num, den).ok()
}

impl FromStr for Rational {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational::parse(s)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the integer types; use `checked_div` when
// the divisor is untrusted.
forward_binop!(Div, div);

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

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// A rational in the half-open unit interval `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitRational(Rational);

impl UnitRational {
    pub fn new(value: Rational) -> Result<Self, ExactError> {
        if value.is_negative() || value >= Rational::one() {
            return Err(ExactError::OutOfUnitRange(value));
        }
        Ok(UnitRational(value))
    }

    /// Reduces any rational mod 1.
    pub fn wrap(value: &Rational) -> Self {
        UnitRational(value.fract())
    }

    pub fn zero() -> Self {
        UnitRational(Rational::zero())
    }

    /// Shorthand for literals; panics if `num/den` is outside `[0, 1)`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(Rational::frac(num, den)).expect("value in [0, 1)")
    }

    pub fn get(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }
}

impl std::ops::Deref for UnitRational {
    type Target = Rational;
    fn deref(&self) -> &Rational {
        &self.0
    }
}

impl TryFrom<Rational> for UnitRational {
    type Error = ExactError;
    fn try_from(value: Rational) -> Result<Self, Self::Error> {
        UnitRational::new(value)
    }
}

impl FromStr for UnitRational {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnitRational::new(s.parse()?)
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `f(x) = αx + β mod 1`, exactly.
pub fn frac_eval(alpha: &UnitRational, beta: &UnitRational, x: u64) -> UnitRational {
    let y = alpha.get() * Rational::from(x) + beta.get();
    UnitRational(y.fract())
}

impl PartialEq<Rational> for UnitRational {
    fn eq(&self, other: &Rational) -> bool {
        &self.0 == other
    }
}

impl PartialOrd<Rational> for UnitRational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}
