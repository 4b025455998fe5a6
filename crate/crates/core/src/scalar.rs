//! Numeric backends.
//!
//! Every computation is generic over [`Scalar`]. The exact backend is
//! [`Rational`] (arbitrary precision); `f64` is the fast approximate one.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational numbers.
pub type Rational = BigRational;

/// Relative tolerance used when comparing floating point results.
pub const FLOAT_TOLERANCE: f64 = 1e-10;

/// Arithmetic needed by the graph algorithms.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Sum
{
    /// True when arithmetic is exact.
    const EXACT: bool;
    /// Backend name as used on the command line.
    const NAME: &'static str;

    fn from_i64(n: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value (binary expansion for floats).
    fn to_rational(&self) -> Rational;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Text form used in JSON output: `a/b` for rationals, shortest
    /// round-trip decimal for floats.
    fn render(&self) -> String;

    /// `n / d`.
    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn from_usize(n: usize) -> Self {
        Self::from_i64(n as i64)
    }

    /// Equality for exact backends; agreement to [`FLOAT_TOLERANCE`]
    /// relative to `max(|self|, |other|, |scale|)` for floats.
    fn close(&self, other: &Self, scale: &Self) -> bool {
        if Self::EXACT {
            return self == other;
        }
        let a = self.to_f64();
        let b = other.to_f64();
        let s = a.abs().max(b.abs()).max(scale.to_f64().abs());
        (a - b).abs() <= FLOAT_TOLERANCE * s
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    /// Decimal text rounded to `digits` places.
    fn render_decimal(&self, digits: usize) -> String {
        rational_to_decimal(&self.to_rational(), digits)
    }

    /// Parses an edge length or coefficient: `a/b`, an integer or a decimal.
    fn parse(text: &str) -> Result<Self, Error> {
        parse_rational(text).map(|r| Self::from_rational(&r))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Parses `a/b`, `a`, `-a.bc` or `1.5e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = all.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Rounds half away from zero to `digits` decimal places.
pub fn rational_to_decimal(value: &Rational, digits: usize) -> String {
    let negative = Signed::is_negative(value);
    let scaled = Signed::abs(value) * Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if r * BigInt::from(2) >= *scaled.denom() { q + 1 } else { q };
    let mut text = rounded.to_string();
    if digits > 0 {
        if text.len() <= digits {
            text = format!("{}{}", "0".repeat(digits + 1 - text.len()), text);
        }
        text.insert(text.len() - digits, '.');
    }
    if negative && rounded_nonzero(&text) {
        text.insert(0, '-');
    }
    text
}

fn rounded_nonzero(text: &str) -> bool {
    text.chars().any(|c| c.is_ascii_digit() && c != '0')
}

/// Rational approximation of `sqrt(n)` accurate to well below 1e-40.
pub fn sqrt_approx(n: u64) -> Rational {
    let target = Rational::from_integer(BigInt::from(n));
    let mut x = Rational::from_integer(BigInt::from((n as f64).sqrt().ceil() as u64 + 1));
    let two = Rational::from_integer(BigInt::from(2));
    for _ in 0..7 {
        x = (x.clone() + &target / &x) / &two;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/6").unwrap(), q(1, 6));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn renders_rationals() {
        assert_eq!(q(17, 288).render(), "17/288");
        assert_eq!(q(4, 2).render(), "2");
        assert_eq!(0.5f64.render(), "0.5");
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(rational_to_decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(rational_to_decimal(&q(2, 3), 2), "0.67");
        assert_eq!(rational_to_decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(rational_to_decimal(&q(-1, 1000), 2), "0.00");
        assert_eq!(rational_to_decimal(&q(7, 2), 0), "4");
    }

    #[test]
    fn sqrt_brackets() {
        let s = sqrt_approx(79);
        let err = &s * &s - Rational::from_i64(79);
        assert!(Signed::abs(&err) < q(1, 1_000_000_000_000_000_000));
    }

    #[test]
    fn float_closeness_is_relative() {
        assert!(1.0f64.close(&(1.0 + 1e-12), &1.0));
        assert!(!1.0f64.close(&(1.0 + 1e-8), &1.0));
        assert!(0.0f64.close(&1e-12, &1.0));
    }
}
