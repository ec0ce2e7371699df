//! Exact rational scalars.
//!
//! Every coordinate and every membership degree in this crate is an
//! [`ExactNumber`], a wrapper around an arbitrary-precision rational.
//! The revised sum picks its case by comparing coordinates for equality,
//! so any rounding at all would silently change which branch is taken;
//! keeping the arithmetic exact is what makes results reproducible.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

/// An exact rational number.
///
/// Parses from integer text (`"42"`), finite decimal text (`"-2.75"`), or a
/// fraction (`"5/3"`), and displays as an integer when the value is integral
/// and as `numer/denom` in lowest terms otherwise. Arithmetic and comparison
/// are exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactNumber(BigRational);

/// Failure to read an [`ExactNumber`] from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseExactError {
    #[error("empty numeric text")]
    Empty,
    #[error("cannot parse {text:?} as an exact number (expected an integer, a finite decimal, or \"p/q\")")]
    Invalid { text: String },
    #[error("zero denominator in {text:?}")]
    ZeroDenominator { text: String },
}

impl ExactNumber {
    pub fn zero() -> Self {
        ExactNumber(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactNumber(BigRational::one())
    }

    pub fn from_int(value: i64) -> Self {
        ExactNumber(BigRational::from_integer(BigInt::from(value)))
    }

    /// Builds `numer / denom` in lowest terms.
    ///
    /// # Panics
    ///
    /// Panics if `denom` is zero.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        ExactNumber(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<i64> for ExactNumber {
    fn from(value: i64) -> Self {
        ExactNumber::from_int(value)
    }
}

impl From<u64> for ExactNumber {
    fn from(value: u64) -> Self {
        ExactNumber(BigRational::from_integer(BigInt::from(value)))
    }
}

fn all_digits(text: &str) -> bool {
    !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit())
}

fn parse_digits(text: &str, original: &str) -> Result<BigInt, ParseExactError> {
    if !all_digits(text) {
        return Err(ParseExactError::Invalid {
            text: original.to_owned(),
        });
    }
    BigInt::from_str(text).map_err(|_| ParseExactError::Invalid {
        text: original.to_owned(),
    })
}

impl FromStr for ExactNumber {
    type Err = ParseExactError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Err(ParseExactError::Empty);
        }
        let (negative, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, trimmed),
        };

        let magnitude = if let Some((numer, denom)) = body.split_once('/') {
            let numer = parse_digits(numer, trimmed)?;
            let denom = parse_digits(denom, trimmed)?;
            if denom.is_zero() {
                return Err(ParseExactError::ZeroDenominator {
                    text: trimmed.to_owned(),
                });
            }
            BigRational::new(numer, denom)
        } else if let Some((whole, frac)) = body.split_once('.') {
            if !all_digits(whole) || !all_digits(frac) {
                return Err(ParseExactError::Invalid {
                    text: trimmed.to_owned(),
                });
            }
            let scaled = parse_digits(&format!("{whole}{frac}"), trimmed)?;
            let scale = BigInt::from(10).pow(frac.len() as u32);
            BigRational::new(scaled, scale)
        } else {
            BigRational::from_integer(parse_digits(body, trimmed)?)
        };

        Ok(ExactNumber(if negative { -magnitude } else { magnitude }))
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for ExactNumber {
    type Output = ExactNumber;

    fn add(self, rhs: ExactNumber) -> ExactNumber {
        ExactNumber(self.0 + rhs.0)
    }
}

impl Add for &ExactNumber {
    type Output = ExactNumber;

    fn add(self, rhs: &ExactNumber) -> ExactNumber {
        ExactNumber(&self.0 + &rhs.0)
    }
}

impl Sub for ExactNumber {
    type Output = ExactNumber;

    fn sub(self, rhs: ExactNumber) -> ExactNumber {
        ExactNumber(self.0 - rhs.0)
    }
}

impl Mul for ExactNumber {
    type Output = ExactNumber;

    fn mul(self, rhs: ExactNumber) -> ExactNumber {
        ExactNumber(self.0 * rhs.0)
    }
}

impl Mul for &ExactNumber {
    type Output = ExactNumber;

    fn mul(self, rhs: &ExactNumber) -> ExactNumber {
        ExactNumber(&self.0 * &rhs.0)
    }
}

impl Sub for &ExactNumber {
    type Output = ExactNumber;

    fn sub(self, rhs: &ExactNumber) -> ExactNumber {
        ExactNumber(&self.0 - &rhs.0)
    }
}

impl Div for ExactNumber {
    type Output = ExactNumber;

    /// # Panics
    ///
    /// Panics on division by zero.
    fn div(self, rhs: ExactNumber) -> ExactNumber {
        assert!(!rhs.0.is_zero(), "division by zero");
        ExactNumber(self.0 / rhs.0)
    }
}

impl Div for &ExactNumber {
    type Output = ExactNumber;

    /// # Panics
    ///
    /// Panics on division by zero.
    fn div(self, rhs: &ExactNumber) -> ExactNumber {
        assert!(!rhs.0.is_zero(), "division by zero");
        ExactNumber(&self.0 / &rhs.0)
    }
}
