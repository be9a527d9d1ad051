//! Scalars, exact/float values and exponents.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Comparison tolerance used wherever floating values are compared.
pub const FLOAT_TOL: f64 = 1e-9;

/// Numeric type the maximal operator can be evaluated in.
///
/// Implemented for `f64` and [`BigRational`]; the latter keeps every average exact.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + fmt::Debug + Send + Sync
{
    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count fits the scalar type")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + fmt::Debug + Send + Sync
{
}

pub(crate) fn max_of<T: PartialOrd + Clone>(a: T, b: &T) -> T {
    if *b > a {
        b.clone()
    } else {
        a
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `p/q`, always including the denominator.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, an integer, or a decimal literal such as `0.25` or `-1.5e-2` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
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
    let mut value = BigRational::from_integer(BigInt::from_str(&all).map_err(|_| bad())?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// A value that is either an exact rational or a double.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Rational(BigRational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Number::Float(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Number::Rational(r) => Some(r),
            Number::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Rational(_))
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) => f.write_str(&format_ratio(r)),
            Number::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<BigRational> for Number {
    fn from(r: BigRational) -> Self {
        Number::Rational(r)
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Self {
        Number::Float(x)
    }
}

/// An exponent `p` in `(0, ∞]`.
///
/// Exponents parsed from text keep their exact rational value, so questions such as
/// "is `n / p'` an integer" are decided without rounding. Exponents built from an `f64`
/// carry no exact value and fall back to [`FLOAT_TOL`] comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponent {
    value: f64,
    exact: Option<Ratio<i64>>,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::InvalidExponent { p: p.to_string(), reason: "must be positive" });
        }
        Ok(Exponent { value: p, exact: None })
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 || num == 0 || (num < 0) != (den < 0) {
            return Err(Error::InvalidExponent {
                p: format!("{num}/{den}"),
                reason: "must be a positive fraction",
            });
        }
        let r = Ratio::new(num, den);
        Ok(Exponent { value: num as f64 / den as f64, exact: Some(r) })
    }

    pub fn infinity() -> Self {
        Exponent { value: f64::INFINITY, exact: None }
    }

    pub fn one() -> Self {
        Exponent::ratio(1, 1).expect("1 is a valid exponent")
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<Ratio<i64>> {
        self.exact
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn is_one(&self) -> bool {
        match self.exact {
            Some(r) => r.is_one(),
            None => self.value == 1.0,
        }
    }

    /// Conjugate exponent `p' = p / (p - 1)`; `None` unless `p > 1`.
    pub fn conjugate(&self) -> Option<Exponent> {
        if self.value <= 1.0 || self.is_one() {
            return None;
        }
        if self.is_infinite() {
            return Some(Exponent::one());
        }
        Some(match self.exact {
            Some(r) => Exponent::ratio(*r.numer(), *r.numer() - *r.denom()).ok()?,
            None => Exponent { value: self.value / (self.value - 1.0), exact: None },
        })
    }

    pub(crate) fn require_at_most_one(&self) -> Result<()> {
        if self.value > 1.0 && !self.is_one() {
            return Err(Error::InvalidExponent { p: self.to_string(), reason: "must lie in (0, 1]" });
        }
        Ok(())
    }

    pub(crate) fn require_above_one(&self) -> Result<()> {
        if self.value <= 1.0 || self.is_one() {
            return Err(Error::InvalidExponent { p: self.to_string(), reason: "must exceed 1" });
        }
        if self.is_infinite() {
            return Err(Error::InvalidExponent { p: self.to_string(), reason: "must be finite" });
        }
        Ok(())
    }

    pub(crate) fn require_finite(&self) -> Result<()> {
        if self.is_infinite() {
            return Err(Error::InvalidExponent { p: self.to_string(), reason: "must be finite" });
        }
        Ok(())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            return f.write_str("inf");
        }
        match self.exact {
            Some(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Exponent::infinity());
        }
        let r = parse_rational(t)?;
        let invalid = || Error::InvalidExponent { p: t.to_string(), reason: "must be a positive fraction" };
        if !r.is_positive() {
            return Err(invalid());
        }
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Exponent::ratio(a, b),
            _ => Exponent::new(r.to_f64().ok_or_else(invalid)?),
        }
    }
}
