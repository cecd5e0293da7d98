//! Scalar fields the pipeline runs over.
//!
//! Real-line computations are generic over [`Real`], implemented for exact
//! [`Rational`] and for `f64`. Unit-circle computations use [`C64`]. Generic
//! linear algebra only needs [`Field`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type C64 = Complex64;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Arithmetic is exact: comparisons against zero need no tolerance.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    /// Absolute value as a float, used for pivoting and residual reporting.
    fn magnitude(&self) -> f64;
    fn to_c64(&self) -> C64;
    fn conj(&self) -> Self;
}

pub trait Real: Field + PartialOrd + Display {
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;

    fn signum_i(&self) -> i32 {
        if self.is_zero() {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }

    /// Parses `p/q`, integers, and decimals (`0.25`, `-1.5e-3`).
    fn parse_str(s: &str) -> Result<Self>;

    /// The exact value, for exact types only.
    fn to_rational(&self) -> Option<Rational>;
    fn from_rational(q: Rational) -> Self;
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
    fn to_c64(&self) -> C64 {
        C64::new(*self, 0.0)
    }
    fn conj(&self) -> Self {
        *self
    }
}

impl Real for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn parse_str(s: &str) -> Result<Self> {
        let v = Real::to_f64(&parse_rational(s)?);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(parse_err(s))
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        None
    }
    fn from_rational(q: Rational) -> Self {
        Real::to_f64(&q)
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite float")
    }
    fn magnitude(&self) -> f64 {
        Real::to_f64(self).abs()
    }
    fn to_c64(&self) -> C64 {
        C64::new(Real::to_f64(self), 0.0)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Real for Rational {
    fn to_f64(&self) -> f64 {
        // BigRational::to_f64 handles huge numerators/denominators without
        // overflowing the intermediate conversions.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn parse_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
}

impl Field for C64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        C64::new(v, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

fn parse_err(s: &str) -> Error {
    Error::Parse {
        what: "number",
        input: s.to_string(),
    }
}

/// Exact parse of `p/q`, integers and decimal literals with optional exponent.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(parse_err(s));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(parse_err(s));
        }
        return Ok(num / den);
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| parse_err(s))?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(parse_err(s));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(parse_err(s));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| parse_err(s))?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if neg { -value } else { value })
}
