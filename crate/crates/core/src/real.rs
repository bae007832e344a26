//! Real parameters and their exact integer thresholds.
//!
//! Every set handled by this crate is cut out by inequalities between an
//! integer quantity and a real parameter, for instance `n ≤ x` or
//! `S(n) ≤ x·t`. Such an inequality is equivalent to the same inequality
//! against the floor of the parameter, so the parameters are converted once
//! to exact rationals and then to integer floors.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// A real number that converts exactly to a rational.
///
/// Floats convert to the exact binary value they hold, so `0.1_f64` is not
/// `1/10`. Non-finite floats have no exact value.
pub trait Real: fmt::Debug {
    fn to_exact(&self) -> Option<BigRational>;
}

impl<T: Real + ?Sized> Real for &T {
    fn to_exact(&self) -> Option<BigRational> {
        (**self).to_exact()
    }
}

impl Real for f64 {
    fn to_exact(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl Real for f32 {
    fn to_exact(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

macro_rules! int_real {
    ($($t:ty),*) => {$(
        impl Real for $t {
            fn to_exact(&self) -> Option<BigRational> {
                Some(BigRational::from_integer(BigInt::from(*self)))
            }
        }
    )*};
}

int_real!(i32, i64, i128, u32, u64, u128, usize);

macro_rules! ratio_real {
    ($($t:ty),*) => {$(
        impl Real for Ratio<$t> {
            fn to_exact(&self) -> Option<BigRational> {
                if self.denom().is_zero() {
                    return None;
                }
                Some(BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom())))
            }
        }
    )*};
}

ratio_real!(i32, i64, i128, u32, u64, u128);

impl Real for BigRational {
    fn to_exact(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

impl Real for BigInt {
    fn to_exact(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(self.clone()))
    }
}

/// Converts a parameter, rejecting non-finite values.
pub(crate) fn exact(name: &'static str, v: &impl Real) -> Result<BigRational> {
    v.to_exact()
        .ok_or_else(|| Error::invalid(name, "a finite number", format!("{v:?}")))
}

/// Converts a parameter and checks `v ≥ min`.
pub(crate) fn exact_at_least(
    name: &'static str,
    v: &impl Real,
    min: i64,
    requirement: &'static str,
) -> Result<BigRational> {
    let r = exact(name, v)?;
    if r < BigRational::from_integer(min.into()) {
        return Err(Error::invalid(name, requirement, display(&r)));
    }
    Ok(r)
}

/// Converts a parameter and checks `v > 0`.
pub(crate) fn exact_positive(name: &'static str, v: &impl Real) -> Result<BigRational> {
    let r = exact(name, v)?;
    if !r.is_positive() {
        return Err(Error::invalid(name, "positive", display(&r)));
    }
    Ok(r)
}

/// Floor of a rational, clamped to `[0, u64::MAX]`.
pub fn floor_u64(r: &BigRational) -> u64 {
    let f = r.floor().to_integer();
    match f.sign() {
        Sign::Minus | Sign::NoSign => 0,
        Sign::Plus => f.to_u64().unwrap_or(u64::MAX),
    }
}

/// Floor of a rational, clamped to `[0, u128::MAX]`.
pub fn floor_u128(r: &BigRational) -> u128 {
    let f = r.floor().to_integer();
    match f.sign() {
        Sign::Minus | Sign::NoSign => 0,
        Sign::Plus => f.to_u128().unwrap_or(u128::MAX),
    }
}

/// Decimal rendering used in error messages and CSV output: integers print
/// as integers, other rationals as `p/q`.
pub fn display(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a decimal number, possibly in scientific notation, as an exact
/// rational: `1e6`, `2.5`, `-3`, `1.25E-2`, and also fractions `7/2`.
pub fn parse_exact(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_exact(p)?;
        let q = parse_exact(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(p / q);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent.checked_sub(frac_part.len() as i32)?;
    if scale.abs() > 4096 {
        return None;
    }
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(digits);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -r } else { r })
}

/// Integer square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}
