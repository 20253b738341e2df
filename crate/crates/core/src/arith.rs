//! Exact integer and rational helpers.
//!
//! [`Rational`] is `num_rational::BigRational`: it is reduced on every
//! construction, keeps a positive denominator and represents zero as `0/1`,
//! so structural equality is value equality.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_list(values: &[u64]) -> Result<u64> {
    check_positive_list(values)?;
    Ok(values.iter().fold(0u64, |g, &v| g.gcd(&v)))
}

/// Least common multiple of a nonempty list of positive integers.
pub fn lcm_list(values: &[u64]) -> Result<BigUint> {
    check_positive_list(values)?;
    Ok(values
        .iter()
        .fold(BigUint::one(), |l, &v| l.lcm(&BigUint::from(v))))
}

fn check_positive_list(values: &[u64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::usage(
            "expected a nonempty list of positive integers",
        ));
    }
    if values.contains(&0) {
        return Err(Error::usage("list entries must be positive"));
    }
    Ok(())
}

/// Greatest integer not exceeding `r`.
pub fn rational_floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Fractional part `r - floor(r)`, always in `[0, 1)`.
pub fn fractional_part(r: &Rational) -> Rational {
    r - Rational::from_integer(rational_floor(r))
}

pub fn rational_from_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num/den"` or a bare integer `"n"`. Whitespace around the parts is
/// ignored; a zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Serializes as `"num/den"`, or `"n"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Converts to the nearest double, also for operands whose numerator and
/// denominator individually overflow `f64`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().abs();
    let den = r.denom();
    // Shift so the integer quotient carries 64 significant bits.
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if shift >= 0 {
        num / (den << shift as usize)
    } else {
        (num << (-shift) as usize) / den
    };
    let mantissa = q.to_f64().unwrap_or(f64::INFINITY);
    let value = mantissa * 2f64.powi(shift as i32);
    if r.is_negative() {
        -value
    } else {
        value
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
