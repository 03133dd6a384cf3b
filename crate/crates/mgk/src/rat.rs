//! Exact rational scalars.
//!
//! The scalar field everywhere is `ℚ`, represented by [`num_rational::BigRational`]
//! (arbitrary-precision, always reduced, positive denominator). On every JSON
//! and TOML surface rationals travel as strings `"p/q"` (or `"p"` when the
//! denominator is 1) so no float ever enters the pipeline.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The exact scalar type used throughout the crate.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal {0:?}")]
    BadInt(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational literal {0:?} (expected \"p\" or \"p/q\")")]
    Malformed(String),
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let numer = parts.next().ok_or(ParseRatError::Empty)?;
    let numer: BigInt = numer
        .trim()
        .parse()
        .map_err(|_| ParseRatError::BadInt(s.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(numer)),
        Some(denom) => {
            let denom: BigInt = denom
                .trim()
                .parse()
                .map_err(|_| ParseRatError::Malformed(s.to_string()))?;
            if denom.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r` as an integer, if it is one.
pub fn as_integer(r: &Rat) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Splits `r` into its integer floor and fractional part in `[0, 1)`.
pub fn floor_split(r: &Rat) -> (BigInt, Rat) {
    let fl = r.floor();
    let frac = r - &fl;
    debug_assert!(!frac.is_negative() && frac < Rat::one());
    (fl.to_integer(), frac)
}
