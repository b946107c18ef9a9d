//! Arbitrary-precision rationals and small helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    assert!(d != 0);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p`, or `p/q` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::ParseError(format!("bad rational `{s}`")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::ParseError(format!("bad rational `{s}`")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Denominator of a rational in lowest terms, as a positive integer.
pub fn denominator_u32(r: &Rat) -> Option<u32> {
    use num_traits::ToPrimitive;
    r.denom().abs().to_u32()
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
