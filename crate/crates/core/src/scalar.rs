//! Exact rational scalars.
//!
//! Every coefficient in the workbench is an arbitrary-precision rational kept
//! in lowest terms. The values that actually arise are dyadic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> ExactScalar {
    frac(1, 2)
}

/// Formats as `a/b`, always with an explicit denominator.
pub fn format(x: &ExactScalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `a/b` or a bare integer.
pub fn parse(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn is_integer(x: &ExactScalar) -> bool {
    x.denom().is_one()
}

/// Converts to `i64` when the value is an integer that fits.
pub fn to_i64(x: &ExactScalar) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

/// Twice the value as an `i64`, when that is an integer.
pub fn to_doubled_i64(x: &ExactScalar) -> Option<i64> {
    to_i64(&(x * int(2)))
}

pub fn is_dyadic(x: &ExactScalar) -> bool {
    let d = x.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(format(&frac(-1, 2)), "-1/2");
        assert_eq!(format(&int(3)), "3/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn dyadic() {
        assert!(is_dyadic(&frac(3, 8)));
        assert!(is_dyadic(&int(5)));
        assert!(!is_dyadic(&frac(1, 3)));
        assert_eq!(to_doubled_i64(&frac(-3, 2)), Some(-3));
        assert_eq!(to_doubled_i64(&frac(1, 4)), None);
    }
}
