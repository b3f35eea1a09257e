//! Exact rational arithmetic helpers. Every certified quantity in this crate
//! is a `Rational`; floating point never enters a verdict.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in reduced form by `num-rational`.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `num/den` (`den` omitted when 1), the wire format
/// used in all JSON output and weighting files.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num`, `num/den` or `-num/den`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let err = || Error::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| err())?;
    let den: BigInt = den.trim().parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Least integer `>= r`.
pub fn ceil_to_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// True when `r` is a nonnegative value.
pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_roundtrip() {
        for s in ["0", "5", "-3", "5/2", "-7/3", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_rational("4/2").unwrap(), rat(2));
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn ceil_works_on_halves() {
        assert_eq!(ceil_to_int(&ratio(33, 2)), BigInt::from(17));
        assert_eq!(ceil_to_int(&rat(4)), BigInt::from(4));
        assert_eq!(ceil_to_int(&ratio(-3, 2)), BigInt::from(-1));
    }
}
