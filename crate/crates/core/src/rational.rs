//! Exact rational numbers and their text forms.
//!
//! Inputs are accepted as integers (`"790"`), decimals (`"0.632"`, `"-1.5"`)
//! or fractions (`"79/10"`). Nothing is ever routed through floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as an exact rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

fn malformed(input: &str, reason: &'static str) -> ParseRationalError {
    ParseRationalError {
        input: input.to_string(),
        reason,
    }
}

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

fn parse_digits(input: &str, digits: &str) -> Result<BigInt, ParseRationalError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed(input, "expected decimal digits"));
    }
    Ok(digits.parse().expect("validated digit string"))
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

fn parse_unsigned_decimal(input: &str, body: &str) -> Result<Rational, ParseRationalError> {
    match body.split_once('.') {
        None => Ok(Rational::from_integer(parse_digits(input, body)?)),
        Some((whole, frac)) => {
            if whole.is_empty() && frac.is_empty() {
                return Err(malformed(input, "no digits"));
            }
            let whole = if whole.is_empty() {
                BigInt::zero()
            } else {
                parse_digits(input, whole)?
            };
            if frac.is_empty() {
                return Ok(Rational::from_integer(whole));
            }
            let frac_digits = parse_digits(input, frac)?;
            let scale = num_traits::pow(BigInt::from(10u8), frac.len());
            Ok(Rational::new(whole * &scale + frac_digits, scale))
        }
    }
}

/// Parses an exact rational from integer, decimal or `p/q` notation.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(malformed(input, "empty string"));
    }
    let (negative, body) = split_sign(s);
    let value = match body.split_once('/') {
        Some((num, den)) => {
            let num = parse_unsigned_decimal(input, num.trim())?;
            let den = parse_unsigned_decimal(input, den.trim())?;
            if den.is_zero() {
                return Err(malformed(input, "zero denominator"));
            }
            num / den
        }
        None => parse_unsigned_decimal(input, body)?,
    };
    Ok(if negative { -value } else { value })
}

/// Canonical exact form: `p` for integers, `p/q` otherwise.
pub fn format_exact(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering rounded half away from zero to `digits` fractional digits.
pub fn format_decimal(value: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u8), digits);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if r * 2 >= *scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !(&int_part + &frac_part).is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_str_radix(10);
        format!("{sign}{int_part}.{frac:0>digits$}")
    }
}

/// Largest integer not above `value`.
pub fn floor(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

pub fn ceil(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_notations() {
        assert_eq!(parse_rational("790").unwrap(), integer(790));
        assert_eq!(parse_rational("0.632").unwrap(), ratio(632, 1000));
        assert_eq!(parse_rational("79/10").unwrap(), ratio(79, 10));
        assert_eq!(parse_rational("-4").unwrap(), integer(-4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("7.").unwrap(), integer(7));
        assert_eq!(parse_rational(" 1.5/3 ").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "abc", "1e3", "1/0", "1.2.3", "--1", "0x10", "1/", "/2", ".", "nan", "1 2",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(format_decimal(&ratio(79, 10), 6), "7.900000");
        assert_eq!(format_decimal(&ratio(2, 3), 3), "0.667");
        assert_eq!(format_decimal(&ratio(-2, 3), 3), "-0.667");
        assert_eq!(format_decimal(&ratio(-1, 3000), 3), "0.000");
        assert_eq!(format_decimal(&ratio(5, 2), 0), "3");
        assert_eq!(format_decimal(&ratio(1, 20), 1), "0.1");
    }

    #[test]
    fn exact_form_round_trips() {
        for v in [ratio(79, 10), integer(-4), ratio(-3, 7), integer(0)] {
            assert_eq!(parse_rational(&format_exact(&v)).unwrap(), v);
        }
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor(&ratio(79, 20)), BigInt::from(3));
        assert_eq!(ceil(&ratio(79, 20)), BigInt::from(4));
        assert_eq!(floor(&ratio(-1, 2)), BigInt::from(-1));
    }
}
