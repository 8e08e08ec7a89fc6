//! Exact rational scalars and the literal grammar shared with instance files.
//!
//! Accepted literals are integers (`-3`), fractions (`7/2`) and finite
//! decimals (`-0.25`). Everything is normalized to lowest terms on parse, so
//! printing a parsed value yields the canonical form.

use std::fmt::Write as _;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point of a finite-dimensional rational space.
pub type Vector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn vector(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Rational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_int(n).ok_or_else(err)?;
        let d = parse_int(d).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if whole.len() - whole_digits.len() > 1
            || !whole_digits.bytes().all(|b| b.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut n: BigInt = digits.parse().map_err(|_| err())?;
        if negative {
            n = -n;
        }
        let d = num::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    parse_int(t).map(Rational::from_integer).ok_or_else(err)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a comma-separated list such as `"1/2,3"`.
pub fn parse_vector(s: &str) -> Result<Vector> {
    s.split(',').map(parse_rational).collect()
}

pub fn format_rational(r: &Rational) -> String {
    // BigRational's Display already prints lowest terms and drops "/1".
    r.to_string()
}

pub fn format_vector(v: &[Rational]) -> String {
    let mut out = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{x}");
    }
    out.push(')');
    out
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scaled(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

/// `a + s·b`
pub fn axpy(a: &[Rational], s: &Rational, b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn all_positive(v: &[Rational]) -> bool {
    v.iter().all(Signed::is_positive)
}

pub fn all_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// Lossy conversion for rendering only.
pub fn to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.50").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a", "1.", "1/2/3", "--1", "1e3", "0x10", "1.2.3", "/2"] {
            assert!(parse_rational(s).is_err(), "{s:?} should be rejected");
        }
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-2/1").unwrap()), "-2");
        assert_eq!(format_vector(&[ratio(1, 2), int(1)]), "(1/2,1)");
        assert_eq!(parse_vector("1/2,3").unwrap(), vec![ratio(1, 2), int(3)]);
    }

    proptest::proptest! {
        #[test]
        fn print_parse_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
            let r = ratio(n, d);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
