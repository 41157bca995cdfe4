//! Exact rational helpers shared by the probability and polytope layers.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/8"` or a plain decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().map_err(|_| bad())? };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical text: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal text with `digits` significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let mag = libm::floor(libm::log10(libm::fabs(x))) as i32;
    if !(-6..=15).contains(&mag) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

const GRID_BITS: i32 = 40;

/// Rounds a double to the nearest multiple of 2^-40.
pub fn rationalize(x: f64) -> Rational {
    let scaled = libm::round(x * libm::ldexp(1.0, GRID_BITS));
    let n = BigInt::from(scaled as i128);
    Rational::new(n, BigInt::one() << GRID_BITS as usize)
}

pub fn lcm_u128(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

/// Converts a nonnegative rational with a small denominator to `(numer, denom)`.
pub fn to_u128_pair(r: &Rational) -> Result<(u128, u128)> {
    if r.is_negative() {
        return Err(Error::Parse(format!("negative value {}", format_rational(r))));
    }
    let n = r.numer().to_u128().ok_or(Error::Overflow)?;
    let d = r.denom().to_u128().ok_or(Error::Overflow)?;
    Ok((n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(2.655639062229566, 12), "2.65563906223");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(-0.125, 12), "-0.125");
        assert_eq!(format_sig(1234.6, 3), "1235");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/32").unwrap(), ratio(1, 32));
        assert_eq!(parse_rational(" 2/64 ").unwrap(), ratio(1, 32));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn format_roundtrip() {
        for s in ["0", "1", "3/8", "-5/7", "123456789012345678901/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn rationalize_grid() {
        let r = rationalize(0.5);
        assert_eq!(r, ratio(1, 2));
        let x = 0.123456789;
        assert!((to_f64(&rationalize(x)) - x).abs() < 1e-12);
    }
}
