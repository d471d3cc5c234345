//! Scalar helpers for the arbitrary-precision rational field.
//!
//! `Rational` is `num_rational::BigRational`, always kept in lowest terms with
//! a positive denominator. Everything here is small glue: construction
//! shorthands, the `p/q` string format used on disk, exact roots where they
//! exist, and dyadic bounds for square roots.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `p`, `p/q`, or a finite decimal such as `-1.25` or `3e-2`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Ok(n) = BigInt::from_str(t) {
        return Ok(int_rat(n));
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let mut value = int_rat(BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = rat(10);
    let factor = pow_rational(&ten, scale.unsigned_abs());
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Some(if neg { -value } else { value })
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Out of f64 range: fall back to the sign of the value.
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn pow_rational(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = q.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

pub fn pow_bigint(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

/// Exact integer `k`-th root, if `n >= 0` is a perfect `k`-th power.
fn exact_int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if pow_bigint(&r, k) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `k`-th root of a positive rational when it is rational.
pub fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 || q.is_negative() {
        return None;
    }
    let n = exact_int_root(q.numer(), k)?;
    let d = exact_int_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

/// `q^(p/k)` when it is rational; `q > 0`.
pub fn rational_power(q: &Rational, exponent: &Rational) -> Option<Rational> {
    if !q.is_positive() {
        return None;
    }
    let k = exponent.denom().to_u32()?;
    let p = exponent.numer();
    let root = exact_root(q, k)?;
    let e = p.abs().to_u32()?;
    let v = pow_rational(&root, e);
    Some(if p.is_negative() { v.recip() } else { v })
}

/// Lower dyadic bound on `sqrt(q)` with `bits` fractional bits; `q >= 0`.
pub fn sqrt_lower(q: &Rational, bits: u32) -> Rational {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (q.numer() * &scale).div_floor(q.denom());
    let root = scaled.sqrt();
    Rational::new(root, BigInt::one() << bits as usize)
}

/// Upper dyadic bound on `sqrt(q)` with `bits` fractional bits; `q >= 0`.
pub fn sqrt_upper(q: &Rational, bits: u32) -> Rational {
    let lo = sqrt_lower(q, bits);
    if &lo * &lo == *q {
        lo
    } else {
        lo + Rational::new(BigInt::one(), BigInt::one() << bits as usize)
    }
}

/// Rounds to the nearest multiple of `2^-bits`.
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = q * int_rat(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn sign(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("2e-2").unwrap(), ratio(1, 50));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&ratio(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(5)), "5");
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_root(&ratio(9, 4), 2), Some(ratio(3, 2)));
        assert_eq!(exact_root(&rat(2), 2), None);
        assert_eq!(rational_power(&ratio(1, 2), &rat(2)), Some(ratio(1, 4)));
        assert_eq!(rational_power(&rat(8), &ratio(2, 3)), Some(rat(4)));
        assert_eq!(rational_power(&rat(2), &ratio(1, 2)), None);
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = rat(2);
        let lo = sqrt_lower(&two, 40);
        let hi = sqrt_upper(&two, 40);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!(&hi - &lo <= ratio(1, 1 << 39));
        assert_eq!(sqrt_upper(&rat(9), 10), rat(3));
    }
}
