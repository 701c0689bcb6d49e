//! Exact rational scalars.
//!
//! All factor algebra runs over arbitrary-precision rationals; the zero test is
//! exact and nothing is ever rounded.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses an integer (`-3`), an exact decimal (`1.25`, `-.5`) or a rational (`-6/5`).
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(p)?;
        let q = parse_int(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(Scalar::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (neg, whole) = match whole.strip_prefix('-') {
            Some(w) => (true, w),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if whole.is_empty() && frac.is_empty() {
            return None;
        }
        let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(whole) || !digits_ok(frac) {
            return None;
        }
        let joined = format!("{whole}{frac}");
        let numer = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).ok()?;
        let denom = num::pow(BigInt::from(10), frac.len());
        let v = Scalar::new(numer, denom);
        return Some(if neg { -v } else { v });
    }
    parse_int(s).map(Scalar::from_integer)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(v: &Scalar) -> String {
    v.to_string()
}

pub fn to_f64(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn is_one(v: &Scalar) -> bool {
    v.is_one()
}

pub fn abs(v: &Scalar) -> Scalar {
    v.abs()
}
