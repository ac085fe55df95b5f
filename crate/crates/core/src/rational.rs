//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Falling factorial `(x)_k = x (x-1) ... (x-k+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term -= Rational::one();
    }
    acc
}

/// `x^k` for a possibly negative exponent. Panics on `0^k` with `k < 0`.
pub fn powi(x: &Rational, k: i64) -> Rational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

pub fn sign_pow(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Parses `"p"`, `"p/q"`, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse("empty rational"));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if t.contains('/') {
            return Err(Error::parse(format!("cannot parse rational {s:?}")));
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let num = BigInt::from_str(&digits).map_err(|_| Error::parse(format!("cannot parse rational {s:?}")))?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = Rational::new(num, den);
        return Ok(if negative { -r } else { r });
    }
    let r = Rational::from_str(t).map_err(|_| Error::parse(format!("cannot parse rational {s:?}")))?;
    Ok(r)
}

/// Comma separated list of rationals, e.g. `"0,1,1/2"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_rational).collect()
}

/// Canonical `"num/den"` text (`"num"` for integers).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow of either part.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else if r.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    })
}

/// Rational approximation of `sqrt(x)` with absolute error below `10^-digits`,
/// together with a flag telling whether the result is exact.
pub fn sqrt_approx(x: &Rational, digits: u32) -> (Rational, bool) {
    assert!(!x.is_negative(), "square root of a negative rational");
    if let Some(r) = exact_sqrt(x) {
        return (r, true);
    }
    // floor(sqrt(x * 10^(2 digits))) / 10^digits, slightly pushed to guarantee the bound
    let scale = num_traits::pow(BigInt::from(10), digits as usize + 1);
    let scaled = x * Rational::from_integer(&scale * &scale);
    let floor = scaled.floor().to_integer();
    let root = floor.sqrt();
    (Rational::new(root, scale), false)
}

pub fn exact_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

pub(crate) mod serde_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw: Vec<RationalText> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|t| parse_rational(&t.0).map_err(serde::de::Error::custom))
            .collect()
    }

    /// Accepts both `"1/2"` and bare JSON integers.
    struct RationalText(String);

    impl<'de> Deserialize<'de> for RationalText {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            let v = serde_json::Value::deserialize(d)?;
            match v {
                serde_json::Value::String(s) => Ok(RationalText(s)),
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(RationalText(n.to_string())),
                other => Err(serde::de::Error::custom(format!(
                    "expected a rational string like \"-1/2\", got {other}"
                ))),
            }
        }
    }
}

pub(crate) mod serde_one {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }
}
