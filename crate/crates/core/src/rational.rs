//! Small helpers around `BigRational`: parsing the `"p/q"` text form used in
//! JSON documents, and lossy conversion to `f64`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{DunklError, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7/3"` or a decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Err(DunklError::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| DunklError::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| DunklError::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(DunklError::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits
            .parse()
            .map_err(|_| DunklError::Parse(format!("bad decimal {s:?}")))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Q::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| DunklError::Parse(format!("bad integer {s:?}")))?;
    Ok(Q::from_integer(n))
}

pub fn format_rational(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Q) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: divide in log space.
        let n = r.numer().abs().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * n / d
    })
}

/// Exact conversion of an `f64` that happens to be a short decimal or dyadic.
pub fn from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

/// Non-negative integer value of `r`, if it is one.
pub fn as_natural(r: &Q) -> Option<u32> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u32()
    } else {
        None
    }
}

pub mod serde_q {
    //! `serde` adapter storing a rational as its `"p/q"` string.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => {
                return Err(serde::de::Error::custom(format!(
                    "expected rational string, got {other}"
                )))
            }
        };
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("7/3").unwrap(), q_frac(7, 3));
        assert_eq!(parse_rational("-2").unwrap(), q(-2));
        assert_eq!(parse_rational("0.25").unwrap(), q_frac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q_frac(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for s in ["1/2", "-7/3", "5", "0"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }
}
