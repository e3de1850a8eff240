//! Exact rational scalars and their text forms.
//!
//! Everything algebraic in this crate (derivations, structure constants,
//! Gram matrices, the invariant `b`) is a `BigRational`. Text input accepts
//! `"p"`, `"p/q"` and decimal literals; floats are rationalized to the best
//! approximation with denominator at most [`MAX_DENOMINATOR`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// Denominator cap used when a float is turned into an exact rational.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// How a rational came out of its textual form.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Exact(Q),
    /// Input was a float; `value` is its rationalization.
    Rationalized {
        input: f64,
        value: Q,
    },
}

impl Parsed {
    pub fn value(&self) -> &Q {
        match self {
            Parsed::Exact(v) => v,
            Parsed::Rationalized { value, .. } => value,
        }
    }

    pub fn into_value(self) -> Q {
        match self {
            Parsed::Exact(v) => v,
            Parsed::Rationalized { value, .. } => value,
        }
    }
}

/// Parses `"3"`, `"-1/4"`, `"0.25"`, `"1e-3"`. Integer and fraction forms are
/// exact; anything else goes through `f64` and [`rationalize`].
pub fn parse(s: &str) -> Result<Parsed> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(Parsed::Exact(Q::new(n, d)));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(Parsed::Exact(Q::from_integer(n)));
    }
    if let Some(v) = parse_decimal(t) {
        return Ok(Parsed::Exact(v));
    }
    let f: f64 = t.parse().map_err(|_| Error::Parse(format!("not a rational: {t:?}")))?;
    Ok(Parsed::Rationalized {
        input: f,
        value: rationalize(f)?,
    })
}

pub fn parse_exact(s: &str) -> Result<Q> {
    parse(s).map(Parsed::into_value)
}

// plain decimals like "-0.25" are exact: digits over a power of ten
fn parse_decimal(t: &str) -> Option<Q> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, dec) = body.split_once('.')?;
    if int.is_empty() && dec.is_empty() {
        return None;
    }
    if !int.chars().chain(dec.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{dec}0").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), dec.len() + 1);
    let v = Q::new(digits, scale);
    Some(if neg { -v } else { v })
}

/// Best rational approximation of `f` with denominator ≤ [`MAX_DENOMINATOR`]
/// (continued-fraction convergents plus the best semiconvergent).
pub fn rationalize(f: f64) -> Result<Q> {
    rationalize_with(f, MAX_DENOMINATOR)
}

pub fn rationalize_with(f: f64, max_den: i64) -> Result<Q> {
    if !f.is_finite() {
        return Err(Error::Parse(format!("cannot rationalize {f}")));
    }
    let exact = Q::from_float(f).ok_or_else(|| Error::Parse(format!("cannot rationalize {f}")))?;
    let max_den = BigInt::from(max_den);
    if exact.denom() <= &max_den {
        return Ok(exact);
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut x = exact.clone();
    loop {
        let a = x.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            // best semiconvergent between the last two convergents
            let k = (&max_den - &q0) / &q1;
            let semi = Q::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let conv = Q::new(p1.clone(), q1.clone());
            let d_semi = (&semi - &exact).abs();
            let d_conv = (&conv - &exact).abs();
            return Ok(if d_semi < d_conv { semi } else { conv });
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let rem = &x - Q::from_integer(a);
        if rem.is_zero() {
            return Ok(Q::new(p1, q1));
        }
        x = rem.recip();
    }
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_string(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub mod serde_q {
    //! Serde adapter: a rational as a string.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        from_json(&raw).map_err(serde::de::Error::custom)
    }

    pub fn from_json(raw: &serde_json::Value) -> Result<Q> {
        match raw {
            serde_json::Value::String(s) => parse_exact(s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(q(i))
                } else {
                    rationalize(n.as_f64().unwrap_or(f64::NAN))
                }
            }
            other => Err(Error::Parse(format!("expected rational, got {other}"))),
        }
    }
}

pub mod serde_opt_q {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&to_string(v)),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_forms() {
        assert_eq!(parse_exact("1/4").unwrap(), frac(1, 4));
        assert_eq!(parse_exact(" -3 ").unwrap(), q(-3));
        assert_eq!(parse_exact("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse_exact("2/-4").unwrap(), frac(-1, 2));
        assert!(matches!(parse("0.5").unwrap(), Parsed::Exact(_)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(rationalize(f64::NAN).is_err());
    }

    #[test]
    fn float_rationalization_caps_denominator() {
        let pi = rationalize(std::f64::consts::PI).unwrap();
        assert!(pi.denom() <= &BigInt::from(MAX_DENOMINATOR));
        assert!((to_f64(&pi) - std::f64::consts::PI).abs() < 1e-10);
        assert_eq!(rationalize(0.1).unwrap(), frac(1, 10));
        assert_eq!(rationalize(-1.0 / 3.0).unwrap(), frac(-1, 3));
        match parse("1e-1").unwrap() {
            Parsed::Rationalized { value, .. } => assert_eq!(value, frac(1, 10)),
            other => panic!("expected rationalized, got {other:?}"),
        }
    }

    #[test]
    fn display_form() {
        assert_eq!(to_string(&frac(-1, 4)), "-1/4");
        assert_eq!(to_string(&q(7)), "7");
    }
}
