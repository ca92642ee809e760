//! Exact rationals for Γ values, edgepath coordinates and rational wedges.
//!
//! `Ratio<i64>` keeps fractions reduced with a positive denominator. In JSON
//! a rational is written as an integer when it is one, otherwise as the
//! string `"p/q"`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Smallest even integer that is `>= x`.
pub fn ceil_even(x: Rational) -> i64 {
    let c = x.ceil().to_integer();
    if c.is_even() {
        c
    } else {
        c + 1
    }
}

pub fn to_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        serde_json::Value::from(r.to_integer())
    } else {
        serde_json::Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => s.parse().ok().map(Rational::from_integer),
    }
}

pub fn abs(r: Rational) -> Rational {
    r.abs()
}

/// `#[serde(with = "crate::rational::serde_rational")]`
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        if r.is_integer() {
            s.serialize_i64(r.to_integer())
        } else {
            s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Rational::from_integer)
                .ok_or_else(|| serde::de::Error::custom("expected integer")),
            serde_json::Value::String(s) => {
                parse(s).ok_or_else(|| serde::de::Error::custom("bad rational"))
            }
            _ => Err(serde::de::Error::custom("expected rational")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_ceiling() {
        assert_eq!(ceil_even(frac(3, 2)), 2);
        assert_eq!(ceil_even(int(2)), 2);
        assert_eq!(ceil_even(frac(17, 6)), 4);
        assert_eq!(ceil_even(frac(-1, 2)), 0);
        assert_eq!(ceil_even(int(-3)), -2);
    }

    #[test]
    fn text_form() {
        assert_eq!(to_json(&frac(-8, 6)), serde_json::json!("-4/3"));
        assert_eq!(to_json(&int(4)), serde_json::json!(4));
        assert_eq!(parse(" 4/-6 "), Some(frac(-2, 3)));
        assert_eq!(parse("1/0"), None);
    }
}
