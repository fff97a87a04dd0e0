//! Exact rational scalars and planar points.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HftError, Result};

pub type Rational = BigRational;

/// Parses `"a/b"`, `"a"` or a decimal literal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad(s))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad(s))?;
        if d.is_zero() {
            return Err(HftError::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let digits = format!("{int_digits}{frac}");
        let mut n =
            BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad(s))?;
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad(s))
}

fn bad(s: &str) -> HftError {
    HftError::Parse(format!("malformed rational `{s}`"))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise, reduced.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Rounds `v` to the nearest multiple of `2^-bits`.
pub fn snap_dyadic(v: f64, bits: u32) -> Rational {
    let scale = (bits as f64).exp2();
    let n = (v * scale).round();
    let den = num_traits::pow(BigInt::from(2), bits as usize);
    Rational::new(BigInt::from(n as i128), den)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint::new(
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
        )
    }

    pub fn sub(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, t: &Rational) -> RationalPoint {
        RationalPoint::new(&self.x * t, &self.y * t)
    }

    /// `self + t (to - self)`
    pub fn lerp(&self, to: &RationalPoint, t: &Rational) -> RationalPoint {
        self.add(&to.sub(self).scale(t))
    }

    pub fn cross(&self, o: &RationalPoint) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &RationalPoint) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> RationalPoint {
        RationalPoint::new(-&self.x, -&self.y)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    /// Integer vector with the same direction (positive multiple).
    pub fn integer_direction(&self) -> (BigInt, BigInt) {
        let l = num_integer::Integer::lcm(self.x.denom(), self.y.denom());
        let x = (&self.x * Rational::from_integer(l.clone())).to_integer();
        let y = (&self.y * Rational::from_integer(l)).to_integer();
        let g = num_integer::Integer::gcd(&x, &y);
        if g.is_zero() {
            (x, y)
        } else {
            (x / &g, y / g.abs())
        }
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.x),
            format_rational(&self.y)
        )
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// JSON form: `["a/b", "c/d"]`; integers may also be given as JSON numbers.
impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: [serde_json::Value; 2] = Deserialize::deserialize(d)?;
        let conv = |v: &serde_json::Value| -> std::result::Result<Rational, D::Error> {
            match v {
                serde_json::Value::String(s) => parse_rational(s).map_err(serde::de::Error::custom),
                serde_json::Value::Number(n) => {
                    parse_rational(&n.to_string()).map_err(serde::de::Error::custom)
                }
                other => Err(serde::de::Error::custom(format!(
                    "expected rational, found {other}"
                ))),
            }
        };
        Ok(RationalPoint::new(conv(&raw[0])?, conv(&raw[1])?))
    }
}
