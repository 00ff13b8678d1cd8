//! JSON helpers: exact integers and fixed-width floats as raw numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{Number, Value};

use peakpoly_core::PeakSet;

/// 17 significant digits in scientific notation with a signed exponent;
/// `-0` prints as `0`.
pub fn float_text(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let text = format!("{:.16e}", x);
    match text.split_once('e') {
        Some((mant, exp)) if !exp.starts_with('-') => format!("{}e+{}", mant, exp),
        _ => text,
    }
}

fn raw(text: &str) -> Number {
    Number::from_str(text).expect("valid JSON number text")
}

pub fn big(n: &BigInt) -> Value {
    Value::Number(raw(&n.to_string()))
}

/// Non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(raw(&float_text(x)))
    } else {
        Value::Null
    }
}

pub fn set(s: &PeakSet) -> Value {
    Value::Array(s.elements().iter().map(|&i| Value::from(i)).collect())
}

/// An arbitrary-precision integer that serializes as a bare JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        raw(&self.0.to_string()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = Number::deserialize(deserializer)?;
        BigInt::from_str(&n.to_string())
            .map(Int)
            .map_err(|_| de::Error::custom(format!("not an integer: {}", n)))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An `f64` written with [`float_text`]; reads back exactly, `null` as NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float(pub f64);

impl<'de> Deserialize<'de> for Float {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match Option::<Number>::deserialize(deserializer)? {
            None => Ok(Float(f64::NAN)),
            Some(n) => f64::from_str(&n.to_string())
                .map(Float)
                .map_err(|_| de::Error::custom(format!("not a float: {}", n))),
        }
    }
}

impl Serialize for Float {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            raw(&float_text(self.0)).serialize(serializer)
        } else {
            serializer.serialize_none()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn texts() {
        assert_eq!(float_text(-0.0), "0.0000000000000000e+0");
        assert_eq!(float_text(2.0), "2.0000000000000000e+0");
        assert_eq!(float_text(-1.5e-7), "-1.4999999999999999e-7");
        assert_eq!(serde_json::to_string(&Float(2.0)).unwrap(), float_text(2.0));
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big(&n).to_string(), "123456789012345678901234567890");
        let back: Int = serde_json::from_str("-98765432109876543210").unwrap();
        assert_eq!(back.0.to_string(), "-98765432109876543210");
        assert_eq!(serde_json::to_string(&Float(f64::NAN)).unwrap(), "null");
        for x in [1e-9, 0.1, -2.5e300, 5e-324, 1.0 / 3.0] {
            let back: Float = serde_json::from_str(&serde_json::to_string(&Float(x)).unwrap()).unwrap();
            assert_eq!(back.0.to_bits(), x.to_bits());
        }
        assert!(serde_json::from_str::<Float>("null").unwrap().0.is_nan());
    }
}
