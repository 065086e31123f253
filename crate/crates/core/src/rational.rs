//! Exact coefficients.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient C(n, k) for a possibly negative integer `n`.
pub fn binomial(n: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    num / factorial(k)
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

/// Numerator and denominator as JSON numbers (strings when they exceed i64).
pub fn num_den_json(x: &Q) -> (Value, Value) {
    (int_value(x.numer()), int_value(x.denom()))
}

/// Display form used in JSON: `"3"`, `"-1/2"`.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn q_from_json(v: &Value) -> Option<Q> {
    match v {
        Value::Number(n) => n.as_i64().map(q),
        Value::String(s) => parse_q(s),
        _ => None,
    }
}

pub fn is_unit(x: &Q) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_negative_top() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(1, 2), BigInt::from(0));
        assert_eq!(binomial(7, 0), BigInt::from(1));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3", "7/2", "-1/6"] {
            assert_eq!(q_to_string(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_none());
    }
}
