//! Arbitrary-precision rationals.
//!
//! [`Rat`] is `num_rational::BigRational`, which keeps every value reduced with a
//! positive denominator. The helpers here cover construction, integrality tests and
//! the `"p/q"` string form used on the wire.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Exact quotient, refusing a zero divisor.
pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// The value as an `i64` when it is an integer that fits.
pub fn as_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// `x` as a nonnegative machine integer, or an error naming the quantity.
pub fn as_count(x: &Rat, what: &str) -> Result<u64> {
    as_i64(x)
        .filter(|v| *v >= 0)
        .map(|v| v as u64)
        .ok_or_else(|| Error::Precondition(format!("{what} = {x} must be a nonnegative integer")))
}

/// Sign as -1, 0 or 1.
pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Canonical `"p/q"` string; the denominator is always written, so zero is `"0/1"`.
pub fn to_pq(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`. Whitespace around the parts is ignored.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `serde(with = ...)` adaptor writing a [`Rat`] as a `"p/q"` string.
pub mod serde_pq {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{parse_rat, to_pq, Rat};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

/// Same as [`serde_pq`] for `Option<Rat>`.
pub mod serde_pq_opt {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{parse_rat, to_pq, Rat};

    pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&to_pq(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rat(&s).map_err(de::Error::custom))
            .transpose()
    }
}

/// Same as [`serde_pq`] for `Vec<Rat>`.
pub mod serde_pq_vec {
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::{parse_rat, to_pq, Rat};

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&to_pq(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rat(s).map_err(de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let x = rat(6, -4);
        assert_eq!(to_pq(&x), "-3/2");
        assert_eq!(to_pq(&zero()), "0/1");
        assert_eq!(to_pq(&rat(0, -7)), "0/1");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rat("3/9").unwrap(), rat(1, 3));
        assert_eq!(parse_rat(" -5 ").unwrap(), int(-5));
        assert_eq!(parse_rat("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("x/2").is_err());
    }

    #[test]
    fn checked_division() {
        assert_eq!(checked_div(&int(1), &zero()), Err(Error::DivisionByZero));
        assert_eq!(checked_div(&int(1), &int(4)).unwrap(), rat(1, 4));
    }

    #[test]
    fn denominators_lcm() {
        let xs = [rat(1, 2), rat(2, 3), int(5)];
        assert_eq!(lcm_of_denominators(&xs), BigInt::from(6));
    }
}
