//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"-p/q"` or a plain integer.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Always `p/q` with `q > 0`, including `q = 1`.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Short human form: `3`, `-1/2`.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format(r)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Serde adapter for a single rational as a `p/q` string.
pub mod serde_one {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serde adapter for `Option<Vec<Rational>>`.
pub mod serde_opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::serde_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let raw = Option::<Vec<String>>::deserialize(d)?;
        raw.map(|v| v.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect())
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-4").unwrap(), int(-4));
        assert_eq!(parse(" 7 / 21 ").unwrap(), ratio(1, 3));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a/b", "1.5", "1/2/3"] {
            assert!(parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn format_is_always_p_over_q() {
        assert_eq!(format(&int(3)), "3/1");
        assert_eq!(format(&ratio(-2, 4)), "-1/2");
        assert_eq!(display(&int(3)), "3");
    }

    #[test]
    fn format_round_trips() {
        for (n, d) in [(0, 1), (5, 7), (-13, 4), (1 << 40, 3)] {
            let r = ratio(n, d);
            assert_eq!(parse(&format(&r)).unwrap(), r);
        }
    }
}
