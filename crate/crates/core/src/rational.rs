//! Exact rational numbers.
//!
//! Every quantity in the crate (weights, utilities, shares, margins) is a
//! [`Rational`] kept in lowest terms with a positive denominator. Values are
//! written as `"p/q"` or `"p"` strings; decimal literals such as `"0.4"` are
//! accepted on input and converted exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"`, `"p"` or a finite decimal like `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("`{text}` has a zero denominator")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let numer: BigInt = digits.parse().map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Lossy decimal rendering for human-facing output only.
pub fn approx(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn floor_int(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

pub fn ceil_int(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales `values` by their common denominator, returning the integer
/// numerators and the scale.
pub fn to_integers(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let scale = common_denominator(values);
    let ints = values
        .iter()
        .map(|v| (v * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    (ints, scale)
}

pub fn in_unit_interval(value: &Rational) -> bool {
    !value.is_negative() && *value <= Rational::one()
}

pub(crate) fn check_unit(name: &'static str, value: &Rational) -> Result<()> {
    if in_unit_interval(value) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value: value.clone(),
        })
    }
}

/// Serde adapters writing rationals as strings.
pub mod serde_str {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    pub(crate) struct RationalVisitor;

    impl Visitor<'_> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as a \"p/q\" string or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(super::int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }
    }

    pub mod vec {
        use serde::de::{Deserializer, SeqAccess, Visitor};
        use serde::ser::SerializeSeq;
        use serde::Serializer;
        use std::fmt;

        use super::super::Rational;
        use super::RationalVisitor;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            d.deserialize_seq(VecVisitor)
        }

        struct VecVisitor;

        struct Elem(Rational);

        impl<'de> serde::Deserialize<'de> for Elem {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                d.deserialize_any(RationalVisitor).map(Elem)
            }
        }

        impl<'de> Visitor<'de> for VecVisitor {
            type Value = Vec<Rational>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of rationals")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<Rational>, A::Error> {
                let mut out = Vec::new();
                while let Some(Elem(v)) = seq.next_element()? {
                    out.push(v);
                }
                Ok(out)
            }
        }
    }

    pub mod matrix {
        use serde::de::Deserializer;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Serializer};

        use super::super::Rational;

        #[derive(Deserialize)]
        struct Row(#[serde(with = "super::vec")] Vec<Rational>);

        pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for row in rows {
                let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
            let rows = Vec::<Row>::deserialize(d)?;
            Ok(rows.into_iter().map(|r| r.0).collect())
        }
    }
}
