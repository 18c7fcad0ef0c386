//! Serialization of reals as decimal strings.
//!
//! Endpoints are written with the shortest representation that parses back
//! to the same binary64 value, so a serialize/deserialize cycle is exact.
//! User-facing literals go through [`Interval::from_decimal`] instead (see the
//! config module).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::interval::Interval;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("not a real number: {s:?}"))
}

fn to_interval(pair: [String; 2]) -> Result<Interval, String> {
    let lo = parse_f64(&pair[0])?;
    let hi = parse_f64(&pair[1])?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

pub mod float {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_f64(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let s = String::deserialize(d)?;
        parse_f64(&s).map_err(D::Error::custom)
    }
}

pub mod interval {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Interval, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&[fmt_f64(x.lo()), fmt_f64(x.hi())], s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Interval, D::Error> {
        let pair = <[String; 2]>::deserialize(d)?;
        to_interval(pair).map_err(D::Error::custom)
    }
}

pub mod interval_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Interval], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = xs.iter().map(|x| [fmt_f64(x.lo()), fmt_f64(x.hi())]).collect();
        serde::Serialize::serialize(&pairs, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Interval>, D::Error> {
        let pairs = Vec::<[String; 2]>::deserialize(d)?;
        pairs.into_iter().map(|p| to_interval(p).map_err(D::Error::custom)).collect()
    }
}

pub mod option_interval {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Interval>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => super::interval::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Interval>, D::Error> {
        let pair = Option::<[String; 2]>::deserialize(d)?;
        pair.map(|p| to_interval(p).map_err(D::Error::custom)).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_strings_round_trip() {
        for x in [0.1, 1e-300, 4.6941, -0.0, 1.0 / 3.0, 6.02e23, 5e-324] {
            let s = fmt_f64(x);
            assert_eq!(parse_f64(&s).unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert!(parse_f64("abc").is_err());
    }
}
