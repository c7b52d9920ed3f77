//! Text encodings used in every JSON artifact: integers as decimal strings,
//! rationals as `"num/den"`, polynomials as arrays of rationals lowest degree first.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::exact::{format_rational, parse_rational, Poly, Rational};

pub fn rational(r: &Rational) -> String {
    format_rational(r)
}

pub fn poly(p: &Poly<Rational>) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

pub fn parse_poly(v: &[String]) -> crate::Result<Poly<Rational>> {
    Ok(Poly::new(
        v.iter().map(|s| parse_rational(s)).collect::<crate::Result<_>>()?,
    ))
}

pub mod bigint_string {
    use super::*;
    use num_bigint::BigInt;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
