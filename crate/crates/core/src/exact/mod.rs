//! Exact arithmetic: rationals, univariate polynomials over a field, rational
//! functions over the rationals, modular arithmetic and small-prime factoring.
//!
//! Every formula in the construction is evaluated here without rounding, so
//! valuations and congruences of the results are trustworthy.

mod factor;
mod modular;
mod poly;
mod ratfunc;

pub use factor::{
    bounded_squarefree_kernel, is_prime, primes_up_to, squarefree_part, trial_factor, Factorization,
};
pub use modular::{
    crt, inv_mod, jacobi, mul_mod, pow_mod, splitting_profile, FpPoly, ResidueClass,
};
pub use poly::Poly;
pub use ratfunc::RationalFunction;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// A square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// A cube root inside the field, if one is known.
    fn cbrt(&self) -> Option<Self> {
        None
    }
}

impl Field for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn cbrt(&self) -> Option<Self> {
        rational_cbrt(self)
    }
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `"num/den"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"n"` or `"n/d"` with arbitrary-length decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(rat_int(parse(s)?)),
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse(n)?, d))
        }
    }
}

/// v_p of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut m = n.magnitude().clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation; `None` stands for +infinity (r = 0).
pub fn valuation(r: &Rational, p: u64) -> Result<Option<i64>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if r.is_zero() {
        return Ok(None);
    }
    Ok(Some(int_valuation(r.numer(), p) - int_valuation(r.denom(), p)))
}

/// Residue of an integer modulo `m` in `[0, m)`.
pub fn int_mod(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue below modulus")
}

/// The class of `r` modulo `m`, or `None` when the denominator is not invertible mod `m`.
pub fn rational_mod(r: &Rational, m: u64) -> Option<u64> {
    let d = int_mod(r.denom(), m);
    let inv = inv_mod(d, m)?;
    Some(mul_mod(int_mod(r.numer(), m), inv, m))
}

pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = integer_sqrt_exact(r.numer())?;
    let d = integer_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_rational_square(r: &Rational) -> bool {
    rational_sqrt(r).is_some()
}

/// Rational cube root when exact.
pub fn rational_cbrt(r: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| {
        let c = n.magnitude().cbrt();
        let c = BigInt::from_biguint(if n.is_negative() { Sign::Minus } else { Sign::Plus }, c);
        (&c * &c * &c == *n).then_some(c)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// The naive height max(|num|, den).
pub fn height(r: &Rational) -> BigInt {
    let n = r.numer().abs();
    if &n > r.denom() {
        n
    } else {
        r.denom().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(1, 242), 11).unwrap(), Some(-2));
        assert_eq!(valuation(&rat(19, 21), 19).unwrap(), Some(1));
        assert_eq!(valuation(&Rational::zero(), 7).unwrap(), None);
        assert!(matches!(valuation(&rat(3, 4), 9), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn rational_text_form() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn residues_of_rationals() {
        assert_eq!(rational_mod(&rat(1, 2), 7), Some(4));
        assert_eq!(rational_mod(&rat(-1, 3), 5), Some(3));
        assert_eq!(rational_mod(&rat(1, 14), 7), None);
    }

    #[test]
    fn roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(-9, 4)), None);
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_cbrt(&rat(-27, 8)), Some(rat(-3, 2)));
    }
}
