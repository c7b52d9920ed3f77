use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{is_rational_square, Rational};

/// a + b sqrt(r) for a fixed non-square rational r, kept unfactored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdElement {
    pub rational: Rational,
    pub surd: Rational,
    radicand: Rational,
}

impl SurdElement {
    pub fn new(rational: Rational, surd: Rational, radicand: Rational) -> Result<Self> {
        if radicand.is_zero() || is_rational_square(&radicand) {
            return Err(Error::FieldCollapse("radicand is a rational square".into()));
        }
        Ok(SurdElement {
            rational,
            surd,
            radicand,
        })
    }

    /// b sqrt(r)
    pub fn pure(surd: Rational, radicand: Rational) -> Result<Self> {
        Self::new(Rational::zero(), surd, radicand)
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        SurdElement {
            surd: -self.surd.clone(),
            ..self.clone()
        }
    }

    /// a^2 - r b^2
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - &self.radicand * &self.surd * &self.surd
    }

    pub fn trace(&self) -> Rational {
        &self.rational + &self.rational
    }

    pub fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// The value when the surd part vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SurdElement {
            rational: &self.rational * c,
            surd: &self.surd * c,
            radicand: self.radicand.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::InvalidArgument("zero has no inverse".into()));
        }
        Ok(self.conjugate().scale(&(Rational::one() / n)))
    }

    /// Q(sqrt(r)) = Q(sqrt(s)) exactly when r s is a rational square.
    pub fn same_field(r: &Rational, s: &Rational) -> bool {
        is_rational_square(&(r * s))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.radicand, other.radicand, "surds over different fields");
    }
}

impl Add for SurdElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        SurdElement {
            rational: self.rational + o.rational,
            surd: self.surd + o.surd,
            radicand: self.radicand,
        }
    }
}

impl Sub for SurdElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for SurdElement {
    type Output = Self;
    fn neg(self) -> Self {
        SurdElement {
            rational: -self.rational,
            surd: -self.surd,
            radicand: self.radicand,
        }
    }
}

impl Mul for SurdElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        let rational = &self.rational * &o.rational + &self.radicand * &self.surd * &o.surd;
        let surd = &self.rational * &o.surd + &self.surd * &o.rational;
        SurdElement {
            rational,
            surd,
            radicand: self.radicand,
        }
    }
}
