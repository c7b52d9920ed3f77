use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Poly, Rational};
use crate::error::{Error, Result};

/// Element of Q(t): `num / den` with coprime parts and a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RationalFunction {
    /// Normalizes `num / den`. Panics on a zero denominator.
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = Rational::one() / lc;
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate t.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// `self(s(z))` for a rational function `s`.
    pub fn substitute(&self, s: &RationalFunction) -> RationalFunction {
        let top = substitute_poly(&self.num, s);
        let bottom = substitute_poly(&self.den, s);
        top / bottom
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }
}

/// `f(s)` for a polynomial `f` and rational function `s`, via homogenization
/// sum a_i N^i D^(n-i) / D^n.
pub fn substitute_poly(f: &Poly<Rational>, s: &RationalFunction) -> RationalFunction {
    let Some(n) = f.degree() else {
        return RationalFunction::zero();
    };
    let mut num_pows = vec![Poly::one()];
    let mut den_pows = vec![Poly::one()];
    for i in 1..=n {
        num_pows.push(&num_pows[i - 1] * &s.num);
        den_pows.push(&den_pows[i - 1] * &s.den);
    }
    let mut top = Poly::zero();
    for (i, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = (&num_pows[i] * &den_pows[n - i]).scale(a);
        top = &top + &term;
    }
    RationalFunction::new(top, den_pows[n].clone())
}

impl Poly<Rational> {
    /// Composition with a rational function, normalized.
    pub fn substitute(&self, s: &RationalFunction) -> RationalFunction {
        substitute_poly(self, s)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "[{:?}] / [{:?}]", self.num, self.den)
        }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl Add for RationalFunction {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            if self.is_polynomial() {
                return Self::from_poly(&self.num + &rhs.num);
            }
            return Self::new(&self.num + &rhs.num, self.den);
        }
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for RationalFunction {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RationalFunction {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for RationalFunction {
    type Output = Self;

    fn neg(self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Field for RationalFunction {
    fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    fn sqrt(&self) -> Option<Self> {
        // den is monic, so its root (if any) is found from the top.
        let d = self.den.sqrt()?;
        let n = self.num.sqrt()?;
        Some(Self::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(c: &[i64]) -> Poly<Rational> {
        Poly::from_ints(c)
    }

    #[test]
    fn normalization() {
        // (2t^2 - 2) / (4t - 4) = (t + 1)/2
        let r = RationalFunction::new(poly(&[-2, 0, 2]), poly(&[-4, 4]));
        assert_eq!(r.num(), &Poly::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(r.den(), &Poly::one());
    }

    #[test]
    fn substitute_square() {
        // X^2 at (z+1)/z
        let s = RationalFunction::new(poly(&[1, 1]), poly(&[0, 1]));
        let r = poly(&[0, 0, 1]).substitute(&s);
        assert_eq!(r.num(), &poly(&[1, 2, 1]));
        assert_eq!(r.den(), &poly(&[0, 0, 1]));
    }

    #[test]
    fn substitute_constant_root() {
        let c = rat(7, 3);
        let f = Poly::linear_root(c.clone());
        let r = f.substitute(&RationalFunction::constant(c));
        assert!(r.is_zero());
    }

    #[test]
    fn poles_are_reported() {
        let r = RationalFunction::new(poly(&[1]), poly(&[-2, 1]));
        assert_eq!(r.eval(&rat(2, 1)), Err(Error::Pole));
        assert_eq!(r.eval(&rat(3, 1)), Ok(rat(1, 1)));
    }
}
