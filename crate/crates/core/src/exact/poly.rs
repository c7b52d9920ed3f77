use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Field;

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn monomial(c: F, n: usize) -> Self {
        let mut v = vec![F::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    /// `x - a`
    pub fn linear_root(a: F) -> Self {
        Self::new(vec![-a, F::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| F::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = F::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc = d.coeffs[dd].clone();
        let inv = if lc.is_one() { None } else { Some(F::one() / lc) };
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = match &inv {
                None => top,
                Some(inv) => top * inv.clone(),
            };
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] = rem[i + j].clone() - q.clone() * dc.clone();
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// Sum of `self` over the roots of a monic `modulus`, with multiplicity.
    ///
    /// Uses sum_r f(r)/(x - r) = (f * m' mod m) / m, whose coefficient at
    /// x^(deg m - 1) is the trace.
    pub fn trace_over_roots(&self, modulus: &Self) -> F {
        let m = modulus.degree().expect("nonzero modulus");
        assert!(modulus.is_monic(), "trace needs a monic modulus");
        (self * &modulus.derivative()).rem(modulus).coeff(m - 1)
    }

    /// Square root in F[x] when it exists.
    pub fn sqrt(&self) -> Option<Self> {
        let Some(deg) = self.degree() else {
            return Some(Self::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let half = deg / 2;
        let lead = self.coeffs[deg].sqrt()?;
        let two_lead = lead.clone() + lead.clone();
        // Fix the root's coefficients from the top down.
        let mut root = vec![F::zero(); half + 1];
        root[half] = lead;
        for k in (0..half).rev() {
            let target = self.coeff(half + k);
            let mut acc = F::zero();
            for i in (k + 1)..=half {
                let j = half + k - i;
                if j > k && j <= half {
                    acc = acc + root[i].clone() * root[j].clone();
                }
            }
            root[k] = (target - acc) / two_lead.clone();
        }
        let root = Self::new(root);
        (&(&root * &root) == self).then_some(root)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})*x")?,
                _ => write!(f, "({c:?})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};

    type P = Poly<Rational>;

    #[test]
    fn trimming_and_degree() {
        let p = P::new(vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn division_round_trip() {
        let a = P::from_ints(&[5, -3, 0, 2, 7]);
        let b = P::from_ints(&[1, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = P::from_ints(&[-1, 1]); // x - 1
        let a = &f * &P::from_ints(&[2, 0, 1]);
        let b = &f * &P::from_ints(&[3, 1]);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn trace_over_quadratic_roots() {
        // roots 2 and 3; sum of r^2 is 13
        let k = P::from_ints(&[6, -5, 1]);
        let f = P::from_ints(&[0, 0, 1]);
        assert_eq!(f.trace_over_roots(&k), rat(13, 1));
    }

    #[test]
    fn polynomial_square_roots() {
        let r = P::from_ints(&[3, -1, 2]);
        assert_eq!((&r * &r).sqrt().map(|s| s.monic()), Some(r.monic()));
        assert_eq!(P::from_ints(&[1, 0, 2]).sqrt(), None);
    }

    #[test]
    fn composition() {
        let f = P::from_ints(&[1, 0, 1]);
        let g = P::from_ints(&[1, 1]);
        assert_eq!(f.compose(&g), P::from_ints(&[2, 2, 1]));
    }
}
