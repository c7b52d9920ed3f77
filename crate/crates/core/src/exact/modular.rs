use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{is_prime, rational_mod, Poly, Rational};
use crate::error::{Error, Result};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse modulo `m`, if `a` is a unit.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i8> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::InvalidArgument(format!(
            "Jacobi symbol needs an odd positive modulus, got {n}"
        )));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i8;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { sign } else { 0 })
}

/// `residue mod modulus` with `0 <= residue < modulus` and `modulus >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    #[serde(with = "crate::json::bigint_string")]
    pub residue: BigInt,
    #[serde(with = "crate::json::bigint_string")]
    pub modulus: BigInt,
}

impl ResidueClass {
    pub fn new(residue: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::from(2) {
            return Err(Error::InvalidArgument(format!("modulus {modulus} < 2")));
        }
        let residue = residue.into().mod_floor(&modulus);
        Ok(ResidueClass { residue, modulus })
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        n.mod_floor(&self.modulus) == self.residue
    }
}

/// Combines congruences into one class modulo the lcm of the moduli.
pub fn crt(constraints: &[ResidueClass]) -> Result<ResidueClass> {
    let (first, rest) = constraints
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty congruence system".into()))?;
    let mut acc = first.clone();
    for c in rest {
        let g = acc.modulus.extended_gcd(&c.modulus);
        let diff = &c.residue - &acc.residue;
        if !diff.is_multiple_of(&g.gcd) {
            return Err(Error::NoSolution(format!(
                "{} mod {} and {} mod {} are incompatible",
                acc.residue, acc.modulus, c.residue, c.modulus
            )));
        }
        let m2 = &c.modulus / &g.gcd;
        let lcm = &acc.modulus * &m2;
        // acc.modulus * x ≡ diff (mod c.modulus), x = (diff/g) * (m1/g)^-1 mod m2
        let k = ((&diff / &g.gcd) * &g.x).mod_floor(&m2);
        let residue = (&acc.residue + &acc.modulus * k).mod_floor(&lcm);
        acc = ResidueClass {
            residue,
            modulus: lcm,
        };
    }
    Ok(acc)
}

/// Polynomial over the prime field F_p, coefficients lowest first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    /// Reduction of a rational polynomial; fails when a denominator vanishes mod p.
    pub fn reduce(f: &Poly<Rational>, p: u64) -> Result<Self> {
        let c = f
            .coeffs()
            .iter()
            .map(|a| {
                rational_mod(a, p).ok_or_else(|| Error::BadReduction {
                    prime: p,
                    reason: "coefficient denominator divisible by p".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(p, c))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn eval(&self, at: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| (mul_mod(acc, at, self.p) + a) % self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).expect("prime modulus");
                Self::new(self.p, self.c.iter().map(|&a| mul_mod(a, inv, self.p)).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.c.len() <= dd {
            return (Self::new(self.p, vec![]), self.clone());
        }
        let inv = inv_mod(d.c[dd], self.p).expect("prime modulus");
        let mut rem = self.c.clone();
        let mut q = vec![0u64; rem.len() - dd];
        for i in (0..q.len()).rev() {
            let t = mul_mod(rem[i + dd], inv, self.p);
            if t == 0 {
                continue;
            }
            for (j, &dc) in d.c.iter().enumerate() {
                rem[i + j] = (rem[i + j] + self.p - mul_mod(t, dc, self.p)) % self.p;
            }
            q[i] = t;
        }
        rem.truncate(dd);
        (Self::new(self.p, q), Self::new(self.p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, c)
    }

    /// `self^e mod m`
    pub fn pow_rem(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// All roots in F_p by exhaustive evaluation; intended for small p.
    pub fn roots_by_search(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    /// Undo the Frobenius on a polynomial in x^p.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        Self::new(self.p, c)
    }

    /// Squarefree decomposition: monic factors with their multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        self.sqf_into(1, &mut out);
        out
    }

    fn sqf_into(&self, mult: usize, out: &mut Vec<(FpPoly, usize)>) {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        let d = f.derivative();
        if d.is_zero() {
            f.pth_root().sqf_into(mult * self.p as usize, out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.div_rem(&c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let factor = w.div_rem(&y).0;
            if factor.degree().unwrap_or(0) > 0 {
                out.push((factor, i * mult));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            c.pth_root().sqf_into(mult * self.p as usize, out);
        }
    }

    /// Distinct-degree factorization of a squarefree polynomial: (degree, product of
    /// all irreducible factors of that degree).
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while let Some(deg) = f.degree() {
            if deg < 2 * (d + 1) {
                if deg > 0 {
                    out.push((deg, f.clone()));
                }
                break;
            }
            d += 1;
            h = h.pow_rem(self.p, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree().unwrap_or(0) > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        out
    }

    /// Degrees of the irreducible factors, with multiplicity, ascending.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut degs = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            for (d, g) in part.distinct_degree() {
                let count = g.degree().unwrap_or(0) / d;
                degs.extend(std::iter::repeat_n(d, count * mult));
            }
        }
        degs.sort_unstable();
        degs
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

/// Degrees of the irreducible factors of `f` mod `p` (a multiset, ascending).
pub fn splitting_profile(f: &Poly<Rational>, p: u64) -> Result<Vec<usize>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let reduced = FpPoly::reduce(f, p)?;
    if reduced.degree() != f.degree() {
        return Err(Error::BadReduction {
            prime: p,
            reason: "leading coefficient vanishes mod p".into(),
        });
    }
    Ok(reduced.factor_degrees())
}
