use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positive definite primitive form a x^2 + b xy + c y^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// D < 0 and D = 0, 1 mod 4.
pub fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidArgument(format!("{d} is not a negative discriminant")));
    }
    Ok(())
}

impl BinaryQuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = BinaryQuadraticForm { a, b, c };
        if f.discriminant() >= 0 {
            return Err(Error::Unsupported(format!("indefinite form {f}")));
        }
        if a <= 0 {
            return Err(Error::Unsupported(format!("negative definite form {f}")));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::InvalidArgument(format!("{f} is not primitive")));
        }
        Ok(f)
    }

    pub fn discriminant(&self) -> i64 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        (b * b - 4 * a * c) as i64
    }

    /// x^2 + b xy + c y^2 with b = D mod 2.
    pub fn principal(d: i64) -> Result<Self> {
        check_discriminant(d)?;
        let b = d.rem_euclid(2);
        Ok(BinaryQuadraticForm { a: 1, b, c: (b * b - d) / 4 })
    }

    pub fn inverse(&self) -> Self {
        BinaryQuadraticForm { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }

    /// The reduced form in the proper equivalence class.
    pub fn reduce(&self) -> Self {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            // x -> x + q y brings b into (-a, a]
            let q = Integer::div_floor(&(a - b), &(2 * a));
            c += q * (a * q + b);
            b += 2 * a * q;
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
            } else {
                break;
            }
        }
        if a == c && b < 0 {
            b = -b;
        }
        BinaryQuadraticForm { a: a as i64, b: b as i64, c: c as i64 }
    }
}

/// Reduce a positive definite primitive form.
pub fn reduce(f: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    BinaryQuadraticForm::new(f.a, f.b, f.c).map(|f| f.reduce())
}

/// Gauss composition (Cohen, Algorithm 5.4.7), reduced.
pub fn compose(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(Error::InvalidArgument(format!(
            "discriminants {} and {} differ",
            d,
            g.discriminant()
        )));
    }
    Ok(compose_unchecked(f, g, d))
}

pub(crate) fn compose_unchecked(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm, disc: i64) -> BinaryQuadraticForm {
    let (f1, f2) = if f.a > g.a { (g, f) } else { (f, g) };
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, d) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let e = a2.extended_gcd(&a1);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if s % d == 0 {
        (0, -1, d)
    } else {
        let e = s.extended_gcd(&d);
        (e.x, -e.y, e.gcd)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).mod_floor(&v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - disc as i128) / (4 * a3);
    debug_assert_eq!(b3 * b3 - 4 * a3 * c3, disc as i128);
    BinaryQuadraticForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce()
}

/// f^n for n >= 0.
pub fn power(f: &BinaryQuadraticForm, mut n: u64) -> BinaryQuadraticForm {
    let d = f.discriminant();
    let mut acc = BinaryQuadraticForm::principal(d).expect("valid discriminant");
    let mut base = *f;
    while n > 0 {
        if n & 1 == 1 {
            acc = compose_unchecked(&acc, &base, d);
        }
        base = compose_unchecked(&base, &base, d);
        n >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce(&form(1, 1, 6)).unwrap(), form(1, 1, 6));
        assert_eq!(reduce(&form(6, 1, 1)).unwrap(), form(1, 1, 6));
        assert_eq!(reduce(&form(2, -1, 3)).unwrap(), form(2, -1, 3));
        assert!(form(2, -1, 3).is_reduced());
        // a = c forces b >= 0
        assert_eq!(reduce(&form(2, -1, 2)).unwrap(), form(2, 1, 2));
        assert!(matches!(BinaryQuadraticForm::new(1, 3, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn composition_examples() {
        let p = BinaryQuadraticForm::principal(-23).unwrap();
        let f = form(2, 1, 3);
        assert_eq!(compose(&p, &f).unwrap(), f);
        assert_eq!(compose(&f, &f.inverse()).unwrap(), p);
        assert_eq!(compose(&f, &f).unwrap(), form(2, -1, 3));
        assert_eq!(power(&f, 3), p);
        assert!(compose(&f, &form(1, 1, 1)).is_err());
    }
}
