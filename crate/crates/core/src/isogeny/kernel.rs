//! Rational quadratic factors of psi_5, found by factoring modulo a small prime
//! and Hensel lifting each monic quadratic factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{division_polynomial_five, is_five_kernel, velu_quotient, Isogeny};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::exact::{int_mod, is_prime, rat_int, FpPoly, Poly, Rational};

/// Integer polynomial with coefficients reduced modulo `m`.
type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn zsub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn fp_to_z(f: &FpPoly) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn z_to_fp(a: &ZPoly, p: u64) -> FpPoly {
    FpPoly::new(p, a.iter().map(|c| int_mod(c, p)).collect())
}

/// s, t with s a + t b = 1 over F_p for coprime a, b.
fn bezout(a: &FpPoly, b: &FpPoly) -> Option<(FpPoly, FpPoly)> {
    let p = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (FpPoly::new(p, vec![1]), FpPoly::new(p, vec![]));
    let (mut t0, mut t1) = (FpPoly::new(p, vec![]), FpPoly::new(p, vec![1]));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let inv = crate::exact::inv_mod(r0.coeffs()[0], p)?;
    let c = FpPoly::new(p, vec![inv]);
    Some((s0.mul(&c), t0.mul(&c)))
}

/// Lift a monic factorization f = k h mod p of the monic f (given mod p^e)
/// to one modulo p^e.
fn hensel_lift(f: &ZPoly, k0: &FpPoly, p: u64, e: u32) -> Option<ZPoly> {
    let m = BigInt::from(p).pow(e);
    let f0 = z_to_fp(f, p);
    let (h0, r) = f0.div_rem(k0);
    if !r.is_zero() {
        return None;
    }
    let (sigma, _tau) = bezout(&h0, k0)?;
    let mut k = fp_to_z(k0);
    let mut h = fp_to_z(&h0);
    let mut pj = BigInt::from(p);
    for _ in 1..e {
        let diff = zsub(f, &zmul(&k, &h, &m), &m);
        let err: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let err = z_to_fp(&err, p);
        if err.is_zero() {
            pj *= p;
            continue;
        }
        let dk = sigma.mul(&err).rem(k0);
        let (dh, rem) = err.sub(&h0.mul(&dk)).div_rem(k0);
        debug_assert!(rem.is_zero());
        let add = |a: &ZPoly, d: &FpPoly| -> ZPoly {
            let n = a.len().max(d.coeffs().len());
            let z = BigInt::zero();
            trim(
                (0..n)
                    .map(|i| {
                        let di = d.coeffs().get(i).copied().unwrap_or(0);
                        (a.get(i).unwrap_or(&z) + &pj * BigInt::from(di)).mod_floor(&m)
                    })
                    .collect(),
            )
        };
        k = add(&k, &dk);
        h = add(&h, &dh);
        pj *= p;
    }
    Some(k)
}

/// Monic quadratic factors of a squarefree polynomial over F_p.
fn quadratic_factors_mod_p(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.modulus();
    let roots = f.roots_by_search();
    let mut out = Vec::new();
    for (i, &a) in roots.iter().enumerate() {
        for &b in &roots[i + 1..] {
            let s = (a + b) % p;
            out.push(FpPoly::new(p, vec![a * b % p, (p - s) % p, 1]));
        }
    }
    for (d, g) in f.distinct_degree() {
        if d != 2 {
            continue;
        }
        for b in 0..p {
            for c in 0..p {
                let q = FpPoly::new(p, vec![c, b, 1]);
                if g.rem(&q).is_zero() && q.roots_by_search().is_empty() {
                    out.push(q);
                }
            }
        }
    }
    out
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Every monic rational quadratic k with k | psi_5 whose roots are the
/// abscissae of a rational subgroup of order 5.
pub fn rational_five_kernels(curve: &WeierstrassCurve<Rational>) -> Result<Vec<Poly<Rational>>> {
    let psi = division_polynomial_five(curve);
    let den = psi.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = psi.coeffs().iter().map(|c| (c * rat_int(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
    let lead = ints.last().expect("degree 12").clone();
    let max = ints.iter().map(|c| c.abs()).max().expect("nonempty");
    // coefficients of lead * (true factor) are below 2 |lead| ||psi||_2
    let bound = BigInt::from(4u32 * 13) * lead.abs() * &max + 1;

    let mut p = 7u64;
    let (p, fp) = loop {
        if p > 2000 {
            return Err(Error::Indeterminate("no prime of squarefree reduction for psi_5".into()));
        }
        if is_prime(p) && int_mod(&lead, p) != 0 {
            let f = FpPoly::new(p, ints.iter().map(|c| int_mod(c, p)).collect());
            if f.is_squarefree() {
                break (p, f.monic());
            }
        }
        p += 2;
    };
    let mut e = 1u32;
    let mut m = BigInt::from(p);
    while m <= bound {
        m *= p;
        e += 1;
    }
    // the monic associate of psi modulo p^e
    let inv_lead = lead
        .extended_gcd(&m)
        .x
        .mod_floor(&m);
    let monic: ZPoly = ints.iter().map(|c| (c * &inv_lead).mod_floor(&m)).collect();

    let mut out = Vec::new();
    for k0 in quadratic_factors_mod_p(&fp) {
        let Some(k) = hensel_lift(&monic, &k0, p, e) else { continue };
        let coeffs: Vec<Rational> = k
            .iter()
            .map(|c| Rational::new(symmetric(&(c * &lead), &m), lead.clone()))
            .collect();
        let cand = Poly::new(coeffs);
        if cand.degree() != Some(2) || !psi.rem(&cand).is_zero() {
            continue;
        }
        if is_five_kernel(curve, &cand) && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out.sort_by(|a: &Poly<Rational>, b: &Poly<Rational>| {
        let key = |q: &Poly<Rational>| (q.coeff(1), q.coeff(0));
        key(a).cmp(&key(b))
    });
    Ok(out)
}

/// The first rational 5-kernel in a fixed order.
pub fn five_division_kernel(curve: &WeierstrassCurve<Rational>) -> Result<Poly<Rational>> {
    rational_five_kernels(curve)?
        .into_iter()
        .next()
        .ok_or(Error::NoRationalKernel)
}

/// The isogeny from `phi.codomain` back to `phi.domain` whose composite with
/// `phi` is multiplication by 5, found among the rational 5-kernels of the
/// codomain and tested on a few small abscissae.
pub fn dual_isogeny(phi: &Isogeny<Rational>) -> Result<Isogeny<Rational>> {
    let e = &phi.domain;
    let probes: Vec<(Rational, Rational)> = (1i64..=7)
        .flat_map(|d| (-30i64..=30).map(move |n| Rational::new(n.into(), d.into())))
        .filter_map(|x| Some((phi.map_x(&x)?, e.x_of_multiple(&x, 5)?)))
        .take(3)
        .collect();
    if probes.len() < 3 {
        return Err(Error::Indeterminate("no usable probe abscissae".into()));
    }
    for k in rational_five_kernels(&phi.codomain)? {
        let psi = velu_quotient(&phi.codomain, &k)?;
        let Some(iso) = psi.codomain.isomorphism_to(e) else { continue };
        let psi = psi.then_transform(&iso);
        if probes.iter().all(|(y, x5)| psi.map_x(y).as_ref() == Some(x5)) {
            return Ok(psi);
        }
    }
    Err(Error::NoRationalKernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn kernel_of_11a1() {
        let e = WeierstrassCurve::new(rat(0, 1), rat(-1, 1), rat(1, 1), rat(-10, 1), rat(-20, 1)).unwrap();
        assert_eq!(five_division_kernel(&e).unwrap(), Poly::from_ints(&[80, -21, 1]));
    }

    #[test]
    fn curve_without_rational_five_isogeny() {
        // 37a1 has no rational isogenies
        let e = WeierstrassCurve::new(rat(0, 1), rat(0, 1), rat(1, 1), rat(-1, 1), rat(0, 1)).unwrap();
        assert_eq!(five_division_kernel(&e), Err(Error::NoRationalKernel));
    }
}
