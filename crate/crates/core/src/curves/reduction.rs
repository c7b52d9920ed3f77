use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Transform, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact::{
    int_valuation, is_prime, jacobi, rat_int, rational_mod, trial_factor, valuation, FpPoly,
    Rational,
};

/// Default trial-division bound when factoring discriminants.
pub const DEFAULT_TRIAL_BOUND: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
}

/// Local data at one prime of a globally minimal model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionInfo {
    pub prime: u64,
    pub kind: ReductionKind,
    /// v_p of the minimal discriminant.
    pub discriminant_valuation: u32,
    /// Components of the special fibre over the algebraic closure of F_p.
    pub component_count: u32,
    /// Components defined over F_p (the Tamagawa number).
    pub tamagawa: u32,
    /// Abscissa of the node on the minimal model, modulo p.
    pub singular_x: Option<u64>,
}

/// A globally minimal integral model together with the change of variables
/// from the curve it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModel {
    pub curve: WeierstrassCurve<Rational>,
    /// Maps coordinates of the original curve to the minimal one.
    pub transform: Transform<Rational>,
    pub c4: BigInt,
    pub c6: BigInt,
    pub discriminant: BigInt,
}

fn to_int(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.numer().clone()
}

fn lcm_of_denominators(c: &WeierstrassCurve<Rational>) -> BigInt {
    c.coefficients()
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
}

/// v_p with zero mapped to a large sentinel.
fn val_or_inf(n: &BigInt, p: u64) -> i64 {
    if n.is_zero() {
        i64::MAX / 4
    } else {
        int_valuation(n, p)
    }
}

/// Integral reduced model (a1, a3 in {0,1}, a2 in {-1,0,1}) with the given
/// invariants, when one exists.
fn model_from_invariants(c4: &BigInt, c6: &BigInt) -> Option<WeierstrassCurve<Rational>> {
    let exact = |n: BigInt, d: i64| -> Option<BigInt> {
        let (q, r) = n.div_mod_floor(&BigInt::from(d));
        r.is_zero().then_some(q)
    };
    for b2 in [-4i64, -3, 0, 1, 4, 5] {
        let b2i = BigInt::from(b2);
        let Some(b4) = exact(&b2i * &b2i - c4, 24) else { continue };
        let Some(b6) = exact(-(&b2i * &b2i * &b2i) + 36 * &b2i * &b4 - c6, 216) else { continue };
        let a1 = BigInt::from(b2.rem_euclid(2));
        let a3 = b6.mod_floor(&BigInt::from(2));
        let Some(a2) = exact(&b2i - &a1, 4) else { continue };
        let Some(a4) = exact(&b4 - &a1 * &a3, 2) else { continue };
        let Some(a6) = exact(&b6 - &a3, 4) else { continue };
        let curve = WeierstrassCurve {
            a1: rat_int(a1),
            a2: rat_int(a2),
            a3: rat_int(a3),
            a4: rat_int(a4),
            a6: rat_int(a6),
        };
        if to_int(&curve.c4()) == *c4 && to_int(&curve.c6()) == *c6 {
            return Some(curve);
        }
    }
    None
}

impl WeierstrassCurve<Rational> {
    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|a| a.is_integer())
    }

    /// An integral model obtained by pure scaling.
    pub fn integral_model(&self) -> (WeierstrassCurve<Rational>, Transform<Rational>) {
        let l = lcm_of_denominators(self);
        let t = Transform {
            u: Rational::new(BigInt::one(), l),
            ..Transform::identity()
        };
        (self.transform(&t), t)
    }

    /// The globally minimal model. Primes dividing gcd(c4, c6) are found by
    /// trial division up to `bound`; a leftover that might hide a fourth power
    /// of a larger prime makes the answer indeterminate.
    pub fn minimal_model(&self, bound: u64) -> Result<MinimalModel> {
        let (integral, t0) = self.integral_model();
        let c4 = to_int(&integral.c4());
        let c6 = to_int(&integral.c6());
        let g = c4.gcd(&c6);
        let f = trial_factor(g.magnitude(), bound);
        if !f.complete {
            let b = BigUint::from(bound);
            if f.cofactor >= b.pow(4) {
                return Err(Error::Indeterminate(format!(
                    "gcd(c4, c6) not factored below {bound}; minimality unknown"
                )));
            }
        }
        let mut scale = BigInt::one();
        let mut small_primes = Vec::new();
        for &(p, _) in &f.factors {
            let d = (val_or_inf(&c4, p) / 4).min(val_or_inf(&c6, p) / 6);
            if d <= 0 {
                continue;
            }
            if p <= 3 {
                small_primes.push((p, d as u32));
            } else {
                scale *= BigInt::from(p).pow(d as u32);
            }
        }
        // At 2 and 3 the largest scaling still admitting an integral model is
        // found by trying the reconstruction.
        let d2 = small_primes.iter().find(|x| x.0 == 2).map_or(0, |x| x.1);
        let d3 = small_primes.iter().find(|x| x.0 == 3).map_or(0, |x| x.1);
        for e2 in (0..=d2).rev() {
            for e3 in (0..=d3).rev() {
                let u = &scale * BigInt::from(2).pow(e2) * BigInt::from(3).pow(e3);
                let u4 = u.pow(4);
                let u6 = u.pow(6);
                if !(&c4 % &u4).is_zero() || !(&c6 % &u6).is_zero() {
                    continue;
                }
                let (m4, m6) = (&c4 / &u4, &c6 / &u6);
                let Some(curve) = model_from_invariants(&m4, &m6) else { continue };
                let t1 = integral
                    .transform_with_scale(&curve, rat_int(u.clone()))
                    .ok_or_else(|| Error::Indeterminate("no transform to reconstructed model".into()))?;
                let discriminant = to_int(&curve.discriminant());
                return Ok(MinimalModel {
                    transform: t0.then(&t1),
                    curve,
                    c4: m4,
                    c6: m6,
                    discriminant,
                });
            }
        }
        Err(Error::Indeterminate("no integral model with the scaled invariants".into()))
    }

    /// Primes of bad reduction, read off the minimal discriminant.
    pub fn bad_primes(&self, bound: u64) -> Result<Vec<u64>> {
        self.minimal_model(bound)?.bad_primes(bound)
    }

    /// All reduction data at bad primes.
    pub fn reduction_data(&self, bound: u64) -> Result<Vec<ReductionInfo>> {
        self.minimal_model(bound)?.reduction_data(bound)
    }

    pub fn reduction_at(&self, p: u64) -> Result<ReductionInfo> {
        self.minimal_model(DEFAULT_TRIAL_BOUND)?.reduction_at(p)
    }

    pub fn is_semistable(&self, bound: u64) -> Result<bool> {
        self.minimal_model(bound)?.is_semistable(bound)
    }

    /// Primes where the special fibre has a number of components divisible by 5.
    pub fn five_component_primes(&self, bound: u64) -> Result<Vec<u64>> {
        self.minimal_model(bound)?.five_component_primes(bound)
    }
}

impl MinimalModel {
    pub fn bad_primes(&self, bound: u64) -> Result<Vec<u64>> {
        let f = trial_factor(self.discriminant.magnitude(), bound);
        if !f.complete {
            return Err(Error::Indeterminate(format!(
                "minimal discriminant has an unfactored part {} above {bound}",
                f.cofactor
            )));
        }
        Ok(f.factors.iter().map(|&(p, _)| p).collect())
    }

    pub fn reduction_data(&self, bound: u64) -> Result<Vec<ReductionInfo>> {
        self.bad_primes(bound)?
            .into_iter()
            .map(|p| self.reduction_at(p))
            .collect()
    }

    pub fn is_semistable(&self, bound: u64) -> Result<bool> {
        for p in self.bad_primes(bound)? {
            if self.c4.is_multiple_of(&BigInt::from(p)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn five_component_primes(&self, bound: u64) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for info in self.reduction_data(bound)? {
            if info.component_count % 5 == 0 {
                out.push(info.prime);
            }
        }
        Ok(out)
    }

    /// Reduction type at `p`. Additive reduction is not supported.
    pub fn reduction_at(&self, p: u64) -> Result<ReductionInfo> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let v = int_valuation(&self.discriminant, p) as u32;
        if v == 0 {
            return Ok(ReductionInfo {
                prime: p,
                kind: ReductionKind::Good,
                discriminant_valuation: 0,
                component_count: 1,
                tamagawa: 1,
                singular_x: None,
            });
        }
        if self.c4.is_multiple_of(&BigInt::from(p)) {
            return Err(Error::UnsupportedReduction { prime: p });
        }
        let (x0, y0) = self.node(p)?;
        let split = self.node_is_split(p, x0, y0);
        let kind = if split {
            ReductionKind::SplitMultiplicative
        } else {
            ReductionKind::NonsplitMultiplicative
        };
        let tamagawa = if split {
            v
        } else if v % 2 == 1 {
            1
        } else {
            2
        };
        Ok(ReductionInfo {
            prime: p,
            kind,
            discriminant_valuation: v,
            component_count: v,
            tamagawa,
            singular_x: Some(x0),
        })
    }

    fn coeffs_mod(&self, p: u64) -> [u64; 5] {
        let c = self.curve.coefficients();
        std::array::from_fn(|i| rational_mod(&c[i], p).expect("integral model"))
    }

    /// Singular point of the reduction mod p, assuming bad reduction.
    fn node(&self, p: u64) -> Result<(u64, u64)> {
        let [a1, a2, a3, a4, a6] = self.coeffs_mod(p);
        if p == 2 {
            for x in 0..2u64 {
                for y in 0..2u64 {
                    let f = (y * y + a1 * x * y + a3 * y + x * x * x + a2 * x * x + a4 * x + a6) % 2;
                    let fx = (a1 * y + x * x + a4) % 2;
                    let fy = (a1 * x + a3) % 2;
                    if f == 0 && fx == 0 && fy == 0 {
                        return Ok((x, y));
                    }
                }
            }
            return Err(Error::NoSingularPoint { prime: p });
        }
        let b = FpPoly::reduce(&self.curve.two_torsion_polynomial(), p)?;
        let g = b.gcd(&b.derivative());
        if g.degree() != Some(1) {
            return Err(Error::NoSingularPoint { prime: p });
        }
        let g = g.monic();
        let x0 = (p - g.coeffs()[0]) % p;
        // 2y + a1 x + a3 = 0 at the singular point
        let inv2 = p.div_ceil(2);
        let t = (a1 as u128 * x0 as u128 + a3 as u128) % p as u128;
        let y0 = ((p as u128 - t) % p as u128 * inv2 as u128 % p as u128) as u64;
        Ok((x0, y0))
    }

    /// The tangent cone y^2 + a1 xy - (a2 + 3 x0) x^2 at the translated node
    /// splits over F_p.
    fn node_is_split(&self, p: u64, x0: u64, _y0: u64) -> bool {
        let [a1, a2, ..] = self.coeffs_mod(p);
        let a2t = (a2 + 3 * (x0 % p)) % p;
        if p == 2 {
            // a1 is 1 at a node; T^2 + T + a2t has a root iff a2t = 0
            return a2t == 0;
        }
        let disc = (a1 * a1 + 4 * a2t) % p;
        jacobi(&BigInt::from(disc), &BigInt::from(p)) == Ok(1)
    }

    /// Whether a point with abscissa `x` on the original curve (coordinates
    /// possibly over a quadratic extension) reduces to the node at p.
    pub fn reduces_to_node(&self, x: &Rational, p: u64) -> Result<bool> {
        let info = self.reduction_at(p)?;
        let Some(node) = info.singular_x else {
            return Ok(false);
        };
        let xm = self.transform.map_x(x);
        match valuation(&xm, p)? {
            Some(v) if v < 0 => Ok(false),
            _ => Ok(rational_mod(&xm, p) == Some(node)),
        }
    }
}

/// Count of affine solutions modulo a small prime, for cross-checks.
pub fn count_affine_points_mod(curve: &WeierstrassCurve<Rational>, p: u64) -> Option<u64> {
    let c = curve.coefficients();
    let a: Vec<i128> = c
        .iter()
        .map(|x| rational_mod(x, p).map(|v| v as i128))
        .collect::<Option<_>>()?;
    let pi = p as i128;
    let mut n = 0;
    for x in 0..pi {
        for y in 0..pi {
            let f = y * y + a[0] * x * y + a[2] * y - x * x * x - a[1] * x * x - a[3] * x - a[4];
            if f.rem_euclid(pi) == 0 {
                n += 1;
            }
        }
    }
    Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::new(rat(a[0], 1), rat(a[1], 1), rat(a[2], 1), rat(a[3], 1), rat(a[4], 1)).unwrap()
    }

    #[test]
    fn scaled_curve_returns_to_minimal() {
        // 11a1 blown up by u = 6
        let e = curve([0, -1, 1, -10, -20]);
        let t = Transform { u: rat(1, 6), r: rat(0, 1), s: rat(0, 1), t: rat(0, 1) };
        let big = e.transform(&t);
        let m = big.minimal_model(1000).unwrap();
        assert_eq!(m.curve, e);
        assert_eq!(big.transform(&m.transform), e);
        assert_eq!(m.discriminant, BigInt::from(-161051));
    }

    #[test]
    fn reduction_of_11a1() {
        let e = curve([0, -1, 1, -10, -20]);
        let info = e.reduction_at(11).unwrap();
        assert_eq!(info.kind, ReductionKind::SplitMultiplicative);
        assert_eq!(info.component_count, 5);
        assert_eq!(info.tamagawa, 5);
        assert_eq!(e.five_component_primes(1000).unwrap(), vec![11]);
        assert!(e.is_semistable(1000).unwrap());
    }

    #[test]
    fn additive_reduction_is_unsupported() {
        // y^2 = x^3 - x has additive reduction at 2
        let e = curve([0, 0, 0, -1, 0]);
        assert_eq!(e.reduction_at(2), Err(Error::UnsupportedReduction { prime: 2 }));
        assert!(!e.is_semistable(100).unwrap());
    }

    #[test]
    fn split_test_agrees_with_point_counts() {
        let curves = [
            [0, -1, 1, -10, -20],
            [1, 0, 1, 4, -6],
            [1, 0, 0, -1, 0],
            [0, 1, 1, -2, 0],
            [1, -1, 1, -3, 3],
            [0, 0, 1, -1, 0],
            [1, 1, 0, -2, -1],
        ];
        let mut checked = 0;
        for a in curves {
            let e = curve(a);
            let m = e.minimal_model(1000).unwrap();
            for p in m.bad_primes(1000).unwrap() {
                let Ok(info) = m.reduction_at(p) else { continue };
                let n = count_affine_points_mod(&m.curve, p).unwrap();
                let expected = match info.kind {
                    ReductionKind::SplitMultiplicative => p - 1,
                    ReductionKind::NonsplitMultiplicative => p + 1,
                    ReductionKind::Good => unreachable!(),
                };
                assert_eq!(n, expected, "curve {a:?} at {p}");
                checked += 1;
            }
        }
        assert!(checked >= 8);
    }
}
