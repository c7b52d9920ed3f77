use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::structure::{fundamental_discriminant, group_structure, ClassGroupStructure, DEFAULT_DISC_BOUND};
use crate::curves::{CubicModel, MinimalModel, DEFAULT_TRIAL_BOUND};
use crate::error::{Error, Result};
use crate::exact::{
    bounded_squarefree_kernel, format_rational, int_valuation, is_prime, jacobi, rational_mod, Poly,
    Rational,
};
use crate::family::{kubert_isogeny, quotient_curve};
use crate::isogeny::Isogeny;
use crate::splitting::{frobenius_order_in_l, Frobenius};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// trial division bound for curve discriminants
    pub trial_bound: u64,
    pub disc_bound: u64,
    /// auxiliary primes tried when certifying irreducibility of the quintic
    pub max_aux_prime: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            trial_bound: DEFAULT_TRIAL_BOUND,
            disc_bound: DEFAULT_DISC_BOUND,
            max_aux_prime: 300,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub record: String,
    pub schema: u32,
    pub u: String,
    pub x: String,
    pub status: OracleStatus,
    pub reason: String,
    pub five_component_primes: Vec<u64>,
    pub radicand: Option<String>,
    pub discriminant: Option<i64>,
    /// a prime split in K at which the preimage quintic stays irreducible
    pub inert_prime: Option<u64>,
    pub structure: Option<ClassGroupStructure>,
}

/// One quotient curve y^2 = g_u(x) with the data the oracle needs.
#[derive(Clone, Debug)]
pub struct SingleCurve {
    pub u: Rational,
    pub quotient: CubicModel,
    pub isogeny: Isogeny,
    pub minimal: MinimalModel,
    pub five_component_primes: Vec<u64>,
}

impl SingleCurve {
    pub fn new(u: &Rational, trial_bound: u64) -> Result<Self> {
        let quotient = quotient_curve(u)?;
        let isogeny = kubert_isogeny(u)?;
        let minimal = quotient.weierstrass().minimal_model(trial_bound)?;
        let five_component_primes = minimal.five_component_primes(trial_bound)?;
        Ok(SingleCurve {
            u: u.clone(),
            quotient,
            isogeny,
            minimal,
            five_component_primes,
        })
    }

    /// Product of the 5k-component primes at which the y^2 = g_u(x) model is
    /// far from minimal (the scaling X = A x has v_p(A) >= 2).
    pub fn denominator_base(&self) -> BigInt {
        let a = self.quotient.leading();
        self.five_component_primes
            .iter()
            .filter(|&&p| !a.numer().is_zero() && int_valuation(a.numer(), p) >= 2)
            .fold(BigInt::from(1), |acc, &p| acc * p)
    }

    /// The point with abscissa x avoids the node at every 5k-component prime.
    pub fn extends(&self, x: &Rational) -> Result<bool> {
        let big_x = self.quotient.to_weierstrass_x(x);
        for &p in &self.five_component_primes {
            if self.minimal.reduces_to_node(&big_x, p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn preimage_quintic(&self, x: &Rational) -> Result<Poly<Rational>> {
        let q = self.isogeny.preimage_polynomial(&self.quotient.to_weierstrass_x(x));
        if q.degree() != Some(5) {
            return Err(Error::DegenerateAbscissa);
        }
        Ok(q)
    }

    /// Checks 5 | h(K) for K = Q(sqrt(g_u(x))), or says why the instance is
    /// out of scope.
    pub fn check(&self, x: &Rational, budget: &OracleBudget) -> OracleVerdict {
        let mut v = OracleVerdict {
            record: "oracle".into(),
            schema: 1,
            u: format_rational(&self.u),
            x: format_rational(x),
            status: OracleStatus::Skip,
            reason: String::new(),
            five_component_primes: self.five_component_primes.clone(),
            radicand: None,
            discriminant: None,
            inert_prime: None,
            structure: None,
        };
        let skip = |mut v: OracleVerdict, reason: &str| {
            v.reason = reason.into();
            v
        };
        let r = self.quotient.cubic().eval(x);
        v.radicand = Some(format_rational(&r));
        if !r.is_negative() {
            return skip(v, "real or degenerate field");
        }
        match self.extends(x) {
            Ok(true) => {}
            Ok(false) => return skip(v, "reduces to a node"),
            Err(e) => return skip(v, &format!("extension check: {e}")),
        }
        let n: BigInt = r.numer() * r.denom();
        // |D| <= 4 |kernel|, so a kernel above the bound is out of budget
        let d = match bounded_squarefree_kernel(&n, budget.disc_bound) {
            Ok(Some(k)) => match k.to_i64() {
                Some(k) => fundamental_discriminant(k),
                None => return skip(v, "discriminant out of budget"),
            },
            Ok(None) => return skip(v, "discriminant out of budget"),
            Err(e) => return skip(v, &e.to_string()),
        };
        if d.unsigned_abs() > budget.disc_bound {
            return skip(v, "discriminant out of budget");
        }
        v.discriminant = Some(d);
        let quintic = match self.preimage_quintic(x) {
            Ok(q) => q,
            Err(e) => return skip(v, &e.to_string()),
        };
        let dd = BigInt::from(d);
        v.inert_prime = (7..=budget.max_aux_prime).filter(|&l| is_prime(l)).find(|&l| {
            !dd.is_multiple_of(&BigInt::from(l))
                && jacobi(&dd, &BigInt::from(l)) == Ok(1)
                && frobenius_order_in_l(&quintic, l) == Ok(Frobenius::Inert)
        });
        if v.inert_prime.is_none() {
            return skip(v, "quintic not certified irreducible over K");
        }
        match group_structure(d, budget.disc_bound) {
            Ok(s) => {
                let ok = s.class_number % 5 == 0;
                v.status = if ok { OracleStatus::Pass } else { OracleStatus::Fail };
                v.reason = format!("h = {}", s.class_number);
                v.structure = Some(s);
            }
            Err(e) => return skip(v, &e.to_string()),
        }
        v
    }
}

/// Single-curve oracle at (u, x); requires u = +-1 mod 5.
pub fn small_instance_oracle(u: &Rational, x: &Rational, budget: &OracleBudget) -> Result<OracleVerdict> {
    if !matches!(rational_mod(u, 5), Some(1 | 4)) {
        return Err(Error::InvalidArgument(format!("u = {} is not +-1 mod 5", format_rational(u))));
    }
    Ok(SingleCurve::new(u, budget.trial_bound)?.check(x, budget))
}

/// Rationals a/b = +-1 mod 5 by increasing height max(|a|, b), then b, then
/// a, skipping the degenerate +-1.
pub fn oracle_parameters() -> impl Iterator<Item = Rational> {
    (2i64..).flat_map(|h| {
        let mut level = Vec::new();
        for b in 1..=h {
            for a in [-h, h] {
                level.push((a, b));
            }
            if b == h {
                for a in 1 - h..h {
                    level.push((a, b));
                }
            }
        }
        level.sort_by_key(|&(a, b)| (b, a.abs(), a < 0));
        level
            .into_iter()
            .filter(|&(a, b)| a.gcd(&b) == 1)
            .map(|(a, b)| Rational::new(a.into(), b.into()))
            .filter(|u| matches!(rational_mod(u, 5), Some(1 | 4)))
    })
}

/// Number of parameters [`oracle_instances`] looks at before giving up.
pub const ORACLE_PARAMETER_LIMIT: usize = 200;

impl SingleCurve {
    /// Pass and Fail verdicts at x = a / (b m^2), b <= 3, |a| <= 400, with m
    /// from [`SingleCurve::denominator_base`]; at most `limit` of them.
    pub fn scan(&self, limit: usize, budget: &OracleBudget) -> Vec<OracleVerdict> {
        let m = self.denominator_base();
        let mut out = Vec::new();
        for b in 1..=3i64 {
            for a in -400..=400i64 {
                let den = &m * b;
                if a == 0 || !BigInt::from(a).gcd(&den).abs().eq(&BigInt::from(1)) {
                    continue;
                }
                let v = self.check(&Rational::new(BigInt::from(a), &den * &m), budget);
                if v.status != OracleStatus::Skip {
                    out.push(v);
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
        out
    }
}

/// Verdicts of [`SingleCurve::scan`] for u = `u`; empty if the curve cannot be
/// set up within the budget.
pub fn curve_instances(u: &Rational, per_curve: usize, budget: &OracleBudget) -> Vec<OracleVerdict> {
    SingleCurve::new(u, budget.trial_bound).map_or_else(|_| Vec::new(), |c| c.scan(per_curve, budget))
}

/// Deterministic scan for in-scope instances over [`oracle_parameters`], at
/// most `per_curve` per u, until `count` verdicts are found.
pub fn oracle_instances(count: usize, per_curve: usize, budget: &OracleBudget) -> Vec<OracleVerdict> {
    let mut out = Vec::new();
    for u in oracle_parameters().take(ORACLE_PARAMETER_LIMIT) {
        if out.len() >= count {
            break;
        }
        out.extend(curve_instances(&u, per_curve, budget));
    }
    out.truncate(count);
    out
}
