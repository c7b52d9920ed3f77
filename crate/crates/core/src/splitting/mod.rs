//! Splitting of the auxiliary primes l_1, l_2, l_3 in K and in the three
//! quintic extensions L_j = K(x(P')), where P' runs over preimages of Q_j.
//!
//! Each l_i splits in K, so both primes above l_i have residue field F_l and
//! their decomposition in L_j is read off from the factorization of the
//! rational preimage quintic over F_l. The two primes above l_i have conjugate
//! Frobenius elements in the degree-10 dihedral closure, hence the same order,
//! so one verdict covers both. Since Gal(L_j/K) is cyclic of order 5, an
//! unramified prime is either totally split (five linear factors) or inert
//! (one quintic factor); any other profile means something upstream is wrong.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    format_rational, int_valuation, is_prime, is_rational_square, jacobi, signum, FpPoly, Poly,
    Rational,
};
use crate::family::MestreSpecialization;
use crate::sieve::{check_z, SieveReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSplitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frobenius {
    Split,
    Inert,
}

/// Behaviour of the odd prime `l` in Q(sqrt(radicand)).
pub fn prime_split_in_k(l: u64, radicand: &Rational) -> Result<PrimeSplitting> {
    if l == 2 {
        return Err(Error::Unsupported("the prime 2".into()));
    }
    if !is_prime(l) {
        return Err(Error::InvalidArgument(format!("{l} is not prime")));
    }
    if signum(radicand) == 0 {
        return Err(Error::InvalidArgument("zero radicand".into()));
    }
    // num * den has the same square class as num / den
    let mut n: BigInt = radicand.numer() * radicand.denom();
    let v = int_valuation(&n, l);
    if v % 2 == 1 {
        return Ok(PrimeSplitting::Ramified);
    }
    n /= BigInt::from(l).pow(v as u32);
    Ok(match jacobi(&n, &BigInt::from(l))? {
        1 => PrimeSplitting::Split,
        _ => PrimeSplitting::Inert,
    })
}

/// Decomposition of a prime of K above `l` (l split in K) in the extension
/// generated by a root of `quintic`.
pub fn frobenius_order_in_l(quintic: &Poly<Rational>, l: u64) -> Result<Frobenius> {
    if quintic.degree() != Some(5) {
        return Err(Error::InvalidArgument("expected a quintic".into()));
    }
    let bad = Error::RamifiedOrBadPrime { prime: l };
    let reduced = FpPoly::reduce(quintic, l).map_err(|_| bad.clone())?;
    if reduced.degree() != Some(5) || !reduced.is_squarefree() {
        return Err(bad);
    }
    let profile = reduced.factor_degrees();
    match profile.as_slice() {
        [1, 1, 1, 1, 1] => Ok(Frobenius::Split),
        [5] => Ok(Frobenius::Inert),
        _ => Err(Error::ProtocolViolation { prime: l, profile }),
    }
}

/// Splitting of l_1, l_2, l_3 in K and in each L_j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPattern {
    pub primes: [u64; 3],
    pub in_k: [PrimeSplitting; 3],
    /// cells[j][i]: the prime above l_i in L_{j+1}
    pub cells: [[Frobenius; 3]; 3],
}

impl SplittingPattern {
    pub fn as_bools(&self) -> [[bool; 3]; 3] {
        self.cells.map(|row| row.map(|c| c == Frobenius::Split))
    }
}

/// Whether the pattern forces the three cyclic quintic characters of K to be
/// independent: every L_j must have a prime inert in L_j and split in the
/// other two. A dependence sum a_j chi_j = 0 evaluated at that Frobenius
/// leaves a_j chi_j(Frob) = 0 with chi_j(Frob) nonzero, so a_j = 0.
pub fn independence_certificate(pattern: &SplittingPattern) -> Result<bool> {
    if let Some(i) = pattern.in_k.iter().position(|s| *s != PrimeSplitting::Split) {
        return Err(Error::InvalidCertificate(format!(
            "{} does not split in K",
            pattern.primes[i]
        )));
    }
    Ok((0..3).all(|j| {
        (0..3).any(|i| {
            pattern.cells[j][i] == Frobenius::Inert
                && (0..3).all(|k| k == j || pattern.cells[k][i] == Frobenius::Split)
        })
    }))
}

/// Everything established about the field K attached to one z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCertificate {
    pub record: String,
    pub schema: u32,
    pub z: String,
    pub radicand: String,
    pub sign: i8,
    pub sieve: Option<SieveReport>,
    pub pattern: Option<SplittingPattern>,
    pub pattern_matches_expected: bool,
    pub independent: bool,
    /// 5-rank of the class group of K is at least 3
    pub conclusion: bool,
    pub failures: Vec<String>,
}

pub fn splitting_pattern(spec: &MestreSpecialization, z: &Rational) -> Result<SplittingPattern> {
    let primes = spec.constants.split_primes;
    let radicand = spec.radicand(z)?;
    let x = spec.x_at(z)?;
    let mut in_k = [PrimeSplitting::Split; 3];
    for (i, &l) in primes.iter().enumerate() {
        in_k[i] = prime_split_in_k(l, &radicand)?;
    }
    let mut cells = [[Frobenius::Split; 3]; 3];
    for (j, row) in cells.iter_mut().enumerate() {
        let quintic = spec.preimage_quintic(j, &x)?;
        for (i, &l) in primes.iter().enumerate() {
            row[i] = frobenius_order_in_l(&quintic, l)?;
        }
    }
    Ok(SplittingPattern { primes, in_k, cells })
}

/// Runs the sieve and the splitting computation at `z`. Failures are
/// recorded in the certificate rather than returned.
pub fn verify_instance(spec: &MestreSpecialization, z: &Rational) -> FieldCertificate {
    let mut failures = Vec::new();
    let radicand = spec.radicand(z);
    let (radicand_str, sign) = match &radicand {
        Ok(r) => (format_rational(r), signum(r)),
        Err(e) => {
            failures.push(format!("radicand: {e}"));
            (String::new(), 0)
        }
    };
    if let Ok(r) = &radicand {
        if is_rational_square(r) {
            failures.push(Error::FieldCollapse(radicand_str.clone()).to_string());
        }
    }
    let sieve = match check_z(spec, z) {
        Ok(rep) => {
            if !rep.pass {
                for r in rep.records.iter().filter(|r| !r.pass) {
                    failures.push(format!(
                        "curve {} at {}: required {}, observed {}",
                        r.curve, r.prime, r.required, r.observed
                    ));
                }
            }
            if !rep.rules_agree {
                failures.push("published criterion and node rule disagree".into());
            }
            Some(rep)
        }
        Err(e) => {
            failures.push(format!("sieve: {e}"));
            None
        }
    };
    let pattern = match splitting_pattern(spec, z) {
        Ok(p) => Some(p),
        Err(e) => {
            failures.push(format!("splitting: {e}"));
            None
        }
    };
    let matches = pattern
        .as_ref()
        .is_some_and(|p| p.as_bools() == spec.constants.expected_pattern);
    if pattern.is_some() && !matches {
        failures.push("splitting pattern differs from the expected one".into());
    }
    let independent = match pattern.as_ref().map(independence_certificate) {
        Some(Ok(b)) => {
            if !b {
                failures.push("pattern does not separate the three extensions".into());
            }
            b
        }
        Some(Err(e)) => {
            failures.push(e.to_string());
            false
        }
        None => false,
    };
    FieldCertificate {
        record: "certificate".into(),
        schema: 1,
        z: format_rational(z),
        radicand: radicand_str,
        sign,
        sieve,
        pattern,
        pattern_matches_expected: matches,
        independent,
        conclusion: failures.is_empty(),
        failures,
    }
}

/// Whether Q(sqrt(r)) for r in `radicands` are pairwise distinct fields.
pub fn pairwise_distinct_fields(radicands: &[Rational]) -> bool {
    radicands.iter().enumerate().all(|(a, r)| {
        radicands[a + 1..]
            .iter()
            .all(|s| !is_rational_square(&(r * s)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, rat_int};
    use crate::sieve::Sieve;

    #[test]
    fn splitting_in_k() {
        assert_eq!(prime_split_in_k(7, &rat(-3, 1)).unwrap(), PrimeSplitting::Split);
        assert_eq!(prime_split_in_k(5, &rat(-3, 1)).unwrap(), PrimeSplitting::Inert);
        assert_eq!(prime_split_in_k(3, &rat(-3, 1)).unwrap(), PrimeSplitting::Ramified);
        // square denominators do not change the field
        assert_eq!(prime_split_in_k(7, &rat(-3, 25)).unwrap(), PrimeSplitting::Split);
        assert_eq!(prime_split_in_k(7, &rat(-147, 1)).unwrap(), PrimeSplitting::Split);
        assert!(matches!(prime_split_in_k(2, &rat(-3, 1)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn quintic_profiles() {
        // x^5 - 1 over F_11: five roots; over F_7: x - 1 times an irreducible quartic
        let f = Poly::from_ints(&[-1, 0, 0, 0, 0, 1]);
        assert_eq!(frobenius_order_in_l(&f, 11).unwrap(), Frobenius::Split);
        assert!(matches!(
            frobenius_order_in_l(&f, 7),
            Err(Error::ProtocolViolation { prime: 7, .. })
        ));
        assert!(matches!(frobenius_order_in_l(&f, 5), Err(Error::RamifiedOrBadPrime { .. })));
        // x^5 - x - 1 is irreducible mod 5 (Artin-Schreier)
        let g = Poly::from_ints(&[-1, -1, 0, 0, 0, 1]);
        assert_eq!(frobenius_order_in_l(&g, 5).unwrap(), Frobenius::Inert);
    }

    fn pattern(cells: [[Frobenius; 3]; 3]) -> SplittingPattern {
        SplittingPattern {
            primes: [163, 701, 1277],
            in_k: [PrimeSplitting::Split; 3],
            cells,
        }
    }

    #[test]
    fn independence() {
        use Frobenius::{Inert as I, Split as S};
        assert!(independence_certificate(&pattern([[S, S, I], [I, S, S], [S, I, S]])).unwrap());
        assert!(!independence_certificate(&pattern([[S; 3]; 3])).unwrap());
        assert!(!independence_certificate(&pattern([[S, S, I], [S, S, I], [S, I, S]])).unwrap());
        let mut p = pattern([[S, S, I], [I, S, S], [S, I, S]]);
        p.in_k[1] = PrimeSplitting::Inert;
        assert!(matches!(independence_certificate(&p), Err(Error::InvalidCertificate(_))));
    }

    #[test]
    fn first_admissible_certificate() {
        let spec = MestreSpecialization::paper().unwrap();
        let c = verify_instance(&spec, &rat_int(int(874461709044)));
        assert!(c.conclusion, "{:?}", c.failures);
        assert!(c.pattern_matches_expected && c.independent);
    }

    #[test]
    fn excluded_residue_fails() {
        let spec = MestreSpecialization::paper().unwrap();
        let s = Sieve::new(&spec.constants).unwrap();
        let m = s.modulus().clone();
        let z = (0..419i64)
            .map(|k| s.residue() + &m * k)
            .find(|z| !s.is_admissible(z))
            .unwrap();
        let c = verify_instance(&spec, &rat_int(z));
        assert!(!c.conclusion);
        assert!(!c.sieve.unwrap().pass);
    }

    #[test]
    fn distinct_fields() {
        assert!(pairwise_distinct_fields(&[rat(2, 1), rat(3, 1), rat(-1, 1)]));
        assert!(!pairwise_distinct_fields(&[rat(2, 1), rat(8, 9)]));
    }
}
