use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::OnceCell;

use super::{mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

const CACHED_PRIME_LIMIT: u64 = 10_000_000;

fn cached_primes() -> &'static [u64] {
    static PRIMES: OnceCell<Vec<u64>> = OnceCell::new();
    PRIMES.get_or_init(|| primes_up_to(CACHED_PRIME_LIMIT))
}

/// Prime factors found by trial division, plus what is left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// (prime, exponent), ascending.
    pub factors: Vec<(u64, u32)>,
    /// Unfactored part; 1 when complete.
    pub cofactor: BigUint,
    pub complete: bool,
}

/// Trial division of |n| by primes up to `bound` (at most 2^32).
///
/// A leftover cofactor below `bound^2`, or a leftover that fits in 64 bits and
/// passes Miller-Rabin, is recorded as a prime factor and the result is complete.
pub fn trial_factor(n: &BigUint, bound: u64) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    assert!(bound <= u32::MAX as u64, "trial bound too large");
    let mut factors = Vec::new();
    let mut rest = n.clone();
    let mut small: Option<u128> = rest.to_u128();

    let mut try_divide = |p: u64, rest: &mut BigUint, small: &mut Option<u128>| -> bool {
        let mut e = 0u32;
        match small {
            Some(m) => {
                while *m % p as u128 == 0 {
                    *m /= p as u128;
                    e += 1;
                }
            }
            None => loop {
                let (q, r) = rest.div_rem(&BigUint::from(p));
                if !r.is_zero() {
                    break;
                }
                *rest = q;
                e += 1;
            },
        }
        if e > 0 {
            factors.push((p, e));
            if small.is_none() {
                *small = rest.to_u128();
            }
        }
        let left = match small {
            Some(m) => BigUint::from(*m),
            None => rest.clone(),
        };
        // stop once the remainder is 1 or certainly prime
        let pp = BigUint::from(p) * BigUint::from(p);
        left.is_one() || left < pp
    };

    let mut finished = false;
    if bound <= CACHED_PRIME_LIMIT {
        for &p in cached_primes() {
            if p > bound {
                break;
            }
            if try_divide(p, &mut rest, &mut small) {
                finished = true;
                break;
            }
        }
    } else {
        let mut p = 2u64;
        while p <= bound {
            if is_prime(p) && try_divide(p, &mut rest, &mut small) {
                finished = true;
                break;
            }
            p += if p == 2 { 1 } else { 2 };
        }
    }
    let mut cofactor = match small {
        Some(m) => BigUint::from(m),
        None => rest,
    };
    let mut complete = cofactor.is_one();
    if !complete {
        let b2 = BigUint::from(bound) * BigUint::from(bound);
        let provably_prime = finished
            || cofactor < b2
            || cofactor.to_u64().is_some_and(is_prime);
        if provably_prime {
            if let Some(q) = cofactor.to_u64() {
                factors.push((q, 1));
                factors.sort_unstable();
                cofactor = BigUint::one();
                complete = true;
            }
        }
    }
    Factorization {
        factors,
        cofactor,
        complete,
    }
}

/// Squarefree kernel s of n (n/s a perfect square), by trial division to `bound`.
///
/// When the leftover cofactor cannot be resolved, it is kept whole inside `s`
/// unless it is a perfect square, and the flag reports incompleteness.
pub fn squarefree_part(n: &BigInt, bound: u64) -> Result<(BigInt, bool)> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("squarefree part of zero".into()));
    }
    let f = trial_factor(n.magnitude(), bound);
    let mut s = BigUint::one();
    for &(p, e) in &f.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    let mut complete = f.complete;
    if !complete {
        let r = f.cofactor.sqrt();
        if &r * &r == f.cofactor {
            complete = true;
        } else {
            s *= &f.cofactor;
        }
    }
    Ok((BigInt::from_biguint(n.sign(), s), complete))
}

/// Squarefree kernel of n (n/s a perfect square) when |s| <= `max`, or
/// `None` when |s| is provably larger.
///
/// Trial division stops as soon as p * (kernel so far) exceeds `max`: past
/// that point any prime left with an odd exponent pushes the kernel over.
pub fn bounded_squarefree_kernel(n: &BigInt, max: u64) -> Result<Option<BigInt>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("squarefree part of zero".into()));
    }
    if max > CACHED_PRIME_LIMIT {
        return Err(Error::OutOfBudget(format!("kernel bound {max} above {CACHED_PRIME_LIMIT}")));
    }
    let mut rest = n.magnitude().clone();
    let mut s: u64 = 1;
    for &p in cached_primes() {
        if rest.is_one() || p as u128 * s as u128 > max as u128 {
            break;
        }
        if (&rest % p).is_zero() {
            let mut e = 0u32;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            if e % 2 == 1 {
                s *= p;
            }
        }
    }
    // every prime left is too large to join the kernel
    let r = rest.sqrt();
    if &r * &r != rest {
        return Ok(None);
    }
    Ok(Some(BigInt::from_biguint(n.sign(), BigUint::from(s))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, primes_up_to(199));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&BigInt::from(-48), 100).unwrap(), (BigInt::from(-3), true));
        assert_eq!(squarefree_part(&BigInt::from(9261), 100).unwrap(), (BigInt::from(21), true));
        assert!(squarefree_part(&BigInt::zero(), 100).is_err());
    }

    #[test]
    fn squarefree_incomplete_beyond_bound() {
        // 1009^2 * 1013 * 1019, bound 100: cofactor is far above 100^2 and not a square
        let n = BigInt::from(1009u64 * 1009) * BigInt::from(1013u64 * 1019);
        let (s, complete) = squarefree_part(&n, 100).unwrap();
        assert!(!complete);
        assert_eq!(s, n);
        // a pure square cofactor is still resolved
        let sq = BigInt::from(1009u64 * 1009) * BigInt::from(1013u64 * 1013) * 3;
        assert_eq!(squarefree_part(&sq, 100).unwrap(), (BigInt::from(3), true));
    }

    #[test]
    fn factor_with_large_prime_tail() {
        let n = BigUint::from(2u32).pow(10) * BigUint::from(1_000_000_007u64);
        let f = trial_factor(&n, 1000);
        assert!(f.complete);
        assert_eq!(f.factors, vec![(2, 10), (1_000_000_007, 1)]);
    }

    #[test]
    fn bounded_kernel() {
        let n = BigInt::from(-12i64) * BigInt::from(1_000_003u64).pow(2);
        assert_eq!(bounded_squarefree_kernel(&n, 100).unwrap(), Some(BigInt::from(-3)));
        let big = BigInt::from(2u64) * BigInt::from(1_000_003u64);
        assert_eq!(bounded_squarefree_kernel(&big, 1_000_000).unwrap(), None);
        assert_eq!(bounded_squarefree_kernel(&big, 3_000_000).unwrap(), Some(big.clone()));
    }
}
