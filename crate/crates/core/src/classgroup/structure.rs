use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::form::{check_discriminant, compose_unchecked, power, BinaryQuadraticForm};
use crate::error::{Error, Result};

/// Default bound on |D| for enumeration.
pub const DEFAULT_DISC_BOUND: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupStructure {
    pub discriminant: i64,
    pub class_number: u64,
    /// d_1 | d_2 | ... | d_k, each > 1
    pub invariants: Vec<u64>,
}

impl ClassGroupStructure {
    pub fn p_rank(&self, p: u64) -> usize {
        self.invariants.iter().filter(|&&d| d % p == 0).count()
    }
}

fn budget(d: i64, bound: u64) -> Result<()> {
    check_discriminant(d)?;
    if d.unsigned_abs() > bound {
        return Err(Error::OutOfBudget(format!("|D| = {} exceeds {bound}", d.unsigned_abs())));
    }
    Ok(())
}

/// All reduced primitive forms of discriminant `d`, sorted.
pub fn enumerate_reduced(d: i64, bound: u64) -> Result<Vec<BinaryQuadraticForm>> {
    budget(d, bound)?;
    let n = d.unsigned_abs() as i64;
    let mut out = Vec::new();
    // a <= sqrt(|D|/3) for reduced forms
    let mut a = 1i64;
    while 3 * a * a <= n {
        let mut b = -a + 1;
        // b has the parity of D
        if (b - d).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let f = BinaryQuadraticForm { a, b, c };
                if c >= a
                    && f.is_reduced()
                    && num_integer::gcd(num_integer::gcd(a, b), c) == 1
                {
                    out.push(f);
                }
            }
            b += 2;
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

pub fn class_number(d: i64, bound: u64) -> Result<u64> {
    Ok(enumerate_reduced(d, bound)?.len() as u64)
}

/// Diagonal of the Smith normal form of an integer matrix.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block as pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        m[i][j] -= q * m[i][t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

/// Invariant factors by growing a subgroup one generator at a time: each new
/// generator g contributes the relation n g = (word for g^n in the earlier
/// generators), where n is least with g^n in the current subgroup. The Smith
/// form of the relation matrix gives the invariants.
pub fn group_structure(d: i64, bound: u64) -> Result<ClassGroupStructure> {
    let forms = enumerate_reduced(d, bound)?;
    let h = forms.len();
    let identity = BinaryQuadraticForm::principal(d)?;
    // element -> exponent vector in the generators so far
    let mut sub: HashMap<BinaryQuadraticForm, Vec<i64>> = HashMap::from([(identity, Vec::new())]);
    let mut relations: Vec<Vec<i128>> = Vec::new();
    for g in &forms {
        if sub.contains_key(g) {
            continue;
        }
        let k = relations.len();
        let mut n = 1i64;
        let mut gn = *g;
        while !sub.contains_key(&gn) {
            gn = compose_unchecked(&gn, g, d);
            n += 1;
        }
        let mut rel: Vec<i128> = sub[&gn].iter().map(|&e| -(e as i128)).collect();
        rel.resize(k, 0);
        rel.push(n as i128);
        for r in relations.iter_mut() {
            r.push(0);
        }
        relations.push(rel);
        let old: Vec<(BinaryQuadraticForm, Vec<i64>)> = sub.iter().map(|(f, v)| (*f, v.clone())).collect();
        for (f, v) in old {
            let mut v = v;
            v.resize(k + 1, 0);
            let mut cur = f;
            for e in 1..n {
                cur = compose_unchecked(&cur, g, d);
                let mut w = v.clone();
                w[k] = e;
                sub.insert(cur, w);
            }
            sub.insert(f, v);
        }
        if sub.len() == h {
            break;
        }
    }
    debug_assert_eq!(sub.len(), h);
    let mut invariants: Vec<u64> = smith_diagonal(relations)
        .into_iter()
        .filter(|&x| x > 1)
        .map(|x| x as u64)
        .collect();
    invariants.sort_unstable();
    Ok(ClassGroupStructure {
        discriminant: d,
        class_number: h as u64,
        invariants,
    })
}

pub fn p_rank(d: i64, p: u64, bound: u64) -> Result<usize> {
    Ok(group_structure(d, bound)?.p_rank(p))
}

/// Number of classes killed by p, counted directly.
pub fn p_torsion_count(d: i64, p: u64, bound: u64) -> Result<u64> {
    let identity = BinaryQuadraticForm::principal(d)?;
    Ok(enumerate_reduced(d, bound)?
        .iter()
        .filter(|f| power(f, p) == identity)
        .count() as u64)
}

/// Fundamental discriminant of Q(sqrt(n)) from the squarefree kernel of n.
pub fn fundamental_discriminant(squarefree: i64) -> i64 {
    if squarefree.rem_euclid(4) == 1 {
        squarefree
    } else {
        4 * squarefree
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = DEFAULT_DISC_BOUND;

    #[test]
    fn golden_class_numbers() {
        assert_eq!(class_number(-4, B).unwrap(), 1);
        assert_eq!(class_number(-3, B).unwrap(), 1);
        assert_eq!(class_number(-23, B).unwrap(), 3);
        assert_eq!(class_number(-47, B).unwrap(), 5);
        assert_eq!(class_number(-163, B).unwrap(), 1);
        assert_eq!(
            enumerate_reduced(-23, B).unwrap(),
            vec![
                BinaryQuadraticForm { a: 1, b: 1, c: 6 },
                BinaryQuadraticForm { a: 2, b: -1, c: 3 },
                BinaryQuadraticForm { a: 2, b: 1, c: 3 },
            ]
        );
        assert!(enumerate_reduced(-5, B).is_err());
        assert!(matches!(class_number(-20_000_003, B), Err(Error::OutOfBudget(_))));
    }

    #[test]
    fn structures() {
        assert_eq!(group_structure(-23, B).unwrap().invariants, vec![3]);
        let s = group_structure(-47, B).unwrap();
        assert_eq!((s.invariants.clone(), s.p_rank(5)), (vec![5], 1));
        assert!(group_structure(-4, B).unwrap().invariants.is_empty());
        // Q(sqrt(-5460)): (Z/2)^4
        assert_eq!(group_structure(-4 * 1365, B).unwrap().invariants, vec![2, 2, 2, 2]);
        // D = -3299: Z/3 x Z/9
        assert_eq!(group_structure(-3299, B).unwrap().invariants, vec![3, 9]);
        // D = -11199: Z/5 x Z/20, the first 5-rank 2 case here
        assert_eq!(group_structure(-11199, B).unwrap().invariants, vec![5, 20]);
        assert_eq!(p_rank(-11199, 5, B).unwrap(), 2);
        assert_eq!(group_structure(-11651, B).unwrap().invariants, vec![3, 18]);
    }

    #[test]
    fn smith_form() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(smith_diagonal(m), vec![1, 6]);
        let m = vec![vec![4, 0], vec![-2, 6]];
        assert_eq!(smith_diagonal(m), vec![2, 12]);
    }
}
