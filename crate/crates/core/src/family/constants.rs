use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Poly, Rational};

/// Bumped whenever the layout of [`Constants`] changes.
pub const PAPER_CONSTANTS_VERSION: u32 = 1;

/// Extension criterion for one quotient curve, in the y^2 = g(x) model:
/// v_p(x) <= -2 at each valuation prime and x not congruent to the singular
/// abscissa modulo the node prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCriterion {
    pub valuation_primes: Vec<u64>,
    pub valuation_bound: i64,
    pub node_prime: u64,
    pub node_residue: u64,
}

/// Every published number of the t = 4 construction, stored once.
///
/// Integers are decimal strings and rationals are `"n/d"`, so the table can
/// be dumped and reloaded (e.g. with a deliberately corrupted entry) as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub version: u32,
    pub t: String,
    pub u: [String; 3],
    /// v(z) = v_scale (a z^2 + b) / (a z^2 + v_mid z - b), likewise for w.
    pub v_scale: String,
    pub w_scale: String,
    pub vw_quadratic: String,
    pub vw_constant: String,
    pub v_middle: String,
    pub w_middle: String,
    /// x(z) = (c0 + c1 z + ... + c4 z^4) / (s (p1 z + p0)(q1 z + q0) z)
    pub x_numerator: [String; 5],
    pub x_denominator_scale: String,
    pub x_denominator_first: [String; 2],
    pub x_denominator_second: [String; 2],
    /// f(x) = scale (lin1 x + lin0)(quad2 x^2 + quad0)
    pub f_scale: String,
    pub f_linear: [String; 2],
    pub f_quadratic: [String; 2],
    /// z = 0 modulo each of these
    pub zero_primes: Vec<u64>,
    pub excluded_prime: u64,
    pub excluded_residue: u64,
    /// z = 1 modulo each of these; they split in K
    pub split_primes: [u64; 3],
    pub criteria: [CurveCriterion; 3],
    /// pattern[j][i]: whether the prime above split_primes[i] splits in L_{j+1}
    pub expected_pattern: [[bool; 3]; 3],
}

fn s(v: &str) -> String {
    v.to_string()
}

impl Constants {
    pub fn paper() -> Self {
        Constants {
            version: PAPER_CONSTANTS_VERSION,
            t: s("4"),
            u: [s("19/21"), s("-29/21"), s("-11/21")],
            v_scale: s("29/19"),
            w_scale: s("11/19"),
            vw_quadratic: s("53719189282"),
            vw_constant: s("26766692861"),
            v_middle: s("-283246634396"),
            w_middle: s("20305766998"),
            x_numerator: [
                s("343898806423252015354080"),
                s("-411804539876837130626339"),
                s("-642297925780193483509181"),
                s("826467660375890872281118"),
                s("1385160622615364964251520"),
            ],
            x_denominator_scale: s("5167944494559"),
            x_denominator_first: [s("922989409"), s("4883562662")],
            x_denominator_second: [s("-29"), s("11")],
            f_scale: s("42"),
            f_linear: [s("-133597561"), s("44876601")],
            f_quadratic: [s("-6061"), s("9261")],
            zero_primes: vec![11, 19, 29],
            excluded_prime: 419,
            excluded_residue: 86,
            split_primes: [163, 701, 1277],
            criteria: [
                CurveCriterion {
                    valuation_primes: vec![11, 29],
                    valuation_bound: -2,
                    node_prime: 419,
                    node_residue: 77,
                },
                CurveCriterion {
                    valuation_primes: vec![11, 19],
                    valuation_bound: -2,
                    node_prime: 709,
                    node_residue: 677,
                },
                CurveCriterion {
                    valuation_primes: vec![19, 29],
                    valuation_bound: -2,
                    node_prime: 151,
                    node_residue: 36,
                },
            ],
            expected_pattern: [
                [true, true, false],
                [false, true, true],
                [true, false, true],
            ],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Constants = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if c.version != PAPER_CONSTANTS_VERSION {
            return Err(Error::Parse(format!("unsupported constants version {}", c.version)));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("constants serialize")
    }

    pub fn t(&self) -> Result<Rational> {
        parse_rational(&self.t)
    }

    pub fn u_values(&self) -> Result<[Rational; 3]> {
        Ok([
            parse_rational(&self.u[0])?,
            parse_rational(&self.u[1])?,
            parse_rational(&self.u[2])?,
        ])
    }

    fn r(v: &str) -> Result<Rational> {
        parse_rational(v)
    }

    fn poly(v: &[String]) -> Result<Poly<Rational>> {
        Ok(Poly::new(v.iter().map(|c| Self::r(c)).collect::<Result<Vec<_>>>()?))
    }

    /// (numerator, denominator) of x(z).
    pub fn x_of_z_parts(&self) -> Result<(Poly<Rational>, Poly<Rational>)> {
        let num = Self::poly(&self.x_numerator)?;
        let den = &(&Self::poly(&self.x_denominator_first)? * &Self::poly(&self.x_denominator_second)?)
            * &Poly::monomial(Self::r(&self.x_denominator_scale)?, 1);
        Ok((num, den))
    }

    fn ratio(&self, scale: &str, middle: &str) -> Result<(Poly<Rational>, Poly<Rational>)> {
        let a = Self::r(&self.vw_quadratic)?;
        let b = Self::r(&self.vw_constant)?;
        let num = Poly::new(vec![b.clone(), Rational::zero(), a.clone()]).scale(&Self::r(scale)?);
        let den = Poly::new(vec![-b, Self::r(middle)?, a]);
        Ok((num, den))
    }

    pub fn v_of_z_parts(&self) -> Result<(Poly<Rational>, Poly<Rational>)> {
        self.ratio(&self.v_scale, &self.v_middle)
    }

    pub fn w_of_z_parts(&self) -> Result<(Poly<Rational>, Poly<Rational>)> {
        self.ratio(&self.w_scale, &self.w_middle)
    }

    /// The cubic f of the hyperelliptic model y^2 = f(x(z)).
    pub fn f_model(&self) -> Result<Poly<Rational>> {
        let lin = Self::poly(&self.f_linear)?;
        let q = Self::poly(&self.f_quadratic)?;
        let quad = Poly::new(vec![q.coeff(0), Rational::zero(), q.coeff(1)]);
        Ok((&lin * &quad).scale(&Self::r(&self.f_scale)?))
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::paper()
    }
}
