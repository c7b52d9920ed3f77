//! Every published assertion about the t = 4 construction that can be checked
//! mechanically, one record each.

use std::io::Write;

use fiverank::exact::{int_mod, rat_int, Rational};
use fiverank::family::{identity_suite, MestreSpecialization};
use fiverank::sieve::{check_integer, node_exception_at_29, radicand_sign, singular_abscissa, Direction, Sieve};
use fiverank::splitting::{pairwise_distinct_fields, verify_instance, FieldCertificate, PrimeSplitting};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::commands::{summary, write_record, CheckRecord, Outcome, SCHEMA};
use crate::config::RunConfig;

/// Admissible z per side for the extension claim.
pub const EXTENSION_SAMPLE: usize = 50;
/// Admissible z for the splitting and distinctness claims.
pub const SPLITTING_SAMPLE: usize = 20;
/// Near-zero parameters per side for the sign claim.
pub const SIGN_SAMPLE: usize = 10;

struct Checks(Vec<CheckRecord>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckRecord { record: "claim", schema: SCHEMA, name: name.into(), passed, detail: detail.into() });
    }
}

fn list(zs: &[&BigInt]) -> String {
    zs.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn paper_check(cfg: &RunConfig, spec: &MestreSpecialization, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let c = &spec.constants;
    let mut checks = Checks(Vec::new());

    for id in identity_suite(c) {
        checks.push(format!("identity/{}", id.name), id.passed, id.detail);
    }

    for i in 0..3 {
        let e = spec.e_curves[i].minimal_model(cfg.trial_bound)?.is_semistable(cfg.trial_bound)?;
        let f = spec.f_minimal[i].is_semistable(cfg.trial_bound)?;
        checks.push(format!("semistable/{}", i + 1), e && f, format!("E semistable: {e}, F semistable: {f}"));
    }

    for i in 0..3 {
        let crit = &c.criteria[i];
        let mut expected = crit.valuation_primes.clone();
        expected.push(crit.node_prime);
        expected.sort_unstable();
        let got = &spec.five_component_primes[i];
        checks.push(format!("five_component_primes/{}", i + 1), *got == expected, format!("{got:?}, expected {expected:?}"));
        let node = singular_abscissa(spec, i, crit.node_prime);
        let ok = node.as_ref().is_ok_and(|&x| x == crit.node_residue);
        let detail = match node {
            Ok(x) => format!("node at x = {x} mod {}, expected {}", crit.node_prime, crit.node_residue),
            Err(e) => e.to_string(),
        };
        checks.push(format!("singular_abscissa/{}", i + 1), ok, detail);
    }

    let sieve = Sieve::new(c)?;
    let zero = BigInt::from(0);
    let mut sample: Vec<BigInt> = sieve.admissible(&zero, Direction::Positive).take(EXTENSION_SAMPLE).collect();
    sample.extend(sieve.admissible(&zero, Direction::Negative).take(EXTENSION_SAMPLE));

    let zero_modulus: u64 = c.zero_primes.iter().product();
    let split_modulus: u64 = c.split_primes.iter().product();
    let congruent = sample.iter().all(|z| {
        let r = int_mod(z, c.excluded_prime);
        int_mod(z, zero_modulus) == 0
            && int_mod(z, split_modulus) == 1
            && r != c.excluded_residue
            && r != c.excluded_prime - c.excluded_residue
    });
    checks.push(
        "parameter_congruences",
        congruent,
        format!("{} generated z, modulus {}", sample.len(), sieve.modulus()),
    );

    let reports = sample.par_iter().map(|z| check_integer(spec, z)).collect::<Result<Vec<_>, _>>()?;
    let failing: Vec<&BigInt> = sample.iter().zip(&reports).filter(|(_, r)| !r.pass).map(|(z, _)| z).collect();
    let detail = if failing.is_empty() {
        format!("all {} z extend on every curve", sample.len())
    } else {
        let in_class = failing.iter().filter(|z| node_exception_at_29(z)).count();
        format!(
            "{} of {} z fail, {in_class} of them with 29 || z and z/29 = 6 or 10 mod 29: {}",
            failing.len(),
            sample.len(),
            list(&failing)
        )
    };
    checks.push("congruences_imply_extension", failing.is_empty(), detail);
    let disagree: Vec<&BigInt> = sample.iter().zip(&reports).filter(|(_, r)| !r.rules_agree).map(|(z, _)| z).collect();
    checks.push(
        "published_rule_matches_node_rule",
        disagree.is_empty(),
        format!("{} disagreements among {} z", disagree.len(), sample.len()),
    );

    let first: Vec<Rational> = sample[..SPLITTING_SAMPLE].iter().cloned().map(rat_int).collect();
    let certs: Vec<_> = first.par_iter().map(|z| verify_instance(spec, z)).collect();
    let bad = |pred: &dyn Fn(&FieldCertificate) -> bool| -> Vec<String> {
        certs.iter().filter(|c| !pred(c)).map(|c| c.z.clone()).collect()
    };
    let not_split = bad(&|c| c.pattern.as_ref().is_some_and(|p| p.in_k == [PrimeSplitting::Split; 3]));
    checks.push("split_primes_split_in_k", not_split.is_empty(), format!("{} exceptions among {}", not_split.len(), certs.len()));
    let wrong = bad(&|c| c.pattern_matches_expected);
    checks.push("splitting_pattern", wrong.is_empty(), format!("{} mismatches among {}", wrong.len(), certs.len()));
    let dependent = bad(&|c| c.independent);
    checks.push("independent_extensions", dependent.is_empty(), format!("{} failures among {}", dependent.len(), certs.len()));

    let radicands: Vec<Rational> = first.iter().map(|z| spec.radicand(z)).collect::<Result<_, _>>()?;
    checks.push(
        "distinct_fields",
        pairwise_distinct_fields(&radicands),
        format!("{} radicands", radicands.len()),
    );

    let mut sign_ok = true;
    let mut seen = Vec::new();
    for (dir, want) in [(Direction::Positive, -1), (Direction::Negative, 1)] {
        for z in sieve.admissible(&zero, dir).take(SIGN_SAMPLE) {
            let q = sieve.near_zero(&z);
            let s = radicand_sign(spec, &q)?;
            sign_ok &= s == want;
            seen.push(s);
        }
    }
    checks.push(
        "sign_near_zero",
        sign_ok,
        format!("radicand signs {seen:?}; small positive z imaginary, small negative z real"),
    );

    let failed = checks.0.iter().filter(|r| !r.passed).count();
    for r in &checks.0 {
        write_record(out, r)?;
    }
    summary(out, "paper-check", checks.0.len(), failed)
}
