use std::io::Write;
use std::path::Path;

use anyhow::Context;
use fiverank::classgroup::{
    curve_instances, group_structure, oracle_parameters, OracleBudget, OracleStatus, ORACLE_PARAMETER_LIMIT,
};
use fiverank::exact::{parse_rational, rat_int, Rational};
use fiverank::family::{identity_suite, Constants, MestreSpecialization};
use fiverank::sieve::{check_integer, Direction, Sieve};
use fiverank::splitting::verify_instance;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, Sign};

pub const SCHEMA: u32 = 1;

/// Whether a command's checks all held. Errors are reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Outcome::Success
        } else {
            Outcome::Failure
        }
    }
}

pub fn write_record<T: Serialize>(out: &mut dyn Write, record: &T) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[derive(Serialize)]
pub struct ErrorRecord<'a> {
    pub record: &'static str,
    pub schema: u32,
    pub command: &'a str,
    pub message: String,
}

impl<'a> ErrorRecord<'a> {
    pub fn new(command: &'a str, message: String) -> Self {
        ErrorRecord { record: "error", schema: SCHEMA, command, message }
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    record: &'static str,
    schema: u32,
    command: &'a str,
    total: usize,
    failed: usize,
}

pub(crate) fn summary(out: &mut dyn Write, command: &str, total: usize, failed: usize) -> anyhow::Result<Outcome> {
    write_record(out, &Summary { record: "summary", schema: SCHEMA, command, total, failed })?;
    Ok(Outcome::from_ok(failed == 0))
}

/// A named yes/no check with a human-readable detail.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub record: &'static str,
    pub schema: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check_record(record: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckRecord {
    CheckRecord { record, schema: SCHEMA, name: name.into(), passed, detail: detail.into() }
}

/// Maps `f` over `items` on the pool, writing each chunk's results in input
/// order as soon as the chunk is done.
fn stream_ordered<T, R, F>(
    out: &mut dyn Write,
    items: &[T],
    chunk: usize,
    f: F,
) -> anyhow::Result<Vec<R>>
where
    T: Sync,
    R: Send + Serialize,
    F: Fn(&T) -> R + Sync,
{
    let mut all = Vec::with_capacity(items.len());
    for part in items.chunks(chunk.max(1)) {
        let results: Vec<R> = part.par_iter().map(&f).collect();
        for r in &results {
            write_record(out, r)?;
        }
        out.flush()?;
        all.extend(results);
    }
    Ok(all)
}

fn chunk_size(cfg: &RunConfig) -> usize {
    cfg.workers * 4
}

/// Runs the identity suite and, if every identity holds, writes the
/// specialization dump to `emit`.
pub fn derive(constants: &Constants, emit: &Path, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let checks = identity_suite(constants);
    for c in &checks {
        write_record(out, &check_record("identity", &c.name, c.passed, &c.detail))?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        write_record(out, &ErrorRecord::new("derive", format!("identity failed: {}", failed.join(", "))))?;
        return summary(out, "derive", checks.len(), failed.len());
    }
    let spec = MestreSpecialization::new(constants)?;
    let dump = spec.dump()?;
    let text = serde_json::to_string_pretty(&dump)? + "\n";
    std::fs::write(emit, text).with_context(|| format!("writing {}", emit.display()))?;
    summary(out, "derive", checks.len(), 0)
}

/// The first `count` admissible integers with |z| >= `start`.
pub fn admissible_list(sieve: &Sieve, start: &BigInt, count: usize, sign: Sign) -> Vec<BigInt> {
    match sign {
        Sign::Pos => sieve.admissible(start, Direction::Positive).take(count).collect(),
        Sign::Neg => sieve.admissible(start, Direction::Negative).take(count).collect(),
        Sign::Both => sieve.admissible_both(start, count),
    }
}

fn sieve_start(cfg: &RunConfig) -> anyhow::Result<BigInt> {
    cfg.sieve.start.parse().context("sieve start")
}

/// One SieveReport per admissible z.
pub fn sieve(cfg: &RunConfig, spec: &MestreSpecialization, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let s = Sieve::new(&spec.constants)?;
    let zs = admissible_list(&s, &sieve_start(cfg)?, cfg.sieve.count, cfg.sieve.sign);
    let reports = zs.par_iter().map(|z| check_integer(spec, z)).collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        write_record(out, r)?;
    }
    Ok(Outcome::Success)
}

/// Certificates for an explicit z, or for the first `batch` admissible z.
/// Fails if any certificate does not reach its conclusion.
pub fn verify(
    cfg: &RunConfig,
    spec: &MestreSpecialization,
    z: Option<&str>,
    batch: Option<usize>,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let zs: Vec<Rational> = match (z, batch) {
        (Some(z), _) => vec![parse_rational(z)?],
        (None, n) => {
            let s = Sieve::new(&spec.constants)?;
            let n = n.unwrap_or(cfg.sieve.count);
            admissible_list(&s, &sieve_start(cfg)?, n, cfg.sieve.sign).into_iter().map(rat_int).collect()
        }
    };
    let certs = stream_ordered(out, &zs, chunk_size(cfg), |z| verify_instance(spec, z))?;
    Ok(Outcome::from_ok(certs.iter().all(|c| c.conclusion)))
}

#[derive(Serialize)]
struct PRank {
    prime: u64,
    rank: usize,
}

#[derive(Serialize)]
struct ClassGroupRecord {
    record: &'static str,
    schema: u32,
    discriminant: i64,
    class_number: u64,
    invariants: Vec<u64>,
    p_ranks: Vec<PRank>,
}

/// Class number, invariant factors, and p-ranks at 5 and at every prime
/// dividing h.
pub fn classgroup(cfg: &RunConfig, disc: i64, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let s = group_structure(disc, cfg.disc_bound)?;
    let mut primes = vec![5];
    let (mut h, mut p) = (s.class_number, 2);
    while h > 1 {
        if h % p == 0 {
            primes.push(p);
            while h % p == 0 {
                h /= p;
            }
        }
        p += 1;
    }
    primes.sort_unstable();
    primes.dedup();
    let p_ranks = primes.iter().map(|&p| PRank { prime: p, rank: s.p_rank(p) }).collect();
    write_record(
        out,
        &ClassGroupRecord {
            record: "classgroup",
            schema: SCHEMA,
            discriminant: s.discriminant,
            class_number: s.class_number,
            invariants: s.invariants,
            p_ranks,
        },
    )?;
    Ok(Outcome::Success)
}

/// Small single-curve instances, scanned a few parameters at a time in
/// parallel; the output matches the sequential scan.
pub fn oracle(cfg: &RunConfig, count: usize, per_curve: usize, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let budget = OracleBudget { trial_bound: cfg.trial_bound, disc_bound: cfg.disc_bound, ..OracleBudget::default() };
    let params: Vec<Rational> = oracle_parameters().take(ORACLE_PARAMETER_LIMIT).collect();
    let mut verdicts = Vec::new();
    for part in params.chunks(cfg.workers.max(1)) {
        if verdicts.len() >= count {
            break;
        }
        let found: Vec<_> = part.par_iter().map(|u| curve_instances(u, per_curve, &budget)).collect();
        verdicts.extend(found.into_iter().flatten());
    }
    verdicts.truncate(count);
    for v in &verdicts {
        write_record(out, v)?;
    }
    let failed = verdicts.iter().filter(|v| v.status == OracleStatus::Fail).count();
    if failed > 0 {
        write_record(out, &ErrorRecord::new("oracle", format!("{failed} instances with 5 not dividing h")))?;
    }
    summary(out, "oracle", verdicts.len(), failed)
}

