//! Acceptance criteria 1-11, one line each. Runs without the libtest harness
//! so the lines are always printed; exits nonzero if any criterion fails in
//! an unexpected way.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fiverank::classgroup::{
    class_number, compose, enumerate_reduced, group_structure, oracle_instances, p_torsion_count,
    BinaryQuadraticForm, OracleBudget, OracleStatus,
};
use fiverank::curves::CurvePoint;
use fiverank::exact::{rat, rat_int, Rational};
use fiverank::family::{
    identity_suite, isomorphic_without_twist, kubert_isogeny, kubert_kernel, kubert_torsion_point, quotient_curve,
    Constants, MestreSpecialization,
};
use fiverank::isogeny::{division_polynomial_five, dual_isogeny};
use fiverank::sieve::{check_integer, node_exception_at_29, radicand_sign, singular_abscissa, Direction, Sieve};
use fiverank::splitting::{pairwise_distinct_fields, verify_instance, PrimeSplitting};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    /// fails, exactly in the way recorded in the project notes
    KnownFail,
}

struct Verdict {
    status: Status,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

fn within(v: Verdict, start: Instant, limit: Duration) -> Verdict {
    within_after(v, start, Duration::ZERO, limit)
}

/// Like [`within`], counting `earlier` work done on the criterion's behalf.
fn within_after(v: Verdict, start: Instant, earlier: Duration, limit: Duration) -> Verdict {
    let took = start.elapsed() + earlier;
    if took > limit {
        return Verdict { status: Status::Fail, detail: format!("{} (took {took:.1?}, limit {limit:?})", v.detail) };
    }
    Verdict { detail: format!("{} [{took:.1?}]", v.detail), ..v }
}

fn random_u(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let (a, b) = (rng.gen_range(-20i64..=20), rng.gen_range(1i64..=20));
        let u = rat(a, b);
        if quotient_curve(&u).is_ok() && kubert_isogeny(&u).is_ok() {
            return u;
        }
    }
}

fn identities() -> Verdict {
    let start = Instant::now();
    let checks = identity_suite(&Constants::paper());
    let required = ["triple_common_value", "curve_c_v", "curve_c_w", "f_square_multiple_of_g_u1"];
    let missing: Vec<_> = required.iter().filter(|n| !checks.iter().any(|c| c.name == **n)).collect();
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    let v = verdict(
        missing.is_empty() && failed.is_empty(),
        format!("{} exact identities, failed {failed:?}, missing {missing:?}", checks.len()),
    );
    within(v, start, Duration::from_secs(10))
}

fn velu_matches_quotient() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let u = random_u(&mut rng);
        let phi = kubert_isogeny(&u).unwrap();
        let g = quotient_curve(&u).unwrap().weierstrass();
        if !(phi.maps_onto_codomain() && isomorphic_without_twist(&phi.codomain, &g)) {
            bad.push(u.to_string());
        }
    }
    within(verdict(bad.is_empty(), format!("50 random u, mismatches {bad:?}")), start, Duration::from_secs(60))
}

fn kernel_and_dual() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut us: Vec<Rational> = (0..5).map(|_| random_u(&mut rng)).collect();
    us.extend([rat(19, 21), rat(-29, 21), rat(-11, 21)]);
    let mut problems = Vec::new();
    let mut points = 0;
    for u in &us {
        let phi = kubert_isogeny(u).unwrap();
        let e = &phi.domain;
        let k = kubert_kernel(u);
        let psi = division_polynomial_five(e);
        let q = e.mul(2, &kubert_torsion_point(u)).unwrap();
        let order_five = !q.is_infinity() && e.mul(5, &q).unwrap() == CurvePoint::Infinity;
        let root = q.x().is_some_and(|x| k.eval(x).is_zero());
        if k.degree() != Some(2) || !psi.rem(&k).is_zero() || !order_five || !root {
            problems.push(format!("kernel at u = {u}"));
            continue;
        }
        let Ok(dual) = dual_isogeny(&phi) else {
            problems.push(format!("no dual at u = {u}"));
            continue;
        };
        let mut n = 0;
        while n < 20 {
            let x = rat(rng.gen_range(-60..=60), rng.gen_range(1..=9));
            let Some(y) = phi.map_x(&x) else { continue };
            let Some(x5) = e.x_of_multiple(&x, 5) else { continue };
            n += 1;
            if dual.map_x(&y) != Some(x5) {
                problems.push(format!("dual composite at u = {u}, x = {x}"));
            }
        }
        points += n;
    }
    verdict(problems.is_empty(), format!("{} curves, {points} points, problems {problems:?}", us.len()))
}

fn reduction_data(spec: &MestreSpecialization, setup: Duration) -> Verdict {
    let start = Instant::now();
    let expected: [(Vec<u64>, u64, u64); 3] = [(vec![11, 29, 419], 419, 77), (vec![11, 19, 709], 709, 677), (vec![19, 29, 151], 151, 36)];
    let mut problems = Vec::new();
    for (i, (primes, p, x)) in expected.iter().enumerate() {
        let m = &spec.f_minimal[i];
        if !m.is_semistable(fiverank::curves::DEFAULT_TRIAL_BOUND).unwrap_or(false) {
            problems.push(format!("F{} not semistable", i + 1));
        }
        if &spec.five_component_primes[i] != primes {
            problems.push(format!("F{} primes {:?}", i + 1, spec.five_component_primes[i]));
        }
        match singular_abscissa(spec, i, *p) {
            Ok(a) if a == *x => {}
            other => problems.push(format!("F{} node {other:?}", i + 1)),
        }
    }
    within_after(verdict(problems.is_empty(), format!("problems {problems:?}")), start, setup, Duration::from_secs(30))
}

fn sieve_soundness(spec: &MestreSpecialization) -> Verdict {
    let start = Instant::now();
    let sieve = Sieve::new(&spec.constants).unwrap();
    let zero = BigInt::zero();
    let mut zs: Vec<BigInt> = sieve.admissible(&zero, Direction::Positive).take(50).collect();
    zs.extend(sieve.admissible(&zero, Direction::Negative).take(50));
    let reports: Vec<_> = zs.iter().map(|z| check_integer(spec, z).unwrap()).collect();
    let agree = reports.iter().filter(|r| r.rules_agree).count();
    let failing: Vec<&BigInt> = zs.iter().zip(&reports).filter(|(_, r)| !r.pass).map(|(z, _)| z).collect();
    let only_29 = reports
        .iter()
        .filter(|r| !r.pass)
        .all(|r| r.records.iter().filter(|c| !c.pass).all(|c| c.prime == 29 && (c.curve == 1 || c.curve == 3)));
    let explained = failing.iter().all(|z| node_exception_at_29(z)) && only_29;
    let detail = format!(
        "{} of {} z pass on all curves, rules agree on {agree}; failing z {:?}",
        zs.len() - failing.len(),
        zs.len(),
        failing.iter().map(|z| z.to_string()).collect::<Vec<_>>()
    );
    let status = if agree < zs.len() {
        Status::Fail
    } else if failing.is_empty() {
        Status::Pass
    } else if explained {
        Status::KnownFail
    } else {
        Status::Fail
    };
    within(Verdict { status, detail }, start, Duration::from_secs(600))
}

fn first_certificates(spec: &MestreSpecialization) -> Vec<fiverank::splitting::FieldCertificate> {
    let sieve = Sieve::new(&spec.constants).unwrap();
    sieve
        .admissible(&BigInt::zero(), Direction::Positive)
        .take(20)
        .map(|z| verify_instance(spec, &rat_int(z)))
        .collect()
}

fn splitting(certs: &[fiverank::splitting::FieldCertificate], setup: Duration) -> Verdict {
    let start = Instant::now();
    let bad: Vec<_> = certs
        .iter()
        .filter(|c| {
            !(c.pattern_matches_expected
                && c.independent
                && c.pattern.as_ref().is_some_and(|p| p.in_k == [PrimeSplitting::Split; 3]))
        })
        .map(|c| c.z.clone())
        .collect();
    let v = verdict(bad.is_empty(), format!("{} certificates, exceptions {bad:?}", certs.len()));
    within_after(v, start, setup, Duration::from_secs(600))
}

fn sign_dichotomy(spec: &MestreSpecialization) -> Verdict {
    let sieve = Sieve::new(&spec.constants).unwrap();
    let mut bad = Vec::new();
    for (dir, want) in [(Direction::Positive, -1), (Direction::Negative, 1)] {
        for z in sieve.admissible(&BigInt::zero(), dir).take(10) {
            let q = sieve.near_zero(&z);
            let admissible_residues = check_integer(spec, &z).unwrap().records.iter().filter(|r| r.curve == 0).all(|r| r.pass);
            if radicand_sign(spec, &q).unwrap() != want || !admissible_residues {
                bad.push(z.to_string());
            }
        }
    }
    verdict(bad.is_empty(), format!("10 + 10 near-zero parameters, exceptions {bad:?}"))
}

fn distinct(spec: &MestreSpecialization, certs: &[fiverank::splitting::FieldCertificate]) -> Verdict {
    let radicands: Vec<Rational> = certs
        .iter()
        .map(|c| spec.radicand(&fiverank::exact::parse_rational(&c.z).unwrap()).unwrap())
        .collect();
    verdict(pairwise_distinct_fields(&radicands), format!("{} radicands", radicands.len()))
}

fn class_groups() -> Verdict {
    let bound = 100_000;
    let mut problems = Vec::new();
    for (d, h) in [(-4, 1), (-23, 3), (-47, 5)] {
        if class_number(d, bound).ok() != Some(h) {
            problems.push(format!("h({d})"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut tested = 0;
    while tested < 20 {
        let d = -rng.gen_range(3i64..=100_000);
        if !matches!(d.rem_euclid(4), 0 | 1) {
            continue;
        }
        tested += 1;
        let forms = enumerate_reduced(d, bound).unwrap();
        let one = BinaryQuadraticForm::principal(d).unwrap();
        let mul = |f: &BinaryQuadraticForm, g: &BinaryQuadraticForm| compose(f, g).unwrap();
        // every triple when the group is small, otherwise three fixed third factors
        let thirds: Vec<_> = if forms.len() <= 40 { forms.clone() } else { (0..3).map(|_| forms[rng.gen_range(0..forms.len())]).collect() };
        for f in &forms {
            if mul(f, &one) != *f || mul(f, &f.inverse()) != one {
                problems.push(format!("identity or inverse at D = {d}"));
            }
            for g in &forms {
                let fg = mul(f, g);
                if fg != mul(g, f) || !forms.contains(&fg) {
                    problems.push(format!("closure at D = {d}"));
                }
                for k in &thirds {
                    if mul(&fg, k) != mul(f, &mul(g, k)) {
                        problems.push(format!("associativity at D = {d}"));
                    }
                }
            }
        }
        let s = group_structure(d, bound).unwrap();
        for p in [2u64, 3, 5] {
            if p.pow(s.p_rank(p) as u32) != p_torsion_count(d, p, bound).unwrap() {
                problems.push(format!("{p}-rank at D = {d}"));
            }
        }
    }
    problems.dedup();
    verdict(problems.is_empty(), format!("golden h, 20 random D, problems {problems:?}"))
}

fn oracle() -> Verdict {
    let start = Instant::now();
    let verdicts = oracle_instances(25, 5, &OracleBudget::default());
    let pass = verdicts.iter().filter(|v| v.status == OracleStatus::Pass).count();
    let fail = verdicts.iter().filter(|v| v.status == OracleStatus::Fail).count();
    let in_scope = verdicts.iter().all(|v| {
        v.discriminant.is_some_and(|d| d < 0 && d.unsigned_abs() <= 10_000_000) && v.inert_prime.is_some()
    });
    within(
        verdict(pass >= 20 && fail == 0 && in_scope, format!("{pass} pass, {fail} fail")),
        start,
        Duration::from_secs(1800),
    )
}

fn determinism() -> Verdict {
    let run = || Command::new(env!("CARGO_BIN_EXE_fiverank")).arg("paper-check").output().unwrap().stdout;
    let (a, b) = (run(), run());
    verdict(!a.is_empty() && a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let spec = MestreSpecialization::paper().expect("t = 4 specialization");
    let spec_time = start.elapsed();
    let start = Instant::now();
    let certs = first_certificates(&spec);
    let certs_time = start.elapsed();
    let results = [
        ("symbolic identities", identities()),
        ("Velu quotient is y^2 = g_u(x)", velu_matches_quotient()),
        ("kernel and dual isogeny", kernel_and_dual()),
        ("reduction data at t = 4", reduction_data(&spec, spec_time)),
        ("sieve soundness", sieve_soundness(&spec)),
        ("splitting pattern", splitting(&certs, certs_time)),
        ("sign dichotomy", sign_dichotomy(&spec)),
        ("distinct fields", distinct(&spec, &certs)),
        ("class group oracle", class_groups()),
        ("single-curve 5 | h", oracle()),
        ("determinism", determinism()),
    ];
    let mut unexpected = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        let tag = match v.status {
            Status::Pass => "PASS",
            Status::Fail => {
                unexpected += 1;
                "FAIL"
            }
            Status::KnownFail => "FAIL (known counterexample class, 29 || z with z/29 = 6 or 10 mod 29)",
        };
        println!("criterion {:>2} {tag}: {name}: {}", i + 1, v.detail);
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
