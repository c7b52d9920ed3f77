use fiverank::exact::rat_int;
use fiverank::family::MestreSpecialization;
use fiverank::sieve::{check_integer, node_exception_at_29, Rule, Sieve};
use fiverank::splitting::verify_instance;
use num_bigint::BigInt;
use once_cell::sync::Lazy;
use proptest::prelude::*;

static SPEC: Lazy<MestreSpecialization> = Lazy::new(|| MestreSpecialization::paper().unwrap());

#[test]
fn parameter_congruences_miss_a_subclass_at_29() {
    // admissible, 29 || z, z/29 = 6 mod 29; PARI gives v_29(x(z)) = 0 and
    // x = 3 mod 29 on the minimal F_1, which is its node
    let z: BigInt = "-654394609973644664234".parse().unwrap();
    let sieve = Sieve::new(&SPEC.constants).unwrap();
    assert!(sieve.is_admissible(&z) && node_exception_at_29(&z));
    let report = check_integer(&SPEC, &z).unwrap();
    assert!(!report.pass && report.rules_agree);
    let mut failed: Vec<_> = report.records.iter().filter(|r| !r.pass).map(|r| (r.curve, r.rule, r.prime)).collect();
    failed.sort_by_key(|&(c, r, p)| (c, r == Rule::General, p));
    assert_eq!(
        failed,
        vec![(1, Rule::Verbatim, 29), (1, Rule::General, 29), (3, Rule::Verbatim, 29), (3, Rule::General, 29)]
    );
    let cert = verify_instance(&SPEC, &rat_int(z));
    assert!(!cert.conclusion && cert.pattern_matches_expected && cert.independent);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn admissible_z_fails_only_on_the_29_subclass(k in -1_000_000_000i64..1_000_000_000) {
        let sieve = Sieve::new(&SPEC.constants).unwrap();
        let z = sieve.residue() + sieve.modulus() * BigInt::from(k);
        prop_assume!(sieve.is_admissible(&z));
        let report = check_integer(&SPEC, &z).unwrap();
        prop_assert!(report.rules_agree);
        prop_assert_eq!(report.pass, !node_exception_at_29(&z));
        let cert = verify_instance(&SPEC, &rat_int(z));
        prop_assert!(cert.pattern_matches_expected && cert.independent);
        prop_assert_eq!(cert.conclusion, report.pass, "{:?}", cert.failures);
    }

    #[test]
    fn exceptional_subclass_always_fails(k in -1_000_000_000i64..1_000_000_000) {
        let sieve = Sieve::new(&SPEC.constants).unwrap();
        // step along the progression until z lands in the exceptional class
        let base = sieve.residue() + sieve.modulus() * BigInt::from(k) * BigInt::from(29);
        let z = (0..29i64).map(|j| &base + sieve.modulus() * BigInt::from(j)).find(node_exception_at_29).unwrap();
        prop_assume!(sieve.is_admissible(&z));
        let report = check_integer(&SPEC, &z).unwrap();
        prop_assert!(!report.pass && report.rules_agree);
    }

    #[test]
    fn rules_agree_off_the_class(z in any::<i64>()) {
        // arbitrary integers mostly fail the parameter congruences, but the
        // two extension rules must still reach the same verdict
        if let Ok(report) = check_integer(&SPEC, &BigInt::from(z)) {
            prop_assert!(report.rules_agree, "{report:?}");
        }
    }
}
