//! The t = 4 specialization against values computed independently with PARI/GP.

use fiverank::curves::curve_from_json;
use fiverank::exact::{format_rational, Rational};
use fiverank::family::{identity_suite, Constants, MestreSpecialization};
use fiverank::sieve::singular_abscissa;

/// ellminimalmodel of y^2 = g_u(x) scaled to X = A x, and the minimal discriminant.
const MINIMAL: [([&str; 5], &str); 3] = [
    (
        ["1", "0", "0", "-113554205995285", "-115699721834513904175"],
        "87927865789170920572844561868338250462320400",
    ),
    (
        ["1", "0", "0", "-5976923669418505", "-177346438907896256185975"],
        "77949094584482955730188671307720786570832410000",
    ),
    (
        ["1", "0", "0", "-242322089957275", "-1451534174609566377775"],
        "462721225045994506032640525037773724678400",
    ),
];

#[test]
fn minimal_models_of_quotients() {
    let spec = MestreSpecialization::paper().unwrap();
    for (i, (coeffs, disc)) in MINIMAL.iter().enumerate() {
        let m = &spec.f_minimal[i];
        assert_eq!(m.curve, curve_from_json(&coeffs.map(String::from)).unwrap());
        assert_eq!(m.discriminant.to_string(), *disc);
        assert!(m.is_semistable(10_000_000).unwrap());
    }
}

#[test]
fn five_component_primes_and_nodes() {
    let spec = MestreSpecialization::paper().unwrap();
    let expected: [(&[u64], u64, u64); 3] = [(&[11, 29, 419], 419, 77), (&[11, 19, 709], 709, 677), (&[19, 29, 151], 151, 36)];
    for (i, (s, p, x)) in expected.iter().enumerate() {
        assert_eq!(spec.five_component_primes[i], *s);
        assert_eq!(singular_abscissa(&spec, i, *p).unwrap(), *x);
        for info in spec.f_minimal[i].reduction_data(10_000_000).unwrap() {
            assert_eq!(s.contains(&info.prime), info.component_count % 5 == 0);
        }
    }
}

#[test]
fn hyperelliptic_scale() {
    let spec = MestreSpecialization::paper().unwrap();
    // 21^5 / 2
    assert_eq!(format_rational(&spec.scale), "4084101/2");
    let ratio = &spec.f_model.coeff(3) / &spec.quotients[0].cubic().coeff(3);
    assert_eq!(ratio, Rational::new(4084101.into(), 2.into()).pow(2));
}

#[test]
fn identity_suite_and_dump() {
    let checks = identity_suite(&Constants::paper());
    assert!(checks.iter().all(|c| c.passed));
    let dump = MestreSpecialization::paper().unwrap().dump().unwrap();
    assert_eq!(dump.constants, Constants::paper());
    assert_eq!(dump.curves[1].five_component_primes, vec![11, 19, 709]);
    let text = serde_json::to_string(&dump).unwrap();
    assert!(text.contains("\"record\":\"specialization\""));
}
