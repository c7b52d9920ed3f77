//! Minimal models and local reduction data compared against values computed
//! independently with PARI/GP (ellminimalmodel, elllocalred, ellap) for curves
//! obtained from random integral curves by random changes of variables.

use fiverank::curves::{ReductionKind, WeierstrassCurve};
use fiverank::exact::{parse_rational, rat, rational_mod};
use fiverank::Error;
use num_bigint::BigInt;

struct Case {
    input: [&'static str; 5],
    minimal: [i64; 5],
    discriminant: i64,
    /// (p, conductor exponent, Kodaira code, Tamagawa number, a_p);
    /// Kodaira code 4 + n means I_n.
    local: &'static [(u64, u32, i32, u32, i32)],
}

const CASES: &[Case] = &[
    Case {
        input: ["-210", "1225", "257250", "109545625", "-112134203125"],
        minimal: [0, 1, 0, 22, -154],
        discriminant: -11884928,
        local: &[(2, 7, 2, 1, 0), (11, 1, 5, 1, 1), (23, 1, 5, 1, 1), (367, 1, 5, 1, 1)],
    },
    Case {
        input: ["0", "54", "-270", "324", "-18954"],
        minimal: [0, 0, 0, -8, 7],
        discriminant: 11600,
        local: &[(2, 4, 2, 1, 0), (5, 1, 6, 2, -1), (29, 1, 5, 1, 1)],
    },
    Case {
        input: ["-12", "-56", "56", "-48", "10880"],
        minimal: [0, 1, 1, -32, 122],
        discriminant: -5477211,
        local: &[(3, 1, 6, 2, 1), (43, 1, 5, 1, -1), (14153, 1, 5, 1, -1)],
    },
    Case {
        input: ["12", "-540", "1944", "62208", "-10031040"],
        minimal: [0, 1, 1, -8, -135],
        discriminant: -7491187,
        local: &[(11, 1, 5, 1, 1), (19, 1, 5, 1, 1), (73, 1, 5, 1, -1), (491, 1, 5, 1, -1)],
    },
    Case {
        input: ["40", "0", "6000", "-560000", "-25000000"],
        minimal: [0, 1, 0, -49, 31],
        discriminant: 6713344,
        local: &[(2, 5, -7, 2, 0), (11, 1, 5, 1, -1), (149, 1, 5, 1, -1)],
    },
    Case {
        input: ["84", "-2160", "-12096", "476928", "277696512"],
        minimal: [1, 0, 0, -4, 102],
        discriminant: -4519894,
        local: &[(2, 1, 5, 1, 1), (107, 1, 5, 1, 1), (21121, 1, 5, 1, 1)],
    },
    Case {
        input: ["-35", "11025", "471625", "-28511875", "-25735718750"],
        minimal: [1, 0, 0, -53, 146],
        discriminant: -234857,
        local: &[(7, 1, 6, 2, -1), (4793, 1, 5, 1, -1)],
    },
    Case {
        input: ["-45", "-486", "8019", "118098", "-82373355"],
        minimal: [1, 0, 1, -10, -125],
        discriminant: -6582611,
        local: &[(7, 1, 6, 2, 1), (134339, 1, 5, 1, 1)],
    },
    Case {
        input: ["63", "243", "6561", "367416", "58458510"],
        minimal: [1, 0, 0, 10, -51],
        discriminant: -1224201,
        local: &[(3, 1, 5, 1, 1), (11, 1, 5, 1, 1), (37097, 1, 5, 1, 1)],
    },
    Case {
        input: ["10", "-24", "56", "624", "-8448"],
        minimal: [1, 0, 1, 56, -120],
        discriminant: -18221914,
        local: &[(2, 1, 5, 1, -1), (59, 1, 5, 1, 1), (154423, 1, 5, 1, -1)],
    },
    Case {
        input: ["-2", "36", "-24", "0", "8832"],
        minimal: [1, 0, 0, -27, 192],
        discriminant: -15038247,
        local: &[(3, 1, 5, 1, 1), (7, 1, 6, 2, 1), (102301, 1, 5, 1, -1)],
    },
    Case {
        input: ["10", "0", "5000", "-580000", "-150000000"],
        minimal: [1, 0, 1, -56, -144],
        discriminant: 2591822,
        local: &[(2, 1, 5, 1, -1), (229, 1, 5, 1, -1), (5659, 1, 5, 1, 1)],
    },
    Case {
        input: ["-4", "112", "320", "2560", "241664"],
        minimal: [1, 1, 1, -10, 71],
        discriminant: -2388528,
        local: &[(2, 1, 8, 4, 1), (3, 1, 8, 2, -1), (19, 1, 5, 1, 1), (97, 1, 5, 1, 1)],
    },
    Case {
        input: ["24", "-288", "-864", "-24624", "-3032640"],
        minimal: [0, -1, 0, -32, -91],
        discriminant: -2308336,
        local: &[(2, 3, 3, 2, 0), (144271, 1, 5, 1, -1)],
    },
];

fn build(c: &Case) -> WeierstrassCurve {
    let a: Vec<_> = c.input.iter().map(|s| parse_rational(s).unwrap()).collect();
    WeierstrassCurve::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone()).unwrap()
}

#[test]
fn minimal_models_match_reference() {
    for c in CASES {
        let e = build(c);
        let m = e.minimal_model(1_000_000).unwrap();
        let expected: Vec<_> = c.minimal.iter().map(|&a| rat(a, 1)).collect();
        assert_eq!(m.curve.coefficients().to_vec(), expected, "input {:?}", c.input);
        assert_eq!(m.discriminant, BigInt::from(c.discriminant));
        assert_eq!(e.transform(&m.transform), m.curve);
    }
}

#[test]
fn local_data_matches_reference() {
    for c in CASES {
        let m = build(c).minimal_model(1_000_000).unwrap();
        let bad = m.bad_primes(1_000_000).unwrap();
        assert_eq!(bad, c.local.iter().map(|l| l.0).collect::<Vec<_>>());
        for &(p, f, kodaira, tamagawa, ap) in c.local {
            let got = m.reduction_at(p);
            if f >= 2 {
                assert_eq!(got, Err(Error::UnsupportedReduction { prime: p }));
                continue;
            }
            let info = got.unwrap();
            let n = (kodaira - 4) as u32;
            assert_eq!(info.discriminant_valuation, n);
            assert_eq!(info.component_count, n);
            assert_eq!(info.tamagawa, tamagawa, "p = {p}");
            let kind = if ap == 1 {
                ReductionKind::SplitMultiplicative
            } else {
                ReductionKind::NonsplitMultiplicative
            };
            assert_eq!(info.kind, kind, "p = {p}");
        }
        let semistable = c.local.iter().all(|l| l.1 == 1);
        assert_eq!(m.is_semistable(1_000_000).unwrap(), semistable);
    }
}

#[test]
fn node_abscissa_is_singular() {
    for c in CASES {
        let m = build(c).minimal_model(1_000_000).unwrap();
        for &(p, f, ..) in c.local {
            if f != 1 || p > 100_000 {
                continue;
            }
            let x0 = m.reduction_at(p).unwrap().singular_x.unwrap();
            let a: Vec<i128> = m
                .curve
                .coefficients()
                .iter()
                .map(|v| rational_mod(v, p).unwrap() as i128)
                .collect();
            let (x, pi) = (x0 as i128, p as i128);
            // some y makes both partial derivatives and the equation vanish
            let found = (0..pi).any(|y| {
                let f = y * y + a[0] * x * y + a[2] * y - x * x * x - a[1] * x * x - a[3] * x - a[4];
                let fx = a[0] * y - 3 * x * x - 2 * a[1] * x - a[3];
                let fy = 2 * y + a[0] * x + a[2];
                [f, fx, fy].iter().all(|v| v.rem_euclid(pi) == 0)
            });
            assert!(found, "p = {p}");
        }
    }
}
