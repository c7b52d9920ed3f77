use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{
    common_value, generic_u, kubert_curve, kubert_isogeny, kubert_kernel, kubert_linear_root,
    kubert_torsion_point, quotient_model, triple_u, Constants, MestreSpecialization,
};
use crate::curves::DEFAULT_TRIAL_BOUND;
use crate::exact::{format_rational, rational_sqrt, Poly, Rational, RationalFunction};

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn fail(name: &str, e: impl std::fmt::Display) -> IdentityCheck {
    check(name, false, e.to_string())
}

/// Value at infinity of a rational function of degree 0.
fn at_infinity(r: &RationalFunction) -> Option<Rational> {
    let (n, d) = (r.num(), r.den());
    (n.degree() == d.degree()).then(|| n.leading().unwrap() / d.leading().unwrap())
}

/// Runs every identity of the construction from the constants table, plus the
/// family identities over Q(u).
pub fn identity_suite(constants: &Constants) -> Vec<IdentityCheck> {
    let mut out = Vec::new();

    // three parameters with a common value of u(u^2+u-1), over Q(t)
    let t = RationalFunction::var();
    let [u1, u2, u3] = triple_u(&t);
    let (c1, c2, c3) = (common_value(&u1), common_value(&u2), common_value(&u3));
    out.push(check(
        "triple_common_value",
        c1 == c2 && c2 == c3,
        format!("u(u^2+u-1) = {c1:?}"),
    ));

    let spec = match MestreSpecialization::new(constants) {
        Ok(s) => s,
        Err(e) => {
            out.push(fail("specialization", e));
            return out;
        }
    };

    let expected = triple_u(&spec.t);
    out.push(check(
        "triple_at_t",
        expected == spec.u,
        format!(
            "t = {}: ({}, {}, {})",
            format_rational(&spec.t),
            format_rational(&expected[0]),
            format_rational(&expected[1]),
            format_rational(&expected[2])
        ),
    ));

    // the quadratic factor of f is proportional to x^2 - u(u^2+u-1)
    let quad = Poly::new(vec![
        constants_rational(&constants.f_quadratic[0]),
        Rational::zero(),
        constants_rational(&constants.f_quadratic[1]),
    ]);
    let shared = spec.u.iter().all(|u| {
        let target = Poly::new(vec![-common_value(u), Rational::zero(), Rational::one()]);
        quad.monic() == target
    });
    out.push(check(
        "shared_quadratic_factor",
        shared,
        format!("common value {}", format_rational(&common_value(&spec.u[0]))),
    ));

    // the curve C: h_u1(x) = v^2 h_u2(x) = w^2 h_u3(x) along x = x(z)
    let mut h_of_z = Vec::new();
    for u in &spec.u {
        match quotient_model(u) {
            Ok((_, h)) => h_of_z.push(h.substitute(&spec.x_of_z)),
            Err(e) => {
                out.push(fail("curve_c", e));
                return out;
            }
        }
    }
    let v2 = spec.v_of_z.pow(2);
    let w2 = spec.w_of_z.pow(2);
    let diff_v = h_of_z[0].clone() - v2 * h_of_z[1].clone();
    let diff_w = h_of_z[0].clone() - w2 * h_of_z[2].clone();
    out.push(check(
        "curve_c_v",
        diff_v.is_zero(),
        if diff_v.is_zero() { "h_u1(x(z)) - v(z)^2 h_u2(x(z)) = 0".into() } else { format!("residual {diff_v:?}") },
    ));
    out.push(check(
        "curve_c_w",
        diff_w.is_zero(),
        if diff_w.is_zero() { "h_u1(x(z)) - w(z)^2 h_u3(x(z)) = 0".into() } else { format!("residual {diff_w:?}") },
    ));

    // the four points at infinity of C: v = +-u2/u1, w = +-u3/u1
    let v_inf = at_infinity(&spec.v_of_z);
    let w_inf = at_infinity(&spec.w_of_z);
    let r2 = &spec.u[1] / &spec.u[0];
    let r3 = &spec.u[2] / &spec.u[0];
    let inf_ok = v_inf.as_ref().is_some_and(|v| v * v == &r2 * &r2)
        && w_inf.as_ref().is_some_and(|w| w * w == &r3 * &r3);
    out.push(check(
        "curve_c_points_at_infinity",
        inf_ok,
        format!(
            "v(oo) = {}, w(oo) = {}",
            v_inf.as_ref().map(format_rational).unwrap_or_default(),
            w_inf.as_ref().map(format_rational).unwrap_or_default()
        ),
    ));

    // poles of x(z) are genuine
    let den = spec.x_of_z.den();
    let num = spec.x_of_z.num();
    let gcd = num.gcd(den);
    out.push(check(
        "x_of_z_poles",
        gcd.degree() == Some(0) && den.degree() == Some(3),
        format!("denominator degree {:?}", den.degree()),
    ));

    // f = lambda^2 g_u1
    let g1 = spec.quotients[0].cubic();
    let (q, r) = spec.f_model.div_rem(g1);
    let ratio_ok = r.is_zero() && q.degree() == Some(0);
    let lambda = if ratio_ok { rational_sqrt(&q.coeff(0)) } else { None };
    out.push(check(
        "f_square_multiple_of_g_u1",
        lambda.is_some(),
        match &lambda {
            Some(l) => format!("f / g_u1 = ({})^2", format_rational(l)),
            None => format!("quotient {q:?}, remainder {r:?}"),
        },
    ));

    // Vélu quotients of E_i are the models y^2 = g_{u_i}(x)
    for (i, u) in spec.u.iter().enumerate() {
        let name = format!("velu_quotient_e{}", i + 1);
        match kubert_isogeny(u) {
            Ok(phi) => out.push(check(&name, phi.maps_onto_codomain(), "isogeny maps onto y^2 = g_u(x)")),
            Err(e) => out.push(fail(&name, e)),
        }
    }

    // order-10 point, and the 2-torsion point on the linear factor
    for (i, u) in spec.u.iter().enumerate() {
        let e = &spec.e_curves[i];
        let p = kubert_torsion_point(u);
        let order = e.torsion_order(&p, 10).ok().flatten();
        let kernel_ok = e
            .mul(2, &p)
            .ok()
            .and_then(|q| q.x().map(|x| kubert_kernel(u).eval(x).is_zero()))
            .unwrap_or(false);
        out.push(check(
            &format!("order_ten_point_e{}", i + 1),
            order == Some(10) && kernel_ok,
            format!("order {order:?}; twice the point lies in the kernel: {kernel_ok}"),
        ));
        let x2 = kubert_linear_root(u);
        let on_cubic = kubert_curve(u).map(|m| m.cubic().eval(&x2).is_zero()).unwrap_or(false);
        out.push(check(
            &format!("linear_root_two_torsion_e{}", i + 1),
            on_cubic,
            format!("x = {} is a root of the cubic", format_rational(&x2)),
        ));
    }

    // semistability of E_i and F_i
    for i in 0..3 {
        for (label, curve) in [("e", &spec.e_curves[i]), ("f", &spec.f_curves[i])] {
            let name = format!("semistable_{label}{}", i + 1);
            match curve.is_semistable(DEFAULT_TRIAL_BOUND) {
                Ok(s) => out.push(check(&name, s, if s { "semistable" } else { "additive somewhere" })),
                Err(e) => out.push(fail(&name, e)),
            }
        }
    }

    out.extend(generic_checks());
    out
}

fn constants_rational(s: &str) -> Rational {
    crate::exact::parse_rational(s).unwrap_or_else(|_| Rational::zero())
}

/// Identities over Q(u) for the whole family.
fn generic_checks() -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let u = generic_u();
    match kubert_isogeny(&u) {
        Ok(phi) => out.push(check(
            "velu_quotient_generic",
            true,
            format!("codomain a4 = {:?}", phi.codomain.a4),
        )),
        Err(e) => out.push(fail("velu_quotient_generic", e)),
    }
    let e = kubert_curve(&u).map(|m| m.weierstrass());
    match e {
        Ok(e) => {
            let p = kubert_torsion_point(&u);
            let order = e.torsion_order(&p, 10).ok().flatten();
            out.push(check("order_ten_point_generic", order == Some(10), format!("order {order:?}")));
            let x2 = kubert_linear_root(&u);
            let root = kubert_curve(&u).map(|m| m.cubic().eval(&x2).is_zero()).unwrap_or(false);
            out.push(check("linear_root_two_torsion_generic", root, "root of the linear factor"));
        }
        Err(err) => out.push(fail("order_ten_point_generic", err)),
    }
    out
}
