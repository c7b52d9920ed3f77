//! The one-parameter Kubert family with a rational point of order 10, its
//! quotient by the subgroup of order 5, the three-curve construction over Q(t)
//! and its specialization at t = 4.
//!
//! All formulas are generic over the base field, so the same code evaluates
//! them at rational u and verifies them over Q(u) or Q(t).

mod constants;
mod identities;
mod specialization;
mod surd;

pub use constants::{Constants, CurveCriterion, PAPER_CONSTANTS_VERSION};
pub use identities::{identity_suite, IdentityCheck};
pub use specialization::{MestreSpecialization, QuotientPoint, SpecializationDump};
pub use surd::SurdElement;

use crate::curves::{CubicModel, CurvePoint, Transform, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact::{Field, Poly, Rational, RationalFunction};
use crate::isogeny::{velu_quotient, Isogeny};

/// Evaluate an integer polynomial (low degree first) at `u`.
fn int_poly<F: Field>(coeffs: &[i64], u: &F) -> F {
    coeffs
        .iter()
        .rev()
        .fold(F::zero(), |acc, &c| acc * u.clone() + F::from_int(c))
}

/// u(u^2 + u - 1), the constant in the shared quadratic factor x^2 - c.
pub fn common_value<F: Field>(u: &F) -> F {
    int_poly(&[0, -1, 1, 1], u)
}

/// u^2 + u - 1
fn golden<F: Field>(u: &F) -> F {
    int_poly(&[-1, 1, 1], u)
}

/// (u^2 + 1)(u^4 - 2u^3 - 6u^2 + 2u + 1)
fn kubert_constant<F: Field>(u: &F) -> F {
    int_poly(&[1, 0, 1], u) * int_poly(&[1, 2, -6, -2, 1], u)
}

/// (u^2 + 1)(u^4 + 22u^3 - 6u^2 - 22u + 1)
fn quotient_constant<F: Field>(u: &F) -> F {
    int_poly(&[1, 0, 1], u) * int_poly(&[1, -22, -6, 22, 1], u)
}

/// y^2 = (x^2 - u(u^2+u-1)) (8u^2 x + (u^2+1)(u^4-2u^3-6u^2+2u+1))
pub fn kubert_cubic<F: Field>(u: &F) -> Poly<F> {
    let quad = Poly::new(vec![-common_value(u), F::zero(), F::one()]);
    let lin = Poly::new(vec![kubert_constant(u), F::from_int(8) * u.clone() * u.clone()]);
    &quad * &lin
}

pub fn kubert_curve<F: Field>(u: &F) -> Result<CubicModel<F>> {
    if u.is_zero() {
        return Err(Error::DegenerateParameter("u = 0".into()));
    }
    CubicModel::new(kubert_cubic(u)).map_err(|_| Error::DegenerateParameter(format!("{u:?}")))
}

/// (g_u, h_u) with g_u = (x^2 - u(u^2+u-1)) h_u and
/// h_u = 8(u^2+u-1)^2 x + (u^2+1)(u^4+22u^3-6u^2-22u+1).
pub fn quotient_model<F: Field>(u: &F) -> Result<(Poly<F>, Poly<F>)> {
    kubert_curve(u)?;
    let gold = golden(u);
    let h = Poly::new(vec![quotient_constant(u), F::from_int(8) * gold.clone() * gold]);
    let quad = Poly::new(vec![-common_value(u), F::zero(), F::one()]);
    let g = &quad * &h;
    CubicModel::new(g.clone()).map_err(|_| Error::DegenerateParameter(format!("{u:?}")))?;
    Ok((g, h))
}

pub fn quotient_curve<F: Field>(u: &F) -> Result<CubicModel<F>> {
    CubicModel::new(quotient_model(u)?.0)
}

/// The kernel of the 5-isogeny in the coordinates X = 8u^2 x of the Weierstrass
/// model of E_u: its roots are 4u(u^3+u^2+u-1) and 4u^2(u^3+u^2-u+1).
pub fn kubert_kernel<F: Field>(u: &F) -> Poly<F> {
    let four_u = F::from_int(4) * u.clone();
    let r1 = four_u.clone() * int_poly(&[-1, 1, 1, 1], u);
    let r2 = four_u * u.clone() * int_poly(&[1, -1, 1, 1], u);
    &Poly::linear_root(r1) * &Poly::linear_root(r2)
}

/// A point of order 10 on the Weierstrass model of E_u: in the cubic model it
/// has x = -(u^3+u^2-3u-1)/(2u) and y = (u-1)(u+1)^3(u^2-4u-1)/(2u).
pub fn kubert_torsion_point<F: Field>(u: &F) -> CurvePoint<F> {
    let four_u = F::from_int(4) * u.clone();
    let x = -(four_u.clone() * int_poly(&[-1, -3, 1, 1], u));
    let y = four_u
        * (u.clone() - F::one())
        * int_poly(&[1, 3, 3, 1], u)
        * int_poly(&[-1, -4, 1], u);
    CurvePoint::new(x, y)
}

/// The abscissa -(u^4-2u^3-6u^2+2u+1)(u^2+1)/(8u^2) in the cubic model of E_u;
/// it is the root of the linear factor, so it carries a point of order 2.
pub fn kubert_linear_root<F: Field>(u: &F) -> F {
    -kubert_constant(u) / (F::from_int(8) * u.clone() * u.clone())
}

/// The 5-isogeny from the Weierstrass model of E_u onto the Weierstrass model
/// of y^2 = g_u(x), composed with the translation identifying the Vélu
/// quotient with that model.
pub fn kubert_isogeny<F: Field>(u: &F) -> Result<Isogeny<F>> {
    let e = kubert_curve(u)?.weierstrass();
    let f = quotient_curve(u)?.weierstrass();
    let phi = velu_quotient(&e, &kubert_kernel(u))?;
    let t = phi
        .codomain
        .transform_with_scale(&f, F::one())
        .ok_or_else(|| Error::InvalidKernel("Vélu quotient is not a translate of y^2 = g_u(x)".into()))?;
    Ok(phi.then_transform(&t))
}

/// (u1, u2, u3) = ((t^2+t-1), -(t^2+3t+1), -(t^2-t-1)) / (t^2+t+1)
pub fn triple_u<F: Field>(t: &F) -> [F; 3] {
    let den = int_poly(&[1, 1, 1], t);
    [
        int_poly(&[-1, 1, 1], t) / den.clone(),
        -int_poly(&[1, 3, 1], t) / den.clone(),
        -int_poly(&[-1, -1, 1], t) / den,
    ]
}

/// The symbolic parameter u as an element of Q(u).
pub fn generic_u() -> RationalFunction {
    RationalFunction::var()
}

/// Transform taking the Vélu quotient model of E_u to the model of y^2 = g_u(x).
pub fn quotient_translation(u: &Rational) -> Result<Transform<Rational>> {
    let e = kubert_curve(u)?.weierstrass();
    let f = quotient_curve(u)?.weierstrass();
    let phi = velu_quotient(&e, &kubert_kernel(u))?;
    phi.codomain
        .transform_with_scale(&f, Rational::from_int(1))
        .ok_or_else(|| Error::InvalidKernel("no translation to y^2 = g_u(x)".into()))
}

/// Whether `e` and `f` differ by a change of variables with u = +-1
/// (equal j-invariants and no quadratic twist).
pub fn isomorphic_without_twist<F: Field>(e: &WeierstrassCurve<F>, f: &WeierstrassCurve<F>) -> bool {
    e.transform_with_scale(f, F::one()).is_some() || e.transform_with_scale(f, -F::one()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::Zero;

    #[test]
    fn kubert_at_four() {
        let u = rat(4, 1);
        // (x^2 - 76)(128x + 697)
        let expected = &Poly::from_ints(&[-76, 0, 1]) * &Poly::from_ints(&[697, 128]);
        assert_eq!(kubert_curve(&u).unwrap().cubic(), &expected);
    }

    #[test]
    fn degenerate_parameters() {
        for u in [rat(1, 1), rat(-1, 1), rat(0, 1)] {
            assert!(matches!(kubert_curve(&u), Err(Error::DegenerateParameter(_))));
        }
    }

    #[test]
    fn quotient_at_four() {
        let (g, h) = quotient_model(&rat(4, 1)).unwrap();
        assert_eq!(h, Poly::from_ints(&[25177, 2888]));
        assert_eq!(g, &Poly::from_ints(&[-76, 0, 1]) * &h);
    }

    #[test]
    fn triple_at_four() {
        let [u1, u2, u3] = triple_u(&rat(4, 1));
        assert_eq!((u1.clone(), u2.clone(), u3.clone()), (rat(19, 21), rat(-29, 21), rat(-11, 21)));
        assert_eq!(common_value(&u1), rat(6061, 9261));
        assert_eq!(common_value(&u2), rat(6061, 9261));
        assert_eq!(common_value(&u3), rat(6061, 9261));
    }

    #[test]
    fn torsion_point_has_order_ten() {
        let u = rat(4, 1);
        let e = kubert_curve(&u).unwrap().weierstrass();
        let p = kubert_torsion_point(&u);
        assert_eq!(e.torsion_order(&p, 20).unwrap(), Some(10));
        let doubled = e.mul(2, &p).unwrap();
        assert!(kubert_kernel(&u).eval(doubled.x().unwrap()).is_zero());
    }

    #[test]
    fn linear_root_is_two_torsion() {
        let u = rat(19, 21);
        let m = kubert_curve(&u).unwrap();
        let x = kubert_linear_root(&u);
        assert!(m.cubic().eval(&x).is_zero());
    }

    #[test]
    fn isogeny_lands_on_quotient_model() {
        let u = rat(6, 1);
        let phi = kubert_isogeny(&u).unwrap();
        assert_eq!(phi.codomain, quotient_curve(&u).unwrap().weierstrass());
        assert!(phi.maps_onto_codomain());
    }
}
