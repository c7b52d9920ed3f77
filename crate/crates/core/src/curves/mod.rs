//! Elliptic curves in long Weierstrass form, the group law, coordinate changes,
//! and local reduction data over the rationals.

mod reduction;

pub use reduction::{
    count_affine_points_mod, MinimalModel, ReductionInfo, ReductionKind, DEFAULT_TRIAL_BOUND,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Field, Poly, Rational};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve<F = Rational> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint<F = Rational> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> CurvePoint<F> {
    pub fn new(x: F, y: F) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }
}

/// Admissible change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform<F = Rational> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> Transform<F> {
    pub fn identity() -> Self {
        Transform {
            u: F::one(),
            r: F::zero(),
            s: F::zero(),
            t: F::zero(),
        }
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Transform<F>) -> Transform<F> {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.t);
        let u1s = u1.clone() * u1.clone();
        Transform {
            u: u1.clone() * u2.clone(),
            r: r1.clone() + u1s.clone() * r2.clone(),
            s: s1.clone() + u1.clone() * s2.clone(),
            t: t1.clone() + u1s.clone() * s1.clone() * r2.clone() + u1s * u1.clone() * t2.clone(),
        }
    }

    /// New abscissa of a point with old abscissa `x`.
    pub fn map_x(&self, x: &F) -> F {
        (x.clone() - self.r.clone()) / (self.u.clone() * self.u.clone())
    }

    /// Old abscissa from a new one.
    pub fn unmap_x(&self, x: &F) -> F {
        self.u.clone() * self.u.clone() * x.clone() + self.r.clone()
    }

    pub fn map_point(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u2 = self.u.clone() * self.u.clone();
                let dx = x.clone() - self.r.clone();
                let y_new =
                    (y.clone() - self.s.clone() * dx.clone() - self.t.clone()) / (u2.clone() * self.u.clone());
                CurvePoint::Affine {
                    x: dx / u2,
                    y: y_new,
                }
            }
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self> {
        let c = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(Error::DegenerateParameter("singular Weierstrass equation".into()));
        }
        Ok(c)
    }

    /// y^2 = x^3 + a2 x^2 + a4 x + a6
    pub fn from_monic_cubic(a2: F, a4: F, a6: F) -> Result<Self> {
        Self::new(F::zero(), a2, F::zero(), a4, a6)
    }

    pub fn coefficients(&self) -> [F; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    pub fn b2(&self) -> F {
        self.a1.clone() * self.a1.clone() + F::from_int(4) * self.a2.clone()
    }

    pub fn b4(&self) -> F {
        F::from_int(2) * self.a4.clone() + self.a1.clone() * self.a3.clone()
    }

    pub fn b6(&self) -> F {
        self.a3.clone() * self.a3.clone() + F::from_int(4) * self.a6.clone()
    }

    pub fn b8(&self) -> F {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1.clone() * a1.clone() * a6.clone() + F::from_int(4) * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.clone() * a3.clone()
            - a4.clone() * a4.clone()
    }

    pub fn c4(&self) -> F {
        let b2 = self.b2();
        b2.clone() * b2 - F::from_int(24) * self.b4()
    }

    pub fn c6(&self) -> F {
        let b2 = self.b2();
        -(b2.clone() * b2.clone() * b2.clone()) + F::from_int(36) * b2 * self.b4()
            - F::from_int(216) * self.b6()
    }

    pub fn discriminant(&self) -> F {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(b2.clone() * b2.clone() * b8.clone()) - F::from_int(8) * b4.clone() * b4.clone() * b4.clone()
            - F::from_int(27) * b6.clone() * b6.clone()
            + F::from_int(9) * b2 * b4 * b6
    }

    pub fn j_invariant(&self) -> F {
        let c4 = self.c4();
        c4.clone() * c4.clone() * c4 / self.discriminant()
    }

    /// 4x^3 + b2 x^2 + 2 b4 x + b6, i.e. (2y + a1 x + a3)^2 as a polynomial in x.
    pub fn two_torsion_polynomial(&self) -> Poly<F> {
        Poly::new(vec![
            self.b6(),
            F::from_int(2) * self.b4(),
            self.b2(),
            F::from_int(4),
        ])
    }

    /// x^3 + a2 x^2 + a4 x + a6
    pub fn cubic(&self) -> Poly<F> {
        Poly::new(vec![self.a6.clone(), self.a4.clone(), self.a2.clone(), F::one()])
    }

    pub fn has_zero_a1_a3(&self) -> bool {
        self.a1.is_zero() && self.a3.is_zero()
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let lhs = y.clone() * y.clone()
                    + self.a1.clone() * x.clone() * y.clone()
                    + self.a3.clone() * y.clone();
                lhs == self.cubic().eval(x)
            }
        }
    }

    fn check_on_curve(&self, p: &CurvePoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("point is not on the curve".into()))
        }
    }

    pub fn negate(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y.clone() - self.a1.clone() * x.clone() - self.a3.clone(),
            },
        }
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check_on_curve(p)?;
        self.check_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (lambda, nu) = if x1 == x2 {
            let denom = F::from_int(2) * y1.clone() + a1.clone() * x1.clone() + a3.clone();
            if y1.clone() + y2.clone() + a1.clone() * x2.clone() + a3.clone() == F::zero()
                || denom.is_zero()
            {
                return CurvePoint::Infinity;
            }
            let num = F::from_int(3) * x1.clone() * x1.clone()
                + F::from_int(2) * a2.clone() * x1.clone()
                + a4.clone()
                - a1.clone() * y1.clone();
            let nu_num = -(x1.clone() * x1.clone() * x1.clone()) + a4.clone() * x1.clone()
                + F::from_int(2) * a6.clone()
                - a3.clone() * y1.clone();
            (num / denom.clone(), nu_num / denom)
        } else {
            let dx = x2.clone() - x1.clone();
            (
                (y2.clone() - y1.clone()) / dx.clone(),
                (y1.clone() * x2.clone() - y2.clone() * x1.clone()) / dx,
            )
        };
        let x3 = lambda.clone() * lambda.clone() + a1.clone() * lambda.clone()
            - a2.clone()
            - x1.clone()
            - x2.clone();
        let y3 = -(lambda + a1.clone()) * x3.clone() - nu - a3.clone();
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// Scalar multiple by double-and-add; negative n uses the inverse.
    pub fn mul(&self, n: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check_on_curve(p)?;
        Ok(self.mul_unchecked(n, p))
    }

    pub(crate) fn mul_unchecked(&self, n: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        acc
    }

    /// Least n <= bound with nP = O, or `None` when the order exceeds the bound.
    pub fn torsion_order(&self, p: &CurvePoint<F>, bound: u32) -> Result<Option<u32>> {
        self.check_on_curve(p)?;
        let mut q = p.clone();
        for n in 1..=bound {
            if q.is_infinity() {
                return Ok(Some(n));
            }
            q = self.add_unchecked(&q, p);
        }
        Ok(None)
    }

    /// x(nP) for any point P with abscissa `x`, whose ordinate may lie in a
    /// quadratic extension; `None` when nP = O.
    ///
    /// With d = (2y + a1 x + a3)^2 / 4, the point (d x, d^2) lies on the twist
    /// Y^2 = X^3 + d b2/4 X^2 + d^2 b4/2 X + d^3 b6/4, and abscissae scale by d.
    pub fn x_of_multiple(&self, x: &F, n: i64) -> Option<F> {
        let d = self.two_torsion_polynomial().eval(x) / F::from_int(4);
        if d.is_zero() {
            return (n % 2 != 0).then(|| x.clone());
        }
        let d2 = d.clone() * d.clone();
        let twist = WeierstrassCurve {
            a1: F::zero(),
            a2: d.clone() * self.b2() / F::from_int(4),
            a3: F::zero(),
            a4: d2.clone() * self.b4() / F::from_int(2),
            a6: d2.clone() * d.clone() * self.b6() / F::from_int(4),
        };
        let p = CurvePoint::new(d.clone() * x.clone(), d2);
        match twist.mul_unchecked(n, &p) {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x / d),
        }
    }

    /// The curve in the new coordinates of `t`.
    pub fn transform(&self, t: &Transform<F>) -> WeierstrassCurve<F> {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (u, r, s, tt) = (&t.u, &t.r, &t.s, &t.t);
        let u2 = u.clone() * u.clone();
        let u3 = u2.clone() * u.clone();
        let u4 = u2.clone() * u2.clone();
        let u6 = u3.clone() * u3.clone();
        let two = F::from_int(2);
        let three = F::from_int(3);
        WeierstrassCurve {
            a1: (a1.clone() + two.clone() * s.clone()) / u.clone(),
            a2: (a2.clone() - s.clone() * a1.clone() + three.clone() * r.clone() - s.clone() * s.clone())
                / u2,
            a3: (a3.clone() + r.clone() * a1.clone() + two.clone() * tt.clone()) / u3,
            a4: (a4.clone() - s.clone() * a3.clone() + two.clone() * r.clone() * a2.clone()
                - (tt.clone() + r.clone() * s.clone()) * a1.clone()
                + three * r.clone() * r.clone()
                - two * s.clone() * tt.clone())
                / u4,
            a6: (a6.clone() + r.clone() * a4.clone() + r.clone() * r.clone() * a2.clone()
                + r.clone() * r.clone() * r.clone()
                - tt.clone() * a3.clone()
                - tt.clone() * tt.clone()
                - r.clone() * tt.clone() * a1.clone())
                / u6,
        }
    }

    /// The change of variables with scaling `u` taking `self` to `target`, if any.
    pub fn transform_with_scale(&self, target: &WeierstrassCurve<F>, u: F) -> Option<Transform<F>> {
        let two = F::from_int(2);
        let s = (u.clone() * target.a1.clone() - self.a1.clone()) / two.clone();
        let r = (u.clone() * u.clone() * target.a2.clone() - self.a2.clone() + s.clone() * self.a1.clone()
            + s.clone() * s.clone())
            / F::from_int(3);
        let t = (u.clone() * u.clone() * u.clone() * target.a3.clone()
            - self.a3.clone()
            - r.clone() * self.a1.clone())
            / two;
        let tr = Transform { u, r, s, t };
        (self.transform(&tr) == *target).then_some(tr)
    }

    /// A rational isomorphism `self -> other`, or `None` for non-isomorphic curves
    /// (different j-invariants or a nontrivial quadratic twist).
    pub fn isomorphism_to(&self, other: &WeierstrassCurve<F>) -> Option<Transform<F>> {
        let (c4, c6, d4, d6) = (self.c4(), self.c6(), other.c4(), other.c6());
        // c4 = u^4 c4', c6 = u^6 c6'
        let u2 = if !c4.is_zero() && !c6.is_zero() {
            if d4.is_zero() || d6.is_zero() {
                return None;
            }
            (c6 * d4) / (c4 * d6)
        } else if c4.is_zero() {
            if !d4.is_zero() {
                return None;
            }
            (c6 / d6).cbrt()?
        } else {
            if !d6.is_zero() {
                return None;
            }
            (c4 / d4).sqrt()?
        };
        let u = u2.sqrt()?;
        self.transform_with_scale(other, u.clone())
            .or_else(|| self.transform_with_scale(other, -u))
    }
}

/// y^2 = g(x) for a cubic g with arbitrary leading coefficient A.
///
/// The associated Weierstrass curve uses X = A x, Y = A y.
#[derive(Clone, PartialEq, Eq)]
pub struct CubicModel<F = Rational> {
    g: Poly<F>,
}

impl<F: Field> std::fmt::Debug for CubicModel<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = {:?}", self.g)
    }
}

impl<F: Field> CubicModel<F> {
    pub fn new(g: Poly<F>) -> Result<Self> {
        if g.degree() != Some(3) {
            return Err(Error::InvalidArgument("cubic model needs a degree-3 polynomial".into()));
        }
        let m = CubicModel { g };
        if m.weierstrass_unchecked().discriminant().is_zero() {
            return Err(Error::DegenerateParameter("cubic has a repeated root".into()));
        }
        Ok(m)
    }

    pub fn cubic(&self) -> &Poly<F> {
        &self.g
    }

    pub fn leading(&self) -> F {
        self.g.coeff(3)
    }

    fn weierstrass_unchecked(&self) -> WeierstrassCurve<F> {
        let a = self.leading();
        WeierstrassCurve {
            a1: F::zero(),
            a2: self.g.coeff(2),
            a3: F::zero(),
            a4: a.clone() * self.g.coeff(1),
            a6: a.clone() * a * self.g.coeff(0),
        }
    }

    /// Y^2 = X^3 + g2 X^2 + A g1 X + A^2 g0
    pub fn weierstrass(&self) -> WeierstrassCurve<F> {
        self.weierstrass_unchecked()
    }

    /// Abscissa on the Weierstrass model for an abscissa on this model.
    pub fn to_weierstrass_x(&self, x: &F) -> F {
        self.leading() * x.clone()
    }

    pub fn from_weierstrass_x(&self, x: &F) -> F {
        x.clone() / self.leading()
    }
}

impl<F: Field> Default for Transform<F> {
    fn default() -> Self {
        Self::identity()
    }
}

/// JSON form of a curve: five rational strings.
pub fn curve_to_json(c: &WeierstrassCurve<Rational>) -> Vec<String> {
    c.coefficients().iter().map(format_rational).collect()
}

pub fn curve_from_json(v: &[String]) -> Result<WeierstrassCurve<Rational>> {
    if v.len() != 5 {
        return Err(Error::Parse("a curve has five coefficients".into()));
    }
    let a = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    WeierstrassCurve::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformJson {
    pub u: String,
    pub r: String,
    pub s: String,
    pub t: String,
}

impl From<&Transform<Rational>> for TransformJson {
    fn from(t: &Transform<Rational>) -> Self {
        TransformJson {
            u: format_rational(&t.u),
            r: format_rational(&t.r),
            s: format_rational(&t.s),
            t: format_rational(&t.t),
        }
    }
}

/// Exact comparison of j-invariants without dividing: c4^3 Δ' = c4'^3 Δ.
pub fn same_j_invariant<F: Field>(e: &WeierstrassCurve<F>, f: &WeierstrassCurve<F>) -> bool {
    let (c, d) = (e.c4(), f.c4());
    c.clone() * c.clone() * c * f.discriminant() == d.clone() * d.clone() * d * e.discriminant()
}
