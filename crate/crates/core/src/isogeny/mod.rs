//! Rational 5-isogenies: the 5-division polynomial, detection of rational
//! kernels, and explicit quotient maps by Vélu's formulas.

mod kernel;

pub use kernel::{dual_isogeny, five_division_kernel, rational_five_kernels};

use crate::curves::{CurvePoint, Transform, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact::{Field, Poly};

/// psi_5 as a polynomial in x, of degree 12 with leading coefficient 5.
pub fn division_polynomial_five<F: Field>(c: &WeierstrassCurve<F>) -> Poly<F> {
    let (b2, b4, b6, b8) = (c.b2(), c.b4(), c.b6(), c.b8());
    let n = |k: i64| F::from_int(k);
    let psi3 = Poly::new(vec![
        b8.clone() * n(1),
        n(3) * b6.clone(),
        n(3) * b4.clone(),
        b2.clone(),
        n(3),
    ]);
    // psi_4 / psi_2
    let quot4 = Poly::new(vec![
        b4.clone() * b8.clone() - b6.clone() * b6.clone(),
        b2.clone() * b8.clone() - b4.clone() * b6.clone(),
        n(10) * b8,
        n(10) * b6,
        n(5) * b4,
        b2,
        n(2),
    ]);
    let beta = c.two_torsion_polynomial();
    &(&quot4 * &(&beta * &beta)) - &psi3.pow(3)
}

/// Whether the roots of a monic quadratic are x(T), x(2T) for a point T of order 5.
pub fn is_five_kernel<F: Field>(c: &WeierstrassCurve<F>, k: &Poly<F>) -> bool {
    if k.degree() != Some(2) || !k.is_monic() {
        return false;
    }
    if !division_polynomial_five(c).rem(k).is_zero() {
        return false;
    }
    // doubling sends each root to a root: k(phi2/beta) * beta^2 = 0 mod k
    let phi2 = Poly::new(vec![-c.b8(), F::from_int(-2) * c.b6(), -c.b4(), F::zero(), F::one()]).rem(k);
    let beta = c.two_torsion_polynomial().rem(k);
    let image = &(&(&phi2 * &phi2) + &(&phi2 * &beta).scale(&k.coeff(1)))
        + &(&beta * &beta).scale(&k.coeff(0));
    image.rem(k).is_zero()
}

/// A separable isogeny given by rational maps
/// x -> x_num / x_den and y -> (y_const + y_lin * y) / y_den.
#[derive(Clone, PartialEq, Eq)]
pub struct Isogeny<F: Field = crate::exact::Rational> {
    pub domain: WeierstrassCurve<F>,
    pub codomain: WeierstrassCurve<F>,
    pub kernel: Poly<F>,
    x_num: Poly<F>,
    x_den: Poly<F>,
    y_const: Poly<F>,
    y_lin: Poly<F>,
    y_den: Poly<F>,
}

impl<F: Field> std::fmt::Debug for Isogeny<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Isogeny")
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .field("kernel", &self.kernel)
            .finish()
    }
}

/// Quotient by the subgroup whose nonzero x-coordinates are the roots of the
/// monic quadratic `kernel`.
pub fn velu_quotient<F: Field>(curve: &WeierstrassCurve<F>, kernel: &Poly<F>) -> Result<Isogeny<F>> {
    if !is_five_kernel(curve, kernel) {
        return Err(Error::InvalidKernel(
            "not the x-polynomial of a subgroup of order 5".into(),
        ));
    }
    let k = kernel.clone();
    let dk = k.derivative();
    let (a1, a3) = (curve.a1.clone(), curve.a3.clone());
    let (b2, b4) = (curve.b2(), curve.b4());
    let v = Poly::new(vec![b4, b2, F::from_int(6)]);
    let w = curve.two_torsion_polynomial();
    let t = v.trace_over_roots(&k);
    let w_sum = (&w + &(&Poly::x() * &v)).trace_over_roots(&k);
    let codomain = WeierstrassCurve {
        a1: curve.a1.clone(),
        a2: curve.a2.clone(),
        a3: curve.a3.clone(),
        a4: curve.a4.clone() - F::from_int(5) * t.clone(),
        a6: curve.a6.clone() - curve.b2() * t - F::from_int(7) * w_sum,
    };
    if codomain.discriminant().is_zero() {
        return Err(Error::InvalidKernel("singular quotient".into()));
    }
    // X = x + sum v/(x - r) + sum w/(x - r)^2 = x + n1/k - (n2/k)'
    let n1 = (&v * &dk).rem(&k);
    let n2 = (&w * &dk).rem(&k);
    let k2 = &k * &k;
    let x_num = &(&(&(&Poly::x() * &k2) + &(&n1 * &k)) - &(&n2.derivative() * &k)) + &(&n2 * &dk);
    // invariant differential is preserved, so 2Y + a1 X + a3 = X'(x) (2y + a1 x + a3)
    let y_lin = &(&x_num.derivative() * &k) - &(&x_num * &dk).scale(&F::from_int(2));
    let k3 = &k2 * &k;
    let lin = Poly::new(vec![a3.clone(), a1.clone()]);
    let half = F::one() / F::from_int(2);
    let y_const = (&(&(&lin * &y_lin) - &(&x_num * &k).scale(&a1)) - &k3.scale(&a3)).scale(&half);
    Ok(Isogeny {
        domain: curve.clone(),
        codomain,
        kernel: k,
        x_num,
        x_den: k2,
        y_const,
        y_lin,
        y_den: k3,
    })
}

impl<F: Field> Isogeny<F> {
    pub fn degree(&self) -> usize {
        2 * self.kernel.degree().unwrap_or(0) + 1
    }

    /// Numerator and denominator of the x-map.
    pub fn x_map(&self) -> (&Poly<F>, &Poly<F>) {
        (&self.x_num, &self.x_den)
    }

    /// Image abscissa, `None` when x belongs to a kernel point.
    pub fn map_x(&self, x: &F) -> Option<F> {
        let d = self.x_den.eval(x);
        (!d.is_zero()).then(|| self.x_num.eval(x) / d)
    }

    pub fn map_point(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        if !self.domain.contains(p) {
            return Err(Error::InvalidArgument("point is not on the domain".into()));
        }
        let CurvePoint::Affine { x, y } = p else {
            return Ok(CurvePoint::Infinity);
        };
        let d = self.y_den.eval(x);
        if d.is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let xx = self.x_num.eval(x) / self.x_den.eval(x);
        let yy = (self.y_const.eval(x) + self.y_lin.eval(x) * y.clone()) / d;
        Ok(CurvePoint::new(xx, yy))
    }

    /// x_num - x0 x_den, whose roots are the abscissae of the preimages of x0.
    pub fn preimage_polynomial(&self, x0: &F) -> Poly<F> {
        &self.x_num - &self.x_den.scale(x0)
    }

    /// Follow the isogeny by the change of variables `t` on the codomain.
    pub fn then_transform(&self, t: &Transform<F>) -> Isogeny<F> {
        let u2 = t.u.clone() * t.u.clone();
        let u3 = u2.clone() * t.u.clone();
        let inv_u2 = F::one() / u2;
        let inv_u3 = F::one() / u3;
        // x' = (X - r)/u^2, y' = (Y - s (X - r) - t)/u^3 over the common denominator k^3
        let shifted = &self.x_num - &self.x_den.scale(&t.r);
        let y_const = &(&self.y_const - &(&shifted * &self.kernel).scale(&t.s)) - &self.y_den.scale(&t.t);
        Isogeny {
            domain: self.domain.clone(),
            codomain: self.codomain.transform(t),
            kernel: self.kernel.clone(),
            x_num: shifted.scale(&inv_u2),
            x_den: self.x_den.clone(),
            y_const: y_const.scale(&inv_u3),
            y_lin: self.y_lin.scale(&inv_u3),
            y_den: self.y_den.clone(),
        }
    }

    /// The maps send the generic point of the domain onto the codomain.
    ///
    /// With y^2 eliminated through the domain equation, both the coefficient
    /// of y and the part free of y must vanish.
    pub fn maps_onto_codomain(&self) -> bool {
        let e = &self.domain;
        let c = &self.codomain;
        let k = &self.kernel;
        let (a, b) = (&self.y_const, &self.y_lin);
        let xn = &self.x_num;
        let k2 = &self.x_den;
        let k3 = &self.y_den;
        // (2y + a1 x + a3)^2 = beta(x), so y-free part of y^2 is f(x) and
        // y^2 = f(x) - (a1 x + a3) y with f the domain cubic
        let f = e.cubic();
        let lin = Poly::new(vec![e.a3.clone(), e.a1.clone()]);
        let y_part = &(&(a * b).scale(&F::from_int(2)) - &(&(b * b) * &lin))
            + &(&(&(xn * k).scale(&c.a1) + &k3.scale(&c.a3)) * b);
        if !y_part.is_zero() {
            return false;
        }
        let lhs = &(&(&(a * a) + &(&(b * b) * &f)) + &(&(xn * k) * a).scale(&c.a1)) + &(k3 * a).scale(&c.a3);
        let x2 = xn * xn;
        let rhs = &(&(&(&x2 * xn) + &(&x2 * k2).scale(&c.a2)) + &(xn * &(k2 * k2)).scale(&c.a4))
            + &(k3 * k3).scale(&c.a6);
        lhs == rhs
    }
}
