use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::surd::SurdElement;
use super::{kubert_curve, kubert_isogeny, kubert_kernel, quotient_curve, Constants};
use crate::curves::{curve_to_json, CubicModel, MinimalModel, WeierstrassCurve, DEFAULT_TRIAL_BOUND};
use crate::error::{Error, Result};
use crate::exact::{format_rational, rational_sqrt, Poly, Rational, RationalFunction};
use crate::isogeny::Isogeny;
use crate::json;

/// A point of F_i over K: rational abscissa, ordinate b sqrt(radicand).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPoint {
    pub x: Rational,
    pub y: SurdElement,
}

/// The three-curve construction specialized at one value of t.
#[derive(Clone, Debug)]
pub struct MestreSpecialization {
    pub constants: Constants,
    pub t: Rational,
    pub u: [Rational; 3],
    /// E_i as y^2 = cubic
    pub kubert: [CubicModel; 3],
    /// F_i as y^2 = g_{u_i}(x)
    pub quotients: [CubicModel; 3],
    /// Weierstrass models X = A x of E_i and F_i
    pub e_curves: [WeierstrassCurve; 3],
    pub f_curves: [WeierstrassCurve; 3],
    pub isogenies: [Isogeny; 3],
    /// Globally minimal models of F_i, with the map from `f_curves`.
    pub f_minimal: [MinimalModel; 3],
    /// Primes where the Néron fibre of F_i has a multiple of 5 components.
    pub five_component_primes: [Vec<u64>; 3],
    pub x_of_z: RationalFunction,
    pub v_of_z: RationalFunction,
    pub w_of_z: RationalFunction,
    pub f_model: Poly<Rational>,
    /// f = lambda^2 g_{u_1} = lambda^2 v^2 g_{u_2} = lambda^2 w^2 g_{u_3} along C;
    /// the same constant serves all three curves.
    pub scale: Rational,
}

fn triple<T, F: FnMut(usize) -> Result<T>>(mut f: F) -> Result<[T; 3]> {
    Ok([f(0)?, f(1)?, f(2)?])
}

impl MestreSpecialization {
    /// Builds every model from the constants table without checking the
    /// published identities; see [`super::identity_suite`] for those.
    pub fn new(constants: &Constants) -> Result<Self> {
        let t = constants.t()?;
        let u = constants.u_values()?;
        let kubert = triple(|i| kubert_curve(&u[i]))?;
        let quotients = triple(|i| quotient_curve(&u[i]))?;
        let e_curves = triple(|i| Ok(kubert[i].weierstrass()))?;
        let f_curves = triple(|i| Ok(quotients[i].weierstrass()))?;
        let isogenies = triple(|i| kubert_isogeny(&u[i]))?;
        let f_minimal = triple(|i| f_curves[i].minimal_model(DEFAULT_TRIAL_BOUND))?;
        let five_component_primes = triple(|i| f_minimal[i].five_component_primes(DEFAULT_TRIAL_BOUND))?;
        let (xn, xd) = constants.x_of_z_parts()?;
        let (vn, vd) = constants.v_of_z_parts()?;
        let (wn, wd) = constants.w_of_z_parts()?;
        let f_model = constants.f_model()?;
        let g1 = quotients[0].cubic();
        let ratio = match (f_model.leading(), g1.leading()) {
            (Some(a), Some(b)) => a / b,
            _ => return Err(Error::InvalidArgument("empty model".into())),
        };
        let scale = rational_sqrt(&ratio).ok_or_else(|| {
            Error::InvalidArgument("f and g_u1 differ by a non-square factor".into())
        })?;
        Ok(MestreSpecialization {
            constants: constants.clone(),
            t,
            u,
            kubert,
            quotients,
            e_curves,
            f_curves,
            isogenies,
            f_minimal,
            five_component_primes,
            x_of_z: RationalFunction::new(xn, xd),
            v_of_z: RationalFunction::new(vn, vd),
            w_of_z: RationalFunction::new(wn, wd),
            f_model,
            scale,
        })
    }

    pub fn paper() -> Result<Self> {
        Self::new(&Constants::paper())
    }

    pub fn x_at(&self, z: &Rational) -> Result<Rational> {
        self.x_of_z.eval(z)
    }

    /// f(x(z)); K = Q(sqrt(radicand)).
    pub fn radicand(&self, z: &Rational) -> Result<Rational> {
        Ok(self.f_model.eval(&self.x_at(z)?))
    }

    /// Q_i = (x(z), y_i) on y^2 = g_{u_i}(x) with y_1 = y/lambda,
    /// y_2 = y_1/v(z), y_3 = y_1/w(z) and y = sqrt(radicand).
    pub fn points_on_quotients(&self, z: &Rational) -> Result<[QuotientPoint; 3]> {
        let x = self.x_at(z)?;
        let r = self.f_model.eval(&x);
        let v = self.v_of_z.eval(z)?;
        let w = self.w_of_z.eval(z)?;
        if v.is_zero() || w.is_zero() {
            return Err(Error::Pole);
        }
        let b1 = Rational::one() / &self.scale;
        let factors = [b1.clone(), &b1 / &v, &b1 / &w];
        let pts = triple(|i| {
            Ok(QuotientPoint {
                x: x.clone(),
                y: SurdElement::pure(factors[i].clone(), r.clone())
                    .map_err(|_| Error::FieldCollapse(format_rational(&r)))?,
            })
        })?;
        for (i, p) in pts.iter().enumerate() {
            let y2 = p.y.square().as_rational().expect("pure surd squares to a rational");
            if y2 != self.quotients[i].cubic().eval(&p.x) {
                return Err(Error::InvalidArgument(format!(
                    "point {} is not on y^2 = g_u{}(x)",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(pts)
    }

    /// Abscissa of Q_i on the Weierstrass model of F_i.
    pub fn weierstrass_x(&self, i: usize, x: &Rational) -> Rational {
        self.quotients[i].to_weierstrass_x(x)
    }

    /// Polynomial whose roots are the abscissae on E_i of the preimages of
    /// the point of F_i with abscissa `x` (in the y^2 = g model).
    pub fn preimage_quintic(&self, i: usize, x: &Rational) -> Result<Poly<Rational>> {
        let q = self.isogenies[i].preimage_polynomial(&self.weierstrass_x(i, x));
        if q.degree() != Some(5) {
            return Err(Error::DegenerateAbscissa);
        }
        Ok(q)
    }

    pub fn dump(&self) -> Result<SpecializationDump> {
        let mut curves = Vec::new();
        for i in 0..3 {
            let m = &self.f_minimal[i];
            let s = self.five_component_primes[i].clone();
            let singular = s
                .iter()
                .map(|&p| match crate::sieve::singular_abscissa(self, i, p) {
                    Ok(x) => Ok(SingularEntry { prime: p, abscissa: Some(x) }),
                    Err(Error::BadReduction { .. }) => Ok(SingularEntry { prime: p, abscissa: None }),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>>>()?;
            curves.push(CurveDump {
                index: i + 1,
                u: format_rational(&self.u[i]),
                kubert_cubic: json::poly(self.kubert[i].cubic()),
                quotient_cubic: json::poly(self.quotients[i].cubic()),
                kubert_weierstrass: curve_to_json(&self.e_curves[i]),
                kernel: json::poly(&kubert_kernel(&self.u[i])),
                quotient_weierstrass: curve_to_json(&self.f_curves[i]),
                quotient_minimal: curve_to_json(&m.curve),
                minimal_discriminant: m.discriminant.to_string(),
                five_component_primes: s,
                singular_abscissae: singular,
            });
        }
        Ok(SpecializationDump {
            record: "specialization".into(),
            schema: 1,
            constants: self.constants.clone(),
            scale: format_rational(&self.scale),
            x_of_z: [json::poly(self.x_of_z.num()), json::poly(self.x_of_z.den())],
            v_of_z: [json::poly(self.v_of_z.num()), json::poly(self.v_of_z.den())],
            w_of_z: [json::poly(self.w_of_z.num()), json::poly(self.w_of_z.den())],
            f_model: json::poly(&self.f_model),
            curves,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularEntry {
    pub prime: u64,
    /// `None` where the y^2 = g(x) model is not minimal and the node has no
    /// finite residue in its coordinates
    pub abscissa: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDump {
    pub index: usize,
    pub u: String,
    pub kubert_cubic: Vec<String>,
    pub quotient_cubic: Vec<String>,
    pub kubert_weierstrass: Vec<String>,
    pub kernel: Vec<String>,
    pub quotient_weierstrass: Vec<String>,
    pub quotient_minimal: Vec<String>,
    pub minimal_discriminant: String,
    pub five_component_primes: Vec<u64>,
    pub singular_abscissae: Vec<SingularEntry>,
}

/// Contents of `specialization.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationDump {
    pub record: String,
    pub schema: u32,
    pub constants: Constants,
    pub scale: String,
    pub x_of_z: [Vec<String>; 2],
    pub v_of_z: [Vec<String>; 2],
    pub w_of_z: [Vec<String>; 2],
    pub f_model: Vec<String>,
    pub curves: Vec<CurveDump>,
}
