//! Rational maps of the projective line with rational coefficients.
//!
//! A map is stored as a normalized homogeneous pair `(F, G)` of formal degree
//! `d`, kept in dehomogenized form `f(z) = F(z, 1)`, `g(z) = G(z, 1)`:
//! all coefficients are p-integral and at least one is a unit.

mod periodic;
mod record;
mod reduction;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::padic::{pow_p, FieldContext, FieldElement, PadicError, ProjPoint};
use crate::poly::{Poly, PolyError};

pub use periodic::{classify, multiplier, periodic_points, ApproxPeriodicPoint, CycleClass, PeriodicOrbit, PeriodicReport};
pub use record::MapRecord;
pub use reduction::{reduction_report, ReductionReport};

/// Default bound on `d^n` for symbolic iteration.
pub const DEFAULT_DEGREE_CAP: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("numerator and denominator are both zero")]
    ZeroPair,
    #[error("map has degree {0}; at least 1 is required")]
    DegreeTooLow(usize),
    #[error("numerator and denominator share the factor {factor}")]
    CommonFactor { factor: Poly },
    #[error("symbolic iterate would have degree {degree}^{count}, above the cap {cap}")]
    DegreeCap { degree: usize, count: usize, cap: usize },
    #[error("orbit point {index} does not map to the next point ({point} -> {image})")]
    NotPeriodic { index: usize, point: String, image: String },
    #[error("empty orbit")]
    EmptyOrbit,
    #[error("the iterate R^{0} is the identity, so every point is fixed by it")]
    IdentityIterate(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    ctx: FieldContext,
    num: Poly,
    den: Poly,
    degree: usize,
}

impl RationalMap {
    /// Builds `R = num/den` from a coprime pair and normalizes it.
    pub fn normalize(ctx: FieldContext, num: Poly, den: Poly) -> Result<Self, MapError> {
        if num.is_zero() && den.is_zero() {
            return Err(MapError::ZeroPair);
        }
        let g = Poly::gcd(&num, &den);
        if g.degree().unwrap_or(0) > 0 {
            return Err(MapError::CommonFactor { factor: g });
        }
        let degree = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        if degree == 0 || num.is_zero() || den.is_zero() {
            return Err(MapError::DegreeTooLow(if num.is_zero() || den.is_zero() { 0 } else { degree }));
        }
        let minv = num
            .min_valuation(ctx.p())
            .into_iter()
            .chain(den.min_valuation(ctx.p()))
            .min()
            .expect("nonzero pair");
        let scale = pow_p(ctx.p(), -minv);
        Ok(RationalMap {
            ctx,
            num: num.scale(&scale),
            den: den.scale(&scale),
            degree,
        })
    }

    /// Like [`RationalMap::normalize`], but cancels any common factor first.
    pub fn from_fraction(ctx: FieldContext, num: Poly, den: Poly) -> Result<Self, MapError> {
        if num.is_zero() && den.is_zero() {
            return Err(MapError::ZeroPair);
        }
        let g = Poly::gcd(&num, &den);
        if g.degree().unwrap_or(0) > 0 {
            return Self::normalize(ctx, num.exact_div(&g), den.exact_div(&g));
        }
        Self::normalize(ctx, num, den)
    }

    pub fn identity(ctx: FieldContext) -> Self {
        Self::normalize(ctx, Poly::x(), Poly::one()).expect("identity is a valid map")
    }

    /// `(a z + b) / (c z + d)`.
    pub fn mobius(ctx: FieldContext, a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self, MapError> {
        Self::normalize(ctx, Poly::new(vec![b, a]), Poly::new(vec![d, c]))
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn with_ctx(&self, ctx: FieldContext) -> Result<Self, MapError> {
        let joined = self.ctx.join(&ctx)?;
        Ok(RationalMap {
            ctx: joined,
            ..self.clone()
        })
    }

    /// Homogeneous evaluation `[F(X,Y) : G(X,Y)]`; poles and infinity need
    /// no special cases.
    pub fn eval(&self, point: &ProjPoint) -> ProjPoint {
        let x = point.x();
        let y = point.y();
        let fx = self.num.eval_homogeneous(self.degree, x, y);
        let gx = self.den.eval_homogeneous(self.degree, x, y);
        ProjPoint::new(fx, gx).expect("coprime pair has no common zero")
    }

    /// Affine convenience wrapper: `None` when the image is infinity.
    pub fn eval_affine(&self, z: &FieldElement) -> Option<FieldElement> {
        self.eval(&ProjPoint::affine(z.clone())).to_affine()
    }

    /// `R^n(point)` by repeated evaluation.
    pub fn iterate(&self, point: &ProjPoint, n: usize) -> ProjPoint {
        (0..n).fold(point.clone(), |acc, _| self.eval(&acc))
    }

    /// `self ∘ inner`, reduced and normalized.
    pub fn compose(&self, inner: &RationalMap) -> RationalMap {
        let s = &inner.num;
        let t = &inner.den;
        let d = self.degree;
        let spows: Vec<Poly> = (0..=d).map(|i| s.pow(i)).collect();
        let tpows: Vec<Poly> = (0..=d).map(|i| t.pow(i)).collect();
        let homog = |f: &Poly| {
            (0..=d).fold(Poly::zero(), |acc, i| {
                let c = f.coeff(i);
                if c.is_zero() {
                    acc
                } else {
                    &acc + &(&spows[i] * &tpows[d - i]).scale(&c)
                }
            })
        };
        let ctx = self.ctx.join(&inner.ctx).expect("maps share a prime");
        RationalMap::from_fraction(ctx, homog(&self.num), homog(&self.den)).expect("composition of nonconstant maps is nonconstant")
    }

    /// Exact symbolic `n`-fold composition, refused when `d^n > cap`.
    pub fn compose_symbolic(&self, n: usize, cap: usize) -> Result<RationalMap, MapError> {
        let too_big = MapError::DegreeCap {
            degree: self.degree,
            count: n,
            cap,
        };
        let total = u32::try_from(n)
            .ok()
            .and_then(|n| self.degree.checked_pow(n))
            .ok_or(too_big.clone())?;
        if total > cap {
            return Err(too_big);
        }
        if n == 0 {
            return Ok(RationalMap::identity(self.ctx));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// Conjugate by `z -> 1/z`: `1 / R(1/z)`.
    pub fn conjugate_by_inversion(&self) -> RationalMap {
        RationalMap::normalize(self.ctx, self.den.reverse(self.degree), self.num.reverse(self.degree))
            .expect("inversion preserves coprimality")
    }

    /// `h ∘ self ∘ h^{-1}` for a Möbius map `h = (a z + b)/(c z + d)`.
    pub fn conjugate_by_mobius(&self, a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> Result<RationalMap, MapError> {
        let h = RationalMap::mobius(self.ctx, a.clone(), b.clone(), c.clone(), d.clone())?;
        let h_inv = RationalMap::mobius(self.ctx, d.clone(), -b.clone(), -c.clone(), a.clone())?;
        Ok(h.compose(&self.compose(&h_inv)))
    }

    /// Local expression of `R` between charts: the identity chart for finite
    /// points and `w = 1/z` for infinity.
    fn chart_expression(&self, source_at_infinity: bool, target_at_infinity: bool) -> (Poly, Poly) {
        let (mut n, mut d) = if source_at_infinity {
            (self.num.reverse(self.degree), self.den.reverse(self.degree))
        } else {
            (self.num.clone(), self.den.clone())
        };
        if target_at_infinity {
            std::mem::swap(&mut n, &mut d);
        }
        (n, d)
    }

    /// Derivative of `R` at `point` read in the charts of `point` and its
    /// image.
    pub fn chart_derivative(&self, point: &ProjPoint) -> FieldElement {
        let image = self.eval(point);
        let (n, d) = self.chart_expression(point.is_infinity(), image.is_infinity());
        let local = point.to_affine().unwrap_or_else(|| FieldElement::zero(point.ctx()));
        let dn = n.derivative();
        let dd = d.derivative();
        let nv = n.eval_field(&local);
        let dv = d.eval_field(&local);
        (dn.eval_field(&local) * &dv - nv * dd.eval_field(&local)) / (&dv * &dv)
    }

    /// Re-normalizing an already normalized map changes nothing.
    pub fn renormalized(&self) -> RationalMap {
        RationalMap::normalize(self.ctx, self.num.clone(), self.den.clone()).expect("already valid")
    }

    /// True when `self` and `other` agree as rational functions.
    pub fn same_function(&self, other: &RationalMap) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// The ratio `self/other` of numerators when the two are proportional
    /// pairs, i.e. the scalar `c` with `(F, G) = c (F', G')`.
    pub fn proportionality(&self, other: &RationalMap) -> Option<BigRational> {
        if !self.same_function(other) || self.degree != other.degree {
            return None;
        }
        let (a, b) = if !self.num.is_zero() {
            (self.num.leading()?, other.num.leading()?)
        } else {
            (self.den.leading()?, other.den.leading()?)
        };
        Some(a / b)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
