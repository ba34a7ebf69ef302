//! Dense univariate polynomials over `Q`, plus the p-adic root machinery
//! built on them: resultants, Newton polygons and Hensel lifting.

mod fp;
mod hensel;
mod newton;
mod resultant;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::padic::{rational_valuation, FieldContext, FieldElement};

pub use fp::FpPoly;
pub use hensel::{hensel_lift, padic_roots, CertificateReason, ExactRoot, PadicApprox, RootCertificate, RootReport};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use resultant::{resultant, resultant_formal};
pub use roots::{rational_roots, DEFAULT_DIVISOR_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("residue {residue} is not a simple root mod {p}: {detail}")]
    NotSimpleRoot { residue: u64, p: u64, detail: String },
    #[error("coefficient {coefficient} is not {p}-integral")]
    NotIntegral { coefficient: String, p: u64 },
}

/// A polynomial with rational coefficients, ascending degree, trailing zeros
/// trimmed. The zero polynomial has no coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `z`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `z - a`.
    pub fn linear_root(a: &BigRational) -> Self {
        Self::new(vec![-a.clone(), BigRational::one()])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at `z = 0`.
    pub fn zero_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    pub fn eval_field(&self, z: &FieldElement) -> FieldElement {
        let ctx = z.ctx();
        self.coeffs.iter().rev().fold(FieldElement::zero(ctx), |acc, c| {
            &acc * z + FieldElement::from_rational(ctx, c.clone())
        })
    }

    /// Homogeneous evaluation of `Y^d f(X/Y)` with formal degree `d`.
    pub fn eval_homogeneous(&self, d: usize, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let ctx = x.ctx().join(&y.ctx()).expect("coordinates share a prime");
        let mut xpows = Vec::with_capacity(d + 1);
        let mut ypows = Vec::with_capacity(d + 1);
        xpows.push(FieldElement::one(ctx));
        ypows.push(FieldElement::one(ctx));
        for i in 1..=d {
            xpows.push(&xpows[i - 1] * x);
            ypows.push(&ypows[i - 1] * y);
        }
        (0..=d).fold(FieldElement::zero(ctx), |acc, i| {
            let c = self.coeff(i);
            if c.is_zero() {
                acc
            } else {
                acc + (&xpows[i] * &ypows[d - i]).scale(&c)
            }
        })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Poly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// Coefficient list reversed with respect to formal degree `d`:
    /// `z^d f(1/z)`.
    pub fn reverse(&self, d: usize) -> Self {
        Self::new((0..=d).rev().map(|i| self.coeff(i)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if n < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Smallest valuation among the coefficients; `None` for zero.
    pub fn min_valuation(&self, p: u64) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| rational_valuation(c, p)).min()
    }

    /// Integer coefficients proportional to `self` with content 1 and a
    /// positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// `self` rescaled by a power of `p` so that the minimum
    /// coefficient valuation is zero.
    pub fn p_primitive(&self, ctx: FieldContext) -> Poly {
        match self.min_valuation(ctx.p()) {
            None => Poly::zero(),
            Some(v) => self.scale(&crate::padic::pow_p(ctx.p(), -v)),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 {
                String::new()
            } else if mag.is_integer() || i == 0 {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}z")?,
                _ => write!(f, "{coef}z^{i}")?,
            }
        }
        Ok(())
    }
}
