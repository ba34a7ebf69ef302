use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exponent::{HalfInt, Norm, Valuation};
use super::{FieldContext, PadicError};

/// Exponent of `p` in a nonzero rational; `None` for zero.
pub fn rational_valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    Some(int_valuation(q.numer(), &p) - int_valuation(q.denom(), &p))
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Residue in `F_p` of a rational with nonnegative valuation.
pub fn residue_of_rational(q: &BigRational, p: u64) -> Option<u64> {
    if q.is_zero() {
        return Some(0);
    }
    if rational_valuation(q, p)? < 0 {
        return None;
    }
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb);
    let den = q.denom().mod_floor(&pb);
    let inv = den.modpow(&(&pb - 2u32), &pb);
    let r = (num * inv).mod_floor(&pb);
    Some(u64::try_from(r).expect("residue below p"))
}

/// An exact element `a + b*sqrt(p)` of `Q(sqrt p)`; `b = 0` in the unramified
/// context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ctx: FieldContext,
    a: BigRational,
    b: BigRational,
}

impl FieldElement {
    pub fn new(ctx: FieldContext, a: BigRational, b: BigRational) -> Result<Self, PadicError> {
        if !b.is_zero() && !ctx.is_ramified() {
            return Err(PadicError::Parse {
                input: format!("{a} + {b}*sqrt({})", ctx.p()),
                reason: "sqrt(p) requires the ramified context".into(),
            });
        }
        Ok(FieldElement { ctx, a, b })
    }

    pub fn from_rational(ctx: FieldContext, a: BigRational) -> Self {
        FieldElement {
            ctx,
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(ctx: FieldContext, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(ctx: FieldContext, num: i64, den: i64) -> Self {
        Self::from_rational(ctx, BigRational::new(num.into(), den.into()))
    }

    pub fn zero(ctx: FieldContext) -> Self {
        Self::from_int(ctx, 0)
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::from_int(ctx, 1)
    }

    /// An element of valuation exactly `m`: `p^floor(m)`, times `sqrt p` when
    /// `m` is not an integer. Half-integer `m` needs the ramified context.
    pub fn uniformizer_pow(ctx: FieldContext, m: HalfInt) -> Result<Self, PadicError> {
        let k = m.floor();
        let pk = pow_p(ctx.p(), k);
        if m.is_integer() {
            Ok(Self::from_rational(ctx, pk))
        } else {
            Self::new(ctx, BigRational::zero(), pk)
        }
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `sqrt p`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn with_ctx(&self, ctx: FieldContext) -> Result<Self, PadicError> {
        let joined = self.ctx.join(&ctx)?;
        if joined != ctx {
            return Self::new(ctx, self.a.clone(), self.b.clone());
        }
        Ok(FieldElement {
            ctx,
            a: self.a.clone(),
            b: self.b.clone(),
        })
    }

    /// `vp(a + b sqrt p) = min(vp(a), vp(b) + 1/2)`; the two candidates never
    /// tie because one is an integer and the other is not.
    pub fn valuation(&self) -> Valuation {
        let p = self.p();
        let va = rational_valuation(&self.a, p).map(HalfInt::from_int);
        let vb = rational_valuation(&self.b, p).map(|v| HalfInt::from_int(v) + HalfInt::from_halves(1));
        match (va, vb) {
            (None, None) => Valuation::Infinite,
            (Some(x), None) | (None, Some(x)) => Valuation::Finite(x),
            (Some(x), Some(y)) => Valuation::Finite(x.min(y)),
        }
    }

    pub fn norm(&self) -> Norm {
        Norm::from_valuation(self.p(), self.valuation())
    }

    /// Galois conjugate `a - b sqrt p`.
    pub fn conjugate(&self) -> Self {
        FieldElement {
            ctx: self.ctx,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - p b^2` down to `Q`.
    pub fn field_norm(&self) -> BigRational {
        let p = BigRational::from_integer(self.p().into());
        &self.a * &self.a - p * &self.b * &self.b
    }

    pub fn checked_inv(&self) -> Result<Self, PadicError> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let n = self.field_norm();
        Ok(FieldElement {
            ctx: self.ctx,
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, PadicError> {
        let ctx = self.ctx.join(&rhs.ctx)?;
        Ok(FieldElement {
            ctx,
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, PadicError> {
        let ctx = self.ctx.join(&rhs.ctx)?;
        Ok(FieldElement {
            ctx,
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, PadicError> {
        let ctx = self.ctx.join(&rhs.ctx)?;
        let p = BigRational::from_integer(ctx.p().into());
        Ok(FieldElement {
            ctx,
            a: &self.a * &rhs.a + p * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, PadicError> {
        self.checked_mul(&rhs.checked_inv()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            ctx: self.ctx,
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = FieldElement::one(self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

pub(crate) fn pow_p(p: u64, k: i64) -> BigRational {
    let base = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: self.ctx,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -self.clone()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p();
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b_abs = self.b.abs();
        let b_term = if b_abs.is_one() {
            format!("sqrt({p})")
        } else {
            format!("{b_abs}*sqrt({p})")
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{b_term}")
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {b_term}", self.a)
        }
    }
}
