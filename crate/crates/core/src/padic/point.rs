use std::fmt;

use super::element::residue_of_rational;
use super::exponent::{HalfInt, Norm, Valuation};
use super::{FieldContext, FieldElement, PadicError};

/// A point `[X:Y]` of the projective line over `Q(sqrt p)`.
///
/// Stored in the unique canonical form `[z:1]` with `|z| <= 1`, or `[1:w]`
/// with `|w| < 1` (`w = 0` is infinity), so `min(vp(X), vp(Y)) = 0` and
/// structural equality is projective equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    x: FieldElement,
    y: FieldElement,
}

/// Reduction of a point modulo the maximal ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueValue {
    Finite(u64),
    Infinity,
}

impl fmt::Display for ResidueValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueValue::Finite(r) => write!(f, "{r}"),
            ResidueValue::Infinity => write!(f, "inf"),
        }
    }
}

impl ProjPoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Result<Self, PadicError> {
        let ctx = x.ctx().join(&y.ctx())?;
        if y.is_zero() {
            if x.is_zero() {
                return Err(PadicError::DegeneratePoint);
            }
            return Ok(Self::infinity(ctx));
        }
        Ok(Self::affine(x.checked_div(&y)?))
    }

    pub fn affine(z: FieldElement) -> Self {
        let ctx = z.ctx();
        if z.valuation() >= Valuation::Finite(HalfInt::ZERO) {
            ProjPoint {
                x: z,
                y: FieldElement::one(ctx),
            }
        } else {
            ProjPoint {
                x: FieldElement::one(ctx),
                y: z.inv(),
            }
        }
    }

    pub fn infinity(ctx: FieldContext) -> Self {
        ProjPoint {
            x: FieldElement::one(ctx),
            y: FieldElement::zero(ctx),
        }
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn y(&self) -> &FieldElement {
        &self.y
    }

    pub fn ctx(&self) -> FieldContext {
        self.x.ctx()
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Affine coordinate `X/Y`, or `None` at infinity.
    pub fn to_affine(&self) -> Option<FieldElement> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x / &self.y)
        }
    }

    /// Reduction modulo the maximal ideal; points outside the unit ball go to
    /// infinity.
    pub fn reduce(&self) -> ResidueValue {
        if self.y.valuation() > Valuation::Finite(HalfInt::ZERO) {
            return ResidueValue::Infinity;
        }
        // Canonical form guarantees y = 1 here; the sqrt(p) part of x has
        // positive valuation and vanishes in the residue field.
        let z = &self.x / &self.y;
        let r = residue_of_rational(z.a(), z.p()).expect("integral point has integral rational part");
        ResidueValue::Finite(r)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_affine() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "inf"),
        }
    }
}

/// Non-archimedean chordal distance
/// `|X1 Y2 - X2 Y1| / (max(|X1|,|Y1|) max(|X2|,|Y2|))`.
pub fn chordal(a: &ProjPoint, b: &ProjPoint) -> Result<Norm, PadicError> {
    let ctx = a.ctx().join(&b.ctx())?;
    let cross = a.x.checked_mul(&b.y)?.checked_sub(&b.x.checked_mul(&a.y)?)?;
    let scale_a = a.x.norm().max(a.y.norm());
    let scale_b = b.x.norm().max(b.y.norm());
    Ok(cross.norm().checked_div(scale_a * scale_b).unwrap_or_else(|| Norm::zero(ctx.p())))
}
