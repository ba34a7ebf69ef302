use num_rational::Rational64;

use super::{Poly, PolyError};
use crate::padic::{rational_valuation, FieldContext};

/// One edge of a Newton polygon. Slope `s` with horizontal length `l`
/// certifies exactly `l` roots of valuation `-s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational64,
    pub length: usize,
}

impl Segment {
    pub fn root_valuation(&self) -> Rational64 {
        -self.slope
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Edges with strictly increasing slopes.
    pub segments: Vec<Segment>,
    /// Multiplicity of the root `z = 0`, which the polygon does not cover.
    pub zero_order: usize,
    /// Hull vertices `(i, vp(a_i))`.
    pub vertices: Vec<(usize, i64)>,
}

impl NewtonPolygon {
    /// Root valuations with multiplicity, ascending, excluding roots at zero.
    pub fn root_valuations(&self) -> Vec<Rational64> {
        let mut out: Vec<Rational64> = self
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.root_valuation(), s.length))
            .collect();
        out.sort();
        out
    }
}

/// Lower convex hull of the points `(i, vp(a_i))` over the nonzero
/// coefficients.
pub fn newton_polygon(f: &Poly, ctx: FieldContext) -> Result<NewtonPolygon, PolyError> {
    let zero_order = f.zero_order().ok_or(PolyError::ZeroPolynomial)?;
    let points: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| rational_valuation(c, ctx.p()).map(|v| (i, v)))
        .collect();

    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // pop b when it lies on or above the chord a -> pt
            let cross =
                (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128) - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment {
                slope: Rational64::new(w[1].1 - w[0].1, len as i64),
                length: len,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        segments,
        zero_order,
        vertices: hull,
    })
}
