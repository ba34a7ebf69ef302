use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{MapError, RationalMap};
use crate::padic::{FieldElement, HalfInt, ProjPoint, Valuation};
use crate::poly::{padic_roots, PadicApprox, Poly, RootCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleClass {
    SuperAttracting,
    Attracting,
    Repelling,
    Indifferent,
}

impl CycleClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CycleClass::SuperAttracting => "super-attracting",
            CycleClass::Attracting => "attracting",
            CycleClass::Repelling => "repelling",
            CycleClass::Indifferent => "indifferent",
        }
    }

    fn from_valuation(v: Valuation) -> Self {
        match v {
            Valuation::Infinite => CycleClass::SuperAttracting,
            Valuation::Finite(v) if v > HalfInt::ZERO => CycleClass::Attracting,
            Valuation::Finite(v) if v < HalfInt::ZERO => CycleClass::Repelling,
            Valuation::Finite(_) => CycleClass::Indifferent,
        }
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Class of a cycle from its multiplier: `0`, `|λ| < 1`, `|λ| > 1`, `|λ| = 1`.
pub fn classify(lambda: &FieldElement) -> CycleClass {
    CycleClass::from_valuation(lambda.valuation())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicOrbit {
    pub points: Vec<ProjPoint>,
    pub multiplier: FieldElement,
    pub class: CycleClass,
}

impl PeriodicOrbit {
    pub fn period(&self) -> usize {
        self.points.len()
    }
}

/// A fixed point of `R^n` known only to finite p-adic precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxPeriodicPoint {
    pub root: PadicApprox,
    /// `vp((R^n)'(x))` when the precision determines it.
    pub multiplier_valuation: Option<i64>,
    pub class: Option<CycleClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicReport {
    pub period: usize,
    /// Exact cycles of minimal period exactly `period`.
    pub orbits: Vec<PeriodicOrbit>,
    /// Lifted fixed points of `R^period` (minimal period divides `period`).
    pub approximate: Vec<ApproxPeriodicPoint>,
    /// Newton-polygon certificates for fixed points of `R^period` that are
    /// neither exact nor lifted.
    pub certificates: Vec<RootCertificate>,
    pub search_truncated: bool,
}

/// Multiplier of a cycle by the chain rule along the orbit, reading the
/// point at infinity in the chart `w = 1/z`.
pub fn multiplier(map: &RationalMap, orbit: &[ProjPoint]) -> Result<FieldElement, MapError> {
    if orbit.is_empty() {
        return Err(MapError::EmptyOrbit);
    }
    for (i, pt) in orbit.iter().enumerate() {
        let next = &orbit[(i + 1) % orbit.len()];
        let image = map.eval(pt);
        if &image != next {
            return Err(MapError::NotPeriodic {
                index: i,
                point: pt.to_string(),
                image: image.to_string(),
            });
        }
    }
    let ctx = orbit[0].ctx();
    Ok(orbit.iter().fold(FieldElement::one(ctx), |acc, pt| acc * map.chart_derivative(pt)))
}

/// Periodic points of period `n`: fixed points of `R^n` from the roots of
/// `num_n(z) - z den_n(z)` together with a direct check of infinity.
pub fn periodic_points(map: &RationalMap, n: usize, precision: u32, cap: usize) -> Result<PeriodicReport, MapError> {
    let iterate = map.compose_symbolic(n, cap)?;
    let ctx = map.ctx();
    let fixed_poly = iterate.num() - &(&Poly::x() * iterate.den());
    if fixed_poly.is_zero() {
        return Err(MapError::IdentityIterate(n));
    }
    let roots = padic_roots(&fixed_poly, ctx, precision)?;

    let mut candidates: Vec<ProjPoint> = roots
        .exact
        .iter()
        .map(|r| ProjPoint::affine(FieldElement::from_rational(ctx, r.value.clone())))
        .collect();
    let infinity = ProjPoint::infinity(ctx);
    if map.iterate(&infinity, n) == infinity {
        candidates.push(infinity);
    }

    let mut seen = HashSet::new();
    let mut orbits = Vec::new();
    for start in candidates {
        if seen.contains(&start) {
            continue;
        }
        let mut points = vec![start.clone()];
        let mut cur = map.eval(&start);
        while cur != start && points.len() <= n {
            points.push(cur.clone());
            cur = map.eval(&cur);
        }
        seen.extend(points.iter().cloned());
        if points.len() != n {
            continue;
        }
        let lambda = multiplier(map, &points)?;
        let class = classify(&lambda);
        orbits.push(PeriodicOrbit {
            points,
            multiplier: lambda,
            class,
        });
    }

    let approximate = roots
        .lifted
        .into_iter()
        .map(|root| {
            let multiplier_valuation = approximate_multiplier_valuation(&iterate, &root);
            let class = multiplier_valuation.map(|v| if v > 0 { CycleClass::Attracting } else { CycleClass::Indifferent });
            ApproxPeriodicPoint {
                root,
                multiplier_valuation,
                class,
            }
        })
        .collect();

    Ok(PeriodicReport {
        period: n,
        orbits,
        approximate,
        certificates: roots.residual,
        search_truncated: roots.search_truncated,
    })
}

/// `vp((R^n)'(x))` for an integral approximate root `x`, provided the
/// denominator of `R^n` is a unit there and the derivative is nonzero at the
/// available precision. The normalized iterate has integral coefficients, so
/// the derivative is then an integer mod `p^precision`.
fn approximate_multiplier_valuation(iterate: &RationalMap, root: &PadicApprox) -> Option<i64> {
    if root.shift < 0 {
        return None;
    }
    let p = BigInt::from(root.p);
    let m = p.pow(root.precision);
    let x = root.value().to_integer();
    let reduce = |poly: &Poly| -> Option<BigInt> {
        poly.coeffs().iter().rev().try_fold(BigInt::zero(), |acc, c| {
            let inv = mod_inverse(c.denom(), &m)?;
            Some((acc * &x + c.numer() * inv).mod_floor(&m))
        })
    };
    let n = reduce(iterate.num())?;
    let d = reduce(iterate.den())?;
    let dn = reduce(&iterate.num().derivative())?;
    let dd = reduce(&iterate.den().derivative())?;
    if d.is_multiple_of(&p) {
        return None;
    }
    let top = (dn * &d - n * dd).mod_floor(&m);
    if top.is_zero() {
        return None;
    }
    let mut v = 0i64;
    let mut t = top.abs();
    while t.is_multiple_of(&p) {
        t /= &p;
        v += 1;
    }
    Some(v)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    (e.gcd == BigInt::from(1)).then(|| e.x.mod_floor(m))
}
