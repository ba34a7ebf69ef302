use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use super::{newton_polygon, rational_roots, FpPoly, Poly, PolyError, DEFAULT_DIVISOR_BOUND};
use crate::padic::{pow_p, FieldContext};

/// A finite-precision element `p^shift * u` of `Q_p`, where `u` is known
/// modulo `p^precision` and stored as its residue in `[0, p^precision)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicApprox {
    pub p: u64,
    pub residue: BigInt,
    pub precision: u32,
    pub shift: i64,
}

impl PadicApprox {
    /// The rational `p^shift * residue`.
    pub fn value(&self) -> BigRational {
        pow_p(self.p, self.shift) * BigRational::from_integer(self.residue.clone())
    }

    /// Absolute precision: the value is known modulo `p^(shift + precision)`.
    pub fn absolute_precision(&self) -> i64 {
        self.shift + self.precision as i64
    }

    /// Agreement modulo the coarser of the two absolute precisions.
    pub fn compatible(&self, other: &PadicApprox) -> bool {
        if self.p != other.p {
            return false;
        }
        let bound = self.absolute_precision().min(other.absolute_precision());
        let diff = self.value() - other.value();
        match crate::padic::rational_valuation(&diff, self.p) {
            None => true,
            Some(v) => v >= bound,
        }
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{} mod {}^{}", self.residue, self.p, self.precision)
        } else {
            write!(
                f,
                "{}^({}) * ({} mod {}^{})",
                self.p, self.shift, self.residue, self.p, self.precision
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRoot {
    pub value: BigRational,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateReason {
    /// Non-integral root valuation: the roots live in a ramified extension.
    Ramified,
    /// Residue roots that are repeated (or absent) mod p; Hensel does not apply.
    UnresolvedResidue,
}

/// `count` roots of valuation `valuation` that were not produced exactly or
/// by lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCertificate {
    pub valuation: Rational64,
    pub count: usize,
    pub reason: CertificateReason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootReport {
    pub exact: Vec<ExactRoot>,
    pub lifted: Vec<PadicApprox>,
    pub residual: Vec<RootCertificate>,
    pub search_truncated: bool,
}

fn coeffs_mod(f: &Poly, modulus: &BigInt) -> Vec<BigInt> {
    f.coeffs()
        .iter()
        .map(|c| {
            let den_inv = mod_inverse(c.denom(), modulus).expect("p-integral coefficient");
            (c.numer() * den_inv).mod_floor(modulus)
        })
        .collect()
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, modulus: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(modulus))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Lifts a simple residue root `a0` of `f` to a root modulo `p^precision` by
/// Newton iteration, doubling the number of correct digits each step.
///
/// `f` is first rescaled by a power of `p` to have minimum coefficient
/// valuation zero; the residue conditions refer to that form.
pub fn hensel_lift(f: &Poly, a0: u64, precision: u32, ctx: FieldContext) -> Result<PadicApprox, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = ctx.p();
    let precision = precision.max(1);
    let f = f.p_primitive(ctx);
    let df = f.derivative();
    let reduced = FpPoly::reduce(&f, p)?;
    let dreduced = FpPoly::reduce(&df, p)?;
    let a0 = a0 % p;
    if reduced.eval(a0) != 0 {
        return Err(PolyError::NotSimpleRoot {
            residue: a0,
            p,
            detail: "f(a0) is not divisible by p".into(),
        });
    }
    if dreduced.eval(a0) == 0 {
        return Err(PolyError::NotSimpleRoot {
            residue: a0,
            p,
            detail: "f'(a0) is divisible by p".into(),
        });
    }

    let pb = BigInt::from(p);
    let target = pb.pow(precision);
    let fc = coeffs_mod(&f, &target);
    let dfc = coeffs_mod(&df, &target);
    let mut x = BigInt::from(a0);
    let mut known = 1u32;
    while known < precision {
        known = (2 * known).min(precision);
        let m = pb.pow(known);
        let fx = eval_mod(&fc, &x, &m);
        let dfx = eval_mod(&dfc, &x, &m);
        let inv = mod_inverse(&dfx, &m).expect("derivative stays a unit");
        x = (x - fx * inv).mod_floor(&m);
    }
    Ok(PadicApprox {
        p,
        residue: x.mod_floor(&target),
        precision,
        shift: 0,
    })
}

/// Roots of `f` in three tiers: exact rational roots, Hensel-lifted roots in
/// `Q_p`, and Newton-polygon certificates for whatever is left.
pub fn padic_roots(f: &Poly, ctx: FieldContext, precision: u32) -> Result<RootReport, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = ctx.p();
    let (exact, rest, search_truncated) = rational_roots(f, DEFAULT_DIVISOR_BOUND);
    let mut report = RootReport {
        exact: exact
            .into_iter()
            .map(|(value, multiplicity)| ExactRoot { value, multiplicity })
            .collect(),
        search_truncated,
        ..RootReport::default()
    };
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(report);
    }

    let np = newton_polygon(&rest, ctx)?;
    for seg in &np.segments {
        let v = seg.root_valuation();
        if !v.is_integer() {
            report.residual.push(RootCertificate {
                valuation: v,
                count: seg.length,
                reason: CertificateReason::Ramified,
            });
            continue;
        }
        let v = v.to_integer();
        // w = z / p^v turns this segment's roots into units
        let scaled = Poly::new(rest.coeffs().iter().enumerate().map(|(i, c)| c * pow_p(p, v * i as i64)).collect()).p_primitive(ctx);
        let reduced = FpPoly::reduce(&scaled, p)?;
        let dreduced = reduced.derivative();
        let mut lifted = 0;
        for w in 1..p {
            if reduced.eval(w) == 0 && dreduced.eval(w) != 0 {
                let mut approx = hensel_lift(&scaled, w, precision, ctx)?;
                approx.shift = v;
                report.lifted.push(approx);
                lifted += 1;
            }
        }
        if lifted < seg.length {
            report.residual.push(RootCertificate {
                valuation: Rational64::from_integer(v),
                count: seg.length - lifted,
                reason: CertificateReason::UnresolvedResidue,
            });
        }
    }
    Ok(report)
}
