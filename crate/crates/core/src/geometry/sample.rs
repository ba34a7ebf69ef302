use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GeometryError, Region};
use crate::padic::{FieldContext, FieldElement, HalfInt};

/// How many admissible valuations past the boundary a disk schedule covers.
const SCHEDULE_SPAN: i64 = 6;

/// Valuations `m` on the value grid of `ctx` with `m > lo` (or `>=`) and,
/// when given, `m < hi` (or `<=`).
fn schedule(ctx: FieldContext, lo: HalfInt, lo_strict: bool, hi: Option<(HalfInt, bool)>) -> Vec<HalfInt> {
    let step = if ctx.is_ramified() { 1 } else { 2 };
    // smallest multiple of `step` halves that clears the lower bound
    let mut m = lo.halves().div_euclid(step) * step;
    while m < lo.halves() || (lo_strict && m == lo.halves()) {
        m += step;
    }
    let mut out = Vec::new();
    loop {
        let v = HalfInt::from_halves(m);
        match hi {
            Some((hi, strict)) => {
                if v > hi || (strict && v == hi) {
                    break;
                }
            }
            None => {
                if out.len() as i64 == SCHEDULE_SPAN {
                    break;
                }
            }
        }
        out.push(v);
        m += step;
    }
    out
}

/// Deterministic points `c + u * pi^m` of `region`, `pi = sqrt p` in the
/// ramified context and `p` otherwise.
///
/// The unit `u` has a leading digit in `1..p` and further base-`p` digits
/// drawn from a seeded generator, with as many digits as needed to make
/// `count` distinct points available. Around-infinity regions are sampled
/// as reciprocals of the mirrored punctured disk about 0.
pub fn sample_region(region: &Region, ctx: FieldContext, count: usize, seed: u64) -> Result<Vec<FieldElement>, GeometryError> {
    let (ctx, center, valuations, reciprocal) = match region {
        Region::Disk { center, radius_exp, open } => {
            let ctx = ctx.join(&center.ctx())?;
            (ctx, center.clone(), schedule(ctx, *radius_exp, *open, None), false)
        }
        Region::AroundInfinity { radius_exp, open } => {
            // vp(z) < k  <=>  vp(1/z) > -k
            (ctx, FieldElement::zero(ctx), schedule(ctx, -*radius_exp, *open, None), true)
        }
        Region::Annulus {
            center,
            inner_exp,
            outer_exp,
            inner_open,
            outer_open,
        } => {
            let ctx = ctx.join(&center.ctx())?;
            let vals = schedule(ctx, *outer_exp, *outer_open, Some((*inner_exp, *inner_open)));
            (ctx, center.clone(), vals, false)
        }
    };
    if valuations.is_empty() {
        return Err(GeometryError::EmptyRegion {
            region: region.to_string(),
            ctx: ctx.to_string(),
        });
    }

    let p = ctx.p();
    let per_valuation = (count * 4).div_ceil(valuations.len()) as u64;
    let mut digits = 0u32;
    while (p - 1) * p.saturating_pow(digits) < per_valuation {
        digits += 1;
    }

    let powers: Vec<FieldElement> = valuations
        .iter()
        .map(|m| FieldElement::uniformizer_pow(ctx, *m))
        .collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let slot = rng.gen_range(0..valuations.len());
        let mut unit = BigInt::from(rng.gen_range(1..p));
        let mut place = BigInt::from(p);
        for _ in 0..digits {
            unit += &place * rng.gen_range(0..p);
            place *= p;
        }
        if !seen.insert((slot, unit.clone())) {
            continue;
        }
        let offset = powers[slot].scale(&BigRational::from_integer(unit));
        let z = if reciprocal { offset.inv() } else { &center + &offset };
        out.push(z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Valuation;

    fn ctx() -> FieldContext {
        FieldContext::quadratic(5).unwrap()
    }

    fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    #[test]
    fn schedules() {
        assert_eq!(schedule(ctx(), h(1), true, Some((h(2), true))), vec![HalfInt::from_halves(3)]);
        let rational = FieldContext::rational(5).unwrap();
        assert!(schedule(rational, h(1), true, Some((h(2), true))).is_empty());
        assert_eq!(schedule(rational, h(0), false, None)[0], h(0));
        assert_eq!(schedule(ctx(), h(0), true, None)[0], HalfInt::from_halves(1));
    }

    #[test]
    fn annulus_samples_have_valuation_three_halves() {
        let ring = Region::annulus(FieldElement::zero(ctx()), h(2), h(1)).unwrap();
        let pts = sample_region(&ring, ctx(), 40, 7).unwrap();
        assert_eq!(pts.len(), 40);
        for z in &pts {
            assert_eq!(z.valuation(), Valuation::Finite(HalfInt::from_halves(3)));
            assert!(ring.contains(z));
        }
        let distinct: HashSet<_> = pts.iter().collect();
        assert_eq!(distinct.len(), 40);
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let d = Region::disk(FieldElement::zero(ctx()), h(1));
        let a = sample_region(&d, ctx(), 10, 3).unwrap();
        assert_eq!(a, sample_region(&d, ctx(), 10, 3).unwrap());
        assert_ne!(a, sample_region(&d, ctx(), 10, 4).unwrap());
        assert!(a.iter().all(|z| d.contains(z)));
    }

    #[test]
    fn around_infinity_and_empty() {
        let r = Region::around_infinity(h(-1));
        let pts = sample_region(&r, ctx(), 20, 0).unwrap();
        assert!(pts.iter().all(|z| r.contains(z)));
        let rational = FieldContext::rational(5).unwrap();
        let ring = Region::annulus(FieldElement::zero(rational), h(2), h(1)).unwrap();
        let err = sample_region(&ring, rational, 4, 0);
        assert!(matches!(err, Err(GeometryError::EmptyRegion { .. })));
    }
}
