use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Poly;

/// Largest integer whose divisors the rational-root search will enumerate.
pub const DEFAULT_DIVISOR_BOUND: u64 = 1_000_000_000_000;

/// Rational roots of `f` with multiplicity, plus the cofactor left after
/// dividing them out. The flag reports whether a coefficient exceeded the
/// divisor bound, in which case the search was skipped.
pub fn rational_roots(f: &Poly, divisor_bound: u64) -> (Vec<(BigRational, usize)>, Poly, bool) {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let Some(z0) = rest.zero_order() else {
        return (found, rest, false);
    };
    if z0 > 0 {
        found.push((BigRational::zero(), z0));
        rest = Poly::new(rest.coeffs()[z0..].to_vec());
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (found, rest, false);
    }
    let ints = rest.primitive_integer_coeffs();
    let constant = ints[0].abs();
    let leading = ints.last().unwrap().abs();
    let (Some(num_divs), Some(den_divs)) = (divisors(&constant, divisor_bound), divisors(&leading, divisor_bound)) else {
        return (found, rest, true);
    };

    let mut candidates = BTreeSet::new();
    for a in &num_divs {
        for b in &den_divs {
            let q = BigRational::new(a.clone(), b.clone());
            candidates.insert(q.clone());
            candidates.insert(-q);
        }
    }
    for c in candidates {
        let mut mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&c).is_zero() {
            rest = rest.exact_div(&Poly::linear_root(&c));
            mult += 1;
        }
        if mult > 0 {
            found.push((c, mult));
        }
    }
    (found, rest, false)
}

fn divisors(n: &BigInt, bound: u64) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&n| n <= bound)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}
