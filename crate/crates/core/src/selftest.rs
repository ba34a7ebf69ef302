//! Seeded property suites run against independent oracles.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{disk_image, sample_region, Region};
use crate::padic::{chordal, pow_p, rational_valuation, FieldContext, FieldElement, HalfInt, Norm, ProjPoint, Valuation};
use crate::poly::{hensel_lift, newton_polygon, FpPoly, Poly};
use crate::ratmap::{reduction_report, RationalMap};
use crate::report::{CheckRecord, VerificationReport, Witness};

/// Case counts of the five suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestSizes {
    pub ultrametric: usize,
    pub newton: usize,
    pub hensel: usize,
    pub disk_ratio: usize,
    pub reduction: usize,
}

impl Default for SelftestSizes {
    fn default() -> Self {
        SelftestSizes {
            ultrametric: 1000,
            newton: 100,
            hensel: 100,
            disk_ratio: 50,
            reduction: 50,
        }
    }
}

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn pick_prime(rng: &mut ChaCha8Rng) -> u64 {
    PRIMES[rng.gen_range(0..PRIMES.len())]
}

/// A random unit of `Z_(p)`: a ratio of small integers prime to `p`.
fn unit(rng: &mut ChaCha8Rng, p: u64) -> BigRational {
    let draw = |rng: &mut ChaCha8Rng| loop {
        let n: i64 = rng.gen_range(1..40);
        if !(n as u64).is_multiple_of(p) {
            return n;
        }
    };
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let num = sign * draw(rng);
    BigRational::new(BigInt::from(num), BigInt::from(draw(rng)))
}

fn random_rational(rng: &mut ChaCha8Rng, p: u64, vmin: i64, vmax: i64) -> BigRational {
    let e = rng.gen_range(vmin..=vmax);
    unit(rng, p) * pow_p(p, e)
}

fn random_element(rng: &mut ChaCha8Rng, ctx: FieldContext) -> FieldElement {
    let p = ctx.p();
    let a = if rng.gen_bool(0.1) {
        BigRational::zero()
    } else {
        random_rational(rng, p, -3, 3)
    };
    let b = if rng.gen_bool(0.5) {
        BigRational::zero()
    } else {
        random_rational(rng, p, -3, 3)
    };
    if a.is_zero() && b.is_zero() {
        return FieldElement::one(ctx);
    }
    FieldElement::new(ctx, a, b).expect("ramified context")
}

fn int_poly(rng: &mut ChaCha8Rng, degree: usize, bound: i64) -> Poly {
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    if coeffs[degree] == 0 {
        coeffs[degree] = 1;
    }
    Poly::from_ints(&coeffs)
}

fn suite(name: &str, cases: usize, failures: Vec<Witness>, extra: &str) -> CheckRecord {
    let detail = if extra.is_empty() {
        format!("{cases} cases, {} failures", failures.len())
    } else {
        format!("{cases} cases, {} failures; {extra}", failures.len())
    };
    CheckRecord::from_witnesses(name, detail, failures)
}

/// Valuation laws `v(xy) = v(x) + v(y)`, `v(x + y) >= min` with equality
/// when the valuations differ, and the chordal metric agreeing with
/// `|x - y|` on the unit ball.
pub fn ultrametric_suite(cases: usize, seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        let ctx = FieldContext::quadratic(pick_prime(&mut rng)).expect("prime");
        let x = random_element(&mut rng, ctx);
        let y = random_element(&mut rng, ctx);
        let (vx, vy) = (x.valuation(), y.valuation());
        let product = (&x * &y).valuation() == vx + vy;
        let vs = (&x + &y).valuation();
        let sum = vs >= vx.min(vy) && (vx == vy || vs == vx.min(vy));
        let unit_ball = Valuation::Finite(HalfInt::ZERO);
        let metric = if vx >= unit_ball && vy >= unit_ball {
            let d = chordal(&ProjPoint::affine(x.clone()), &ProjPoint::affine(y.clone())).expect("same field");
            d == (&x - &y).norm()
        } else {
            let d = chordal(&ProjPoint::affine(x.clone()), &ProjPoint::affine(y.clone())).expect("same field");
            d <= Norm::one(ctx.p())
        };
        if !(product && sum && metric) {
            failures.push(
                Witness::new(i, false)
                    .with("x", &x)
                    .with("y", &y)
                    .with("product_law", product)
                    .with("sum_law", sum)
                    .with("chordal", metric),
            );
        }
    }
    suite("ultrametric", cases, failures, "")
}

/// Newton-polygon root valuations of `prod (z - r_i)` against the
/// valuations of the chosen `r_i`.
pub fn newton_suite(cases: usize, seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        let p = pick_prime(&mut rng);
        let ctx = FieldContext::rational(p).expect("prime");
        let count = rng.gen_range(1..=6);
        let roots: Vec<BigRational> = (0..count).map(|_| random_rational(&mut rng, p, -4, 4)).collect();
        let f = roots.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r));
        let mut expected: Vec<Rational64> = roots
            .iter()
            .map(|r| Rational64::from_integer(rational_valuation(r, p).expect("nonzero root")))
            .collect();
        expected.sort();
        let got = newton_polygon(&f, ctx).map(|np| np.root_valuations());
        if got.as_ref() != Ok(&expected) {
            failures.push(
                Witness::new(i, false)
                    .with("p", p)
                    .with("f", &f)
                    .with("expected", format!("{expected:?}"))
                    .with("got", format!("{got:?}")),
            );
        }
    }
    suite("newton-polygon", cases, failures, "")
}

/// Hensel lifts of simple residue roots satisfy `vp(f(x)) >= N`.
pub fn hensel_suite(cases: usize, precision: u32, seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < cases {
        let p = pick_prime(&mut rng);
        let ctx = FieldContext::rational(p).expect("prime");
        let degree = rng.gen_range(2..=5);
        let f = int_poly(&mut rng, degree, 30).p_primitive(ctx);
        let reduced = FpPoly::reduce(&f, p).expect("integral");
        let dreduced = reduced.derivative();
        for a in 0..p {
            if done == cases {
                break;
            }
            if reduced.is_zero() || reduced.eval(a) != 0 || dreduced.eval(a) == 0 {
                continue;
            }
            let index = done;
            done += 1;
            let ok = match hensel_lift(&f, a, precision, ctx) {
                Ok(x) => {
                    let value = f.eval(&BigRational::from_integer(x.residue.clone()));
                    rational_valuation(&value, p).is_none_or(|v| v >= precision as i64)
                }
                Err(_) => false,
            };
            if !ok {
                failures.push(Witness::new(index, false).with("p", p).with("f", &f).with("residue", a));
            }
        }
    }
    suite("hensel", cases, failures, &format!("precision {precision}"))
}

/// Uniform scaling on disks where a Taylor bound forces it: for a
/// polynomial `f` with `f(c + h) = sum a_i h^i`, on the ball `vp(h) >= k`
/// with `v(a_i) + (i - 1) k > v(a_1)` for all `i >= 2`, every sampled ratio
/// `|f(z1) - f(z2)| / |z1 - z2|` and the ratio found by [`disk_image`] must
/// equal `|a_1|`.
pub fn disk_ratio_suite(cases: usize, seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < cases {
        let p = pick_prime(&mut rng);
        let ctx = FieldContext::quadratic(p).expect("prime");
        let degree = rng.gen_range(1..=4);
        let f = int_poly(&mut rng, degree, 40);
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-60..=60)));
        let taylor = f.compose(&Poly::new(vec![c.clone(), BigRational::one()]));
        let a1 = taylor.coeff(1);
        let Some(v1) = rational_valuation(&a1, p) else {
            continue;
        };
        let mut k: i64 = 0;
        for (i, ai) in taylor.coeffs().iter().enumerate().skip(2) {
            if let Some(vi) = rational_valuation(ai, p) {
                // smallest k with vi + (i - 1) k > v1
                let step = (i - 1) as i64;
                k = k.max((v1 - vi).div_euclid(step) + 1);
            }
        }
        let index = done;
        done += 1;
        let map = RationalMap::normalize(ctx, f.clone(), Poly::one()).expect("nonconstant polynomial");
        let ball = Region::ball(FieldElement::from_rational(ctx, c.clone()), HalfInt::from_int(k));
        let expected = Norm::pow(p, HalfInt::from_int(-v1));
        let points = sample_region(&ball, ctx, 20, seed.wrapping_add(index as u64)).expect("balls are nonempty");
        let sampled_ok = points.chunks(2).all(|pair| {
            let (z1, z2) = (&pair[0], &pair[1]);
            let image = |z: &FieldElement| f.eval_field(z);
            (&image(z1) - &image(z2)).norm().checked_div((z1 - z2).norm()) == Some(expected)
        });
        let image_ok = disk_image(&map, &ball).is_ok_and(|img| img.ratio == expected);
        if !(sampled_ok && image_ok) {
            failures.push(
                Witness::new(index, false)
                    .with("p", p)
                    .with("f", &f)
                    .with("ball", &ball)
                    .with("expected_ratio", expected.exact_string())
                    .with("sampled", sampled_ok)
                    .with("disk_image", image_ok),
            );
        }
    }
    suite("disk-ratio", cases, failures, "10 sampled pairs per disk")
}

/// Good-reduction flag against the unit-resultant criterion on random maps
/// of degree at most 3.
pub fn reduction_suite(cases: usize, seed: u64) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    let mut bad = 0;
    while done < cases {
        let p = pick_prime(&mut rng);
        let ctx = FieldContext::rational(p).expect("prime");
        let coeffs = |rng: &mut ChaCha8Rng| {
            let degree = rng.gen_range(0..=3);
            let mut poly = int_poly(rng, degree, 9);
            if rng.gen_bool(0.4) {
                // push some coefficients into the maximal ideal
                let scaled: Vec<BigRational> = poly
                    .coeffs()
                    .iter()
                    .map(|c| {
                        if rng.gen_bool(0.5) {
                            c * BigRational::from_integer(BigInt::from(p))
                        } else {
                            c.clone()
                        }
                    })
                    .collect();
                poly = Poly::new(scaled);
            }
            poly
        };
        let (num, den) = (coeffs(&mut rng), coeffs(&mut rng));
        let Ok(map) = RationalMap::normalize(ctx, num, den) else {
            continue;
        };
        let index = done;
        done += 1;
        let rep = reduction_report(&map);
        if !rep.good {
            bad += 1;
        }
        if !rep.criteria_agree() {
            failures.push(
                Witness::new(index, false)
                    .with("map", &map)
                    .with("p", p)
                    .with("induced_degree", rep.induced_degree)
                    .with("resultant_valuation", format!("{:?}", rep.resultant_valuation)),
            );
        }
    }
    suite("reduction-resultant", cases, failures, &format!("{bad} with bad reduction"))
}

/// Runs all five suites; each draws from its own stream derived from `seed`.
pub fn run_selftest(sizes: SelftestSizes, precision: u32, seed: u64) -> VerificationReport {
    let ((ultra, newton), (hensel, (ratio, reduction))) = rayon::join(
        || {
            rayon::join(
                || ultrametric_suite(sizes.ultrametric, seed),
                || newton_suite(sizes.newton, seed.wrapping_add(1)),
            )
        },
        || {
            rayon::join(
                || hensel_suite(sizes.hensel, precision, seed.wrapping_add(2)),
                || {
                    rayon::join(
                        || disk_ratio_suite(sizes.disk_ratio, seed.wrapping_add(3)),
                        || reduction_suite(sizes.reduction, seed.wrapping_add(4)),
                    )
                },
            )
        },
    );
    VerificationReport {
        checks: vec![ultra, newton, hensel, ratio, reduction],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let sizes = SelftestSizes {
            ultrametric: 100,
            newton: 20,
            hensel: 20,
            disk_ratio: 10,
            reduction: 20,
        };
        let rep = run_selftest(sizes, 6, 11);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checks.len(), 5);
    }

    #[test]
    fn deterministic() {
        assert_eq!(reduction_suite(10, 3), reduction_suite(10, 3));
        assert_eq!(disk_ratio_suite(5, 3), disk_ratio_suite(5, 3));
    }
}
