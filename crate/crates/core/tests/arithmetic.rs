use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

use herman_core::geometry::Region;
use herman_core::padic::{rational_valuation, FieldContext, FieldElement, HalfInt, Valuation};
use herman_core::poly::{newton_polygon, resultant, Poly};

fn ctx() -> FieldContext {
    FieldContext::quadratic(5).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn element() -> impl Strategy<Value = FieldElement> {
    (-2000i64..2000, 1i64..200, -300i64..300, 1i64..50).prop_map(|(a, da, b, db)| FieldElement::new(ctx(), rat(a, da), rat(b, db)).unwrap())
}

fn nonzero() -> impl Strategy<Value = FieldElement> {
    element().prop_filter("nonzero", |z| !z.is_zero())
}

fn half(v: Valuation) -> HalfInt {
    v.finite().expect("nonzero element")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn valuation_is_multiplicative(x in nonzero(), y in nonzero()) {
        let v = half((&x * &y).valuation());
        prop_assert_eq!(v.halves(), half(x.valuation()).halves() + half(y.valuation()).halves());
    }

    #[test]
    fn valuation_is_ultrametric(x in element(), y in element()) {
        let (vx, vy, vs) = (x.valuation(), y.valuation(), (&x + &y).valuation());
        prop_assert!(vs >= vx.min(vy));
        if vx != vy {
            prop_assert_eq!(vs, vx.min(vy));
        }
    }

    #[test]
    fn inverse_negates_valuation(x in nonzero()) {
        prop_assert_eq!(half(x.inv().valuation()).halves(), -half(x.valuation()).halves());
        prop_assert_eq!(&x * &x.inv(), FieldElement::one(ctx()));
    }

    #[test]
    fn newton_slopes_match_root_valuations(roots in prop::collection::vec((-30i64..30, 1i64..30), 1..6)) {
        let roots: Vec<BigRational> = roots
            .into_iter()
            .filter(|(n, _)| *n != 0)
            .map(|(n, d)| rat(n, d))
            .collect();
        prop_assume!(!roots.is_empty());
        let f = roots.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r));
        let mut expected: Vec<Rational64> = roots
            .iter()
            .map(|r| Rational64::from_integer(rational_valuation(r, 5).unwrap()))
            .collect();
        expected.sort();
        prop_assert_eq!(newton_polygon(&f, ctx()).unwrap().root_valuations(), expected);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in prop::collection::vec(-9i64..9, 1..4), b in prop::collection::vec(-9i64..9, 1..4), shared in -6i64..6, share in any::<bool>()) {
        let (mut f, mut g) = (Poly::from_ints(&a), Poly::from_ints(&b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        if share {
            let common = Poly::linear_root(&rat(shared, 1));
            f = &f * &common;
            g = &g * &common;
        }
        let res = resultant(&f, &g).unwrap();
        let gcd_degree = Poly::gcd(&f, &g).degree().unwrap();
        prop_assert_eq!(res == BigRational::from_integer(BigInt::from(0)), gcd_degree > 0);
    }

    #[test]
    fn infinity_regions_match_their_inversions(z in nonzero(), k in -8i64..8, open in any::<bool>()) {
        let k = HalfInt::from_halves(k);
        let region = if open {
            Region::around_infinity(k)
        } else {
            match Region::around_infinity(k) {
                Region::AroundInfinity { radius_exp, .. } => Region::AroundInfinity { radius_exp, open: false },
                other => other,
            }
        };
        let inverted = region.invert(ctx()).unwrap();
        prop_assert_eq!(region.contains(&z), inverted.contains(&z.inv()));
        prop_assert_eq!(inverted.invert(ctx()).unwrap(), region);
    }

    #[test]
    fn disks_are_nested_or_disjoint(c1 in element(), c2 in element(), k1 in -6i64..8, k2 in -6i64..8, o1 in any::<bool>(), o2 in any::<bool>()) {
        let disk = |c: FieldElement, k: i64, open: bool| {
            let k = HalfInt::from_halves(k);
            if open { Region::disk(c, k) } else { Region::ball(c, k) }
        };
        let (a, b) = (disk(c1, k1, o1), disk(c2, k2, o2));
        let nested = a.disk_within(&b).unwrap() || b.disk_within(&a).unwrap();
        let disjoint = a.disjoint_from(&b).unwrap();
        prop_assert!(nested != disjoint, "{} and {}", a, b);
    }
}
