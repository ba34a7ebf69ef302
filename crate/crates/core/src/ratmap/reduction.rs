use crate::padic::rational_valuation;
use crate::poly::{resultant_formal, FpPoly};

use super::RationalMap;

/// Coefficient-wise reduction of a normalized map modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub p: u64,
    pub degree: usize,
    /// `F~` and `G~` as dehomogenized polynomials of formal degree `degree`.
    pub reduced_num: FpPoly,
    pub reduced_den: FpPoly,
    /// Degree of the map induced by `[F~ : G~]` after cancelling common
    /// factors; zero when a component vanishes or the map is constant.
    pub induced_degree: usize,
    pub good: bool,
    /// `vp(Res(F, G))` for the homogeneous resultant.
    pub resultant_valuation: Option<i64>,
    /// Unit-resultant criterion; always agrees with `good`.
    pub unit_resultant: bool,
}

impl ReductionReport {
    /// `[F~, G~]` in homogeneous notation, e.g. `[-XY, 0]`.
    pub fn pair_string(&self) -> String {
        format!(
            "[{}, {}]",
            self.reduced_num.homogeneous_string(self.degree),
            self.reduced_den.homogeneous_string(self.degree)
        )
    }

    pub fn criteria_agree(&self) -> bool {
        self.good == self.unit_resultant
    }
}

pub fn reduction_report(map: &RationalMap) -> ReductionReport {
    let p = map.p();
    let d = map.degree();
    let fr = FpPoly::reduce(map.num(), p).expect("normalized coefficients are integral");
    let gr = FpPoly::reduce(map.den(), p).expect("normalized coefficients are integral");

    let induced_degree = if fr.is_zero() || gr.is_zero() {
        0
    } else {
        let common = FpPoly::gcd(&fr, &gr).degree().unwrap_or(0);
        let df = fr.degree().unwrap();
        let dg = gr.degree().unwrap();
        // common powers of Y in the homogenized forms
        let y_common = (d - df).min(d - dg);
        d - common - y_common
    };

    let res = resultant_formal(map.num(), d, map.den(), d);
    let resultant_valuation = rational_valuation(&res, p);
    ReductionReport {
        p,
        degree: d,
        reduced_num: fr,
        reduced_den: gr,
        induced_degree,
        good: induced_degree == d,
        resultant_valuation,
        unit_resultant: resultant_valuation == Some(0),
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{ctx, map_r, map_rphi};
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn bad_reduction_of_r() {
        let rep = reduction_report(&map_r());
        assert_eq!(rep.pair_string(), "[-XY, 0]");
        assert_eq!(rep.reduced_num.coeffs(), &[0, 4]);
        assert!(rep.reduced_den.is_zero());
        assert_eq!(rep.induced_degree, 0);
        assert!(!rep.good);
        assert!(rep.criteria_agree());
    }

    #[test]
    fn good_reduction_of_square() {
        let sq = RationalMap::normalize(ctx(), Poly::from_ints(&[0, 0, 1]), Poly::one()).unwrap();
        let rep = reduction_report(&sq);
        assert_eq!(rep.pair_string(), "[X^2, Y^2]");
        assert!(rep.good && rep.unit_resultant);
    }

    #[test]
    fn bad_reduction_of_rphi() {
        let rep = reduction_report(&map_rphi());
        assert!(!rep.good);
        assert!(rep.criteria_agree());
        // (5 - 5z^2)/(5 - z) reduces to [0 : -XY] up to units
        assert_eq!(rep.induced_degree, 0);
    }

    #[test]
    fn cancellation_lowers_degree() {
        // (z^2 + 5)/(z) reduces to z^2/z = z: degree drops from 2 to 1
        let m = RationalMap::normalize(ctx(), Poly::from_ints(&[5, 0, 1]), Poly::x()).unwrap();
        let rep = reduction_report(&m);
        assert_eq!(rep.induced_degree, 1);
        assert!(!rep.good && rep.criteria_agree());
    }
}
