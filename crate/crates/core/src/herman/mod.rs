//! Turning a cycle of Siegel disks of a bad-reduction map into a cycle of
//! 1-Herman rings of a map of one higher degree.
//!
//! Given a base point `z0` in the first disk and `μ` with `|μ| = r < ρ_0`,
//! the new map is
//!
//! ```text
//! Q(z) = (z - z0) / (z - z0 - μ) * (R(z) - R(z0)) + R(z0)
//! ```
//!
//! and the rings are `D_j - R^j(B_r(z0))`.

mod frame;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{disk_image, GeometryError, Region, SiegelCycle};
use crate::padic::{FieldContext, FieldElement, HalfInt, Norm, PadicError, ProjPoint};
use crate::poly::Poly;
use crate::ratmap::{MapError, RationalMap};
use crate::report::{CheckRecord, VerificationReport, Witness};

pub use frame::{scaled_reduction_degree, ScaledFrame, ScaledReduction};
pub use verify::{rq_proximity_check, verify_herman_cycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HermanError {
    #[error("mu = 0 makes the construction return the original map")]
    ZeroMu,
    #[error("{what} = {value} is not rational; symbolic construction needs rational input")]
    NotRational { what: &'static str, value: String },
    #[error("z0 = {0} is a pole of the map")]
    PoleAtBase(String),
    #[error("constructed map has degree {got}, expected {expected}: ({num}) / ({den})")]
    DegreeMismatch {
        expected: usize,
        got: usize,
        num: String,
        den: String,
    },
    #[error("constructed map gives Q(z0) = {got}, expected {expected}")]
    BaseValueMismatch { expected: String, got: String },
    #[error("{0} is not a finite disk")]
    NotFiniteDisk(String),
    #[error("{inner} is not inside {outer}")]
    NotNested { inner: String, outer: String },
    #[error("scaling by a radius p^({0}) needs a half-integer power of p, which has no rational scale")]
    IrrationalScale(HalfInt),
    #[error("{point} in the source disk maps to {image}, outside {target}")]
    ImageMismatch { point: String, image: String, target: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// Inputs of the construction: base point `z0` and perturbation `μ`; the
/// deleted ball has radius `r = |μ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermanParams {
    pub z0: FieldElement,
    pub mu: FieldElement,
    /// `k` with `r = |μ| = p^(-k)`.
    pub radius_exp: HalfInt,
}

impl HermanParams {
    pub fn new(z0: FieldElement, mu: FieldElement) -> Result<Self, HermanError> {
        let radius_exp = mu.valuation().finite().ok_or(HermanError::ZeroMu)?;
        Ok(HermanParams { z0, mu, radius_exp })
    }

    pub fn r(&self) -> Norm {
        Norm::radius(self.z0.p(), self.radius_exp)
    }

    /// The pole `z0 + μ` introduced by the construction.
    pub fn pole(&self) -> FieldElement {
        &self.z0 + &self.mu
    }

    /// The deleted ball `B_r(z0)`.
    pub fn deleted_ball(&self) -> Region {
        Region::ball(self.z0.clone(), self.radius_exp)
    }

    /// True when `z0` only returns to its disk after `n` steps instead of
    /// being `n`-periodic.
    pub fn returning(&self, map: &RationalMap, n: usize) -> bool {
        let z0 = ProjPoint::affine(self.z0.clone());
        map.iterate(&z0, n) != z0
    }

    pub fn to_record(&self) -> ParamsRecord {
        ParamsRecord {
            z0: self.z0.to_string(),
            mu: self.mu.to_string(),
        }
    }

    pub fn from_record(record: &ParamsRecord, ctx: FieldContext) -> Result<Self, HermanError> {
        Self::new(FieldElement::parse(&record.z0, ctx)?, FieldElement::parse(&record.mu, ctx)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsRecord {
    pub z0: String,
    pub mu: String,
}

fn rational<'a>(what: &'static str, z: &'a FieldElement) -> Result<&'a num_rational::BigRational, HermanError> {
    z.as_rational().ok_or_else(|| HermanError::NotRational {
        what,
        value: z.to_string(),
    })
}

/// Checks the hypotheses of the construction on a verified cycle:
/// `radius` (`|μ| = r < ρ_0`), `base-point` (`z0 ∈ D_0` and `R^n(z0)` equal
/// to `z0` or back in `D_0`), `distances`
/// (`dist(D_0, D_j) = dist(D_1, D_{j+1})`) and `labeling` (`ρ_0` minimal).
pub fn verify_grl_hypotheses(map: &RationalMap, cycle: &SiegelCycle, params: &HermanParams) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = cycle.period();
    let rho0 = cycle.radii[0];
    let r = params.r();
    report.push(CheckRecord::single(
        "radius",
        r < rho0,
        "|mu| = r < rho_0",
        Witness::new(0, false)
            .with("mu", &params.mu)
            .with("v_mu", params.mu.valuation())
            .with("r", r.exact_string())
            .with("rho_0", rho0.exact_string()),
    ));

    let d0 = &cycle.disks[0];
    let z0 = ProjPoint::affine(params.z0.clone());
    let image = map.iterate(&z0, n);
    let inside = d0.contains(&params.z0);
    let periodic = image == z0;
    let returns = periodic || d0.contains_point(&image);
    report.push(CheckRecord::single(
        "base-point",
        inside && returns,
        format!("z0 in D_0 and R^{n}(z0) = z0 or R^{n}(z0) in D_0"),
        Witness::new(0, false)
            .with("z0", &params.z0)
            .with("disk", d0)
            .with("z0_in_disk", inside)
            .with("iterate", &image)
            .with("periodic", periodic)
            .with("returns", returns),
    ));

    let mut witnesses = Vec::new();
    for j in 0..n {
        let a = cycle.disks[0].clone();
        let b = cycle.disks[j].clone();
        let c = cycle.disks[1 % n].clone();
        let d = cycle.disks[(j + 1) % n].clone();
        let w = Witness::new(j, false);
        witnesses.push(match (dist(&a, &b), dist(&c, &d)) {
            (Ok(x), Ok(y)) => Witness {
                passed: x == y,
                ..w.with("dist_0j", x.exact_string()).with("dist_1j1", y.exact_string())
            },
            (Err(e), _) | (_, Err(e)) => w.with("error", e),
        });
    }
    let detail = if n <= 2 {
        "dist(D_0, D_j) = dist(D_1, D_{j+1}); holds by symmetry for n <= 2"
    } else {
        "dist(D_0, D_j) = dist(D_1, D_{j+1})"
    };
    report.push(CheckRecord::from_witnesses("distances", detail, witnesses));

    let witnesses = cycle
        .radii
        .iter()
        .enumerate()
        .map(|(j, rho)| Witness::new(j, rho0 <= *rho).with("rho_j", rho.exact_string()))
        .collect();
    report.push(CheckRecord::from_witnesses("labeling", "rho_0 <= rho_j", witnesses));
    report
}

fn dist(a: &Region, b: &Region) -> Result<Norm, HermanError> {
    Ok(crate::geometry::disk_dist(a, b)?)
}

/// Symbolic expansion of `Q`, reduced and normalized, with the checks
/// `deg Q = deg R + 1` and `Q(z0) = R(z0)`.
pub fn construct_q(map: &RationalMap, params: &HermanParams) -> Result<RationalMap, HermanError> {
    if params.mu.is_zero() {
        return Err(HermanError::ZeroMu);
    }
    let z0 = rational("z0", &params.z0)?;
    let mu = rational("mu", &params.mu)?;
    let w0 = map
        .eval_affine(&params.z0)
        .ok_or_else(|| HermanError::PoleAtBase(params.z0.to_string()))?;
    let w0q = rational("R(z0)", &w0)?;

    let f = map.num();
    let g = map.den();
    let shift = Poly::linear_root(z0);
    let pole_factor = Poly::linear_root(&(z0 + mu));
    let num = &(&shift * &(f - &g.scale(w0q))) + &(&pole_factor * g).scale(w0q);
    let den = &pole_factor * g;
    let q = RationalMap::from_fraction(map.ctx(), num.clone(), den.clone())?;

    if q.degree() != map.degree() + 1 {
        return Err(HermanError::DegreeMismatch {
            expected: map.degree() + 1,
            got: q.degree(),
            num: num.to_string(),
            den: den.to_string(),
        });
    }
    let at_base = q.eval(&ProjPoint::affine(params.z0.clone()));
    if at_base != ProjPoint::affine(w0.clone()) {
        return Err(HermanError::BaseValueMismatch {
            expected: w0.to_string(),
            got: at_base.to_string(),
        });
    }
    Ok(q)
}

/// The rings `A_j = D_j - R^j(B_r(z0))`, each centered in its deleted ball.
pub fn herman_rings(map: &RationalMap, cycle: &SiegelCycle, params: &HermanParams) -> Result<Vec<Region>, HermanError> {
    let mut ball = params.deleted_ball();
    let mut rings = Vec::with_capacity(cycle.period());
    for (j, disk) in cycle.disks.iter().enumerate() {
        let Region::Disk {
            radius_exp: outer,
            open: outer_open,
            ..
        } = disk
        else {
            return Err(HermanError::NotFiniteDisk(disk.to_string()));
        };
        if ball.disk_within(disk) != Some(true) {
            return Err(HermanError::NotNested {
                inner: ball.to_string(),
                outer: disk.to_string(),
            });
        }
        let Region::Disk {
            center, radius_exp: inner, ..
        } = &ball
        else {
            unreachable!("images of disks are disks")
        };
        rings.push(Region::annulus_with(center.clone(), *inner, *outer, true, *outer_open)?);
        if j + 1 < cycle.period() {
            ball = disk_image(map, &ball)?.image;
        }
    }
    Ok(rings)
}

/// Checks that ring `j` has inner radius `r ρ_j / ρ_0`.
pub fn ring_radius_check(cycle: &SiegelCycle, params: &HermanParams, rings: &[Region]) -> CheckRecord {
    let p = params.z0.p();
    let witnesses = rings
        .iter()
        .enumerate()
        .map(|(j, ring)| {
            let expected = (params.r() * cycle.radii[j]).checked_div(cycle.radii[0]).expect("nonzero radius");
            let actual = match ring {
                Region::Annulus { inner_exp, .. } => Some(Norm::radius(p, *inner_exp)),
                _ => None,
            };
            Witness::new(j, actual == Some(expected))
                .with("ring", ring)
                .with("expected_inner", expected.exact_string())
        })
        .collect();
    CheckRecord::from_witnesses("inner-radii", "inner radius of A_j is r rho_j / rho_0", witnesses)
}

/// A constructed map together with its candidate ring cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermanCycle {
    pub map: RationalMap,
    pub rings: Vec<Region>,
    /// The pole `z0 + μ` that should sit in the deleted ball of `A_0`.
    pub pole: FieldElement,
}

impl HermanCycle {
    pub fn new(map: RationalMap, rings: Vec<Region>, params: &HermanParams) -> Self {
        HermanCycle {
            map,
            rings,
            pole: params.pole(),
        }
    }

    pub fn period(&self) -> usize {
        self.rings.len()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geometry::verify_siegel_cycle;

    pub(crate) fn ctx() -> FieldContext {
        FieldContext::quadratic(5).unwrap()
    }

    pub(crate) fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(ctx(), n)
    }

    pub(crate) fn h(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    pub(crate) fn map_rphi() -> RationalMap {
        RationalMap::normalize(ctx(), Poly::from_ints(&[5, 0, -5]), Poly::from_ints(&[5, -1])).unwrap()
    }

    pub(crate) fn cycle() -> SiegelCycle {
        verify_siegel_cycle(&map_rphi(), &[Region::disk(fe(0), h(1)), Region::disk(fe(1), h(0))], 16, 0).unwrap()
    }

    pub(crate) fn params(z0: i64, mu: i64) -> HermanParams {
        HermanParams::new(fe(z0), fe(mu)).unwrap()
    }

    #[test]
    fn hypotheses() {
        let rep = verify_grl_hypotheses(&map_rphi(), &cycle(), &params(0, 25));
        assert!(rep.passed(), "{rep}");
        let rep = verify_grl_hypotheses(
            &map_rphi(),
            &cycle(),
            &HermanParams::new(fe(0), FieldElement::from_ratio(ctx(), 1, 5)).unwrap(),
        );
        assert!(!rep.check("radius").unwrap().passed);
        let p2 = params(125, 25);
        let rep = verify_grl_hypotheses(&map_rphi(), &cycle(), &p2);
        assert!(rep.passed(), "{rep}");
        assert!(p2.returning(&map_rphi(), 2));
        assert!(!params(0, 25).returning(&map_rphi(), 2));
    }

    #[test]
    fn example_one_map() {
        let q = construct_q(&map_rphi(), &params(0, 25)).unwrap();
        let expected = RationalMap::normalize(ctx(), Poly::from_ints(&[125, -30, 0, 5]), Poly::from_ints(&[125, -30, 1])).unwrap();
        assert!(q.same_function(&expected));
        let c = q.proportionality(&expected).unwrap();
        assert_eq!(crate::padic::rational_valuation(&c, 5), Some(0));
        assert_eq!(q.degree(), 3);
    }

    #[test]
    fn example_two_map() {
        let q = construct_q(&map_rphi(), &params(125, 25)).unwrap();
        assert_eq!(q.degree(), 3);
        assert_eq!(q.eval_affine(&fe(125)), Some(fe(651)));
        // poles: roots of (z - 150)(z - 5)
        assert!(q.same_function(
            &RationalMap::normalize(ctx(), Poly::from_ints(&[82000, -16280, -625, 5]), Poly::from_ints(&[750, -155, 1])).unwrap()
        ));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(HermanParams::new(fe(0), fe(0)), Err(HermanError::ZeroMu));
        let sqrt = FieldElement::parse("sqrt(5)", ctx()).unwrap();
        let p = HermanParams::new(fe(0), sqrt).unwrap();
        assert!(matches!(construct_q(&map_rphi(), &p), Err(HermanError::NotRational { .. })));
        let pole = HermanParams::new(fe(5), fe(25)).unwrap();
        assert!(matches!(construct_q(&map_rphi(), &pole), Err(HermanError::PoleAtBase(_))));
    }

    #[test]
    fn rings_and_radii() {
        let c = cycle();
        let p = params(0, 25);
        let rings = herman_rings(&map_rphi(), &c, &p).unwrap();
        assert!(rings[0].same_set(&Region::annulus(fe(0), h(2), h(1)).unwrap()));
        assert!(rings[1].same_set(&Region::annulus(fe(1), h(1), h(0)).unwrap()));
        assert!(ring_radius_check(&c, &p, &rings).passed);
        let rings2 = herman_rings(&map_rphi(), &c, &params(125, 25)).unwrap();
        assert!(rings2[0].same_set(&rings[0]) && rings2[1].same_set(&rings[1]));
    }

    #[test]
    fn params_round_trip() {
        let p = params(125, 25);
        let json = serde_json::to_string(&p.to_record()).unwrap();
        assert_eq!(json, r#"{"z0":"125","mu":"25"}"#);
        let back: ParamsRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(HermanParams::from_record(&back, ctx()).unwrap(), p);
    }
}
